#include "shatter/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

namespace shatter {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Line {
    std::size_t number; // 1-based
    std::string_view body;
};

// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto end = text.find('\n');
        const auto raw = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        const auto body = trim(raw);
        if (body.empty() || body.front() == '#') continue;
        out.push_back(Line{number, body});
    }
    return out;
}

[[noreturn]] void line_error(const Line& line, const std::string& what) {
    throw InvalidInput("line " + std::to_string(line.number) + ": " + what);
}

int parse_int(std::string_view token, const Line& line) {
    int value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) line_error(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_header(const std::vector<Line>& lines) {
    if (lines.empty()) throw InvalidInput("line 1: missing 'n=<int>' header");
    const auto& head = lines.front();
    if (head.body.substr(0, 2) != "n=") line_error(head, "expected 'n=<int>' header");
    const int n = parse_int(trim(head.body.substr(2)), head);
    if (n < 1 || n > kMaxUniverse) line_error(head, "universe size " + std::to_string(n) + " outside [1, 63]");
    return n;
}

// Elements of one set in text form; "-" is the empty set.
SetMask parse_text_set(std::string_view body, int n, const Line& line) {
    const auto parts = tokens(body);
    if (parts.size() == 1 && parts.front() == "-") return SetMask{};
    if (parts.empty()) line_error(line, "missing set (use '-' for the empty set)");
    SetMask out;
    for (auto t : parts) {
        const int e = parse_int(t, line);
        if (e < 1 || e > n) line_error(line, "element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
        if (out.contains(e)) line_error(line, "element " + std::to_string(e) + " repeated");
        out = out.with(e);
    }
    return out;
}

std::string text_set(SetMask mask) {
    if (mask.empty()) return "-";
    std::string out;
    for (int e : mask.elements()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(e);
    }
    return out;
}

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object() || !j.contains(name)) throw InvalidInput(where + ": missing field '" + name + "'");
    return j.at(name);
}

int int_field(const json& j, const char* name, const std::string& where) {
    const auto& v = field(j, name, where);
    if (!v.is_number_integer()) throw InvalidInput(where + "." + name + ": expected an integer");
    return v.get<int>();
}

int universe_field(const json& j) {
    const int n = int_field(j, "n", "root");
    if (n < 1 || n > kMaxUniverse) throw InvalidInput("root.n: universe size " + std::to_string(n) + " outside [1, 63]");
    return n;
}

std::vector<SetMask> sets_field(const json& j, int n) {
    const auto& sets = field(j, "sets", "root");
    if (!sets.is_array()) throw InvalidInput("root.sets: expected an array");
    std::vector<SetMask> out;
    for (std::size_t i = 0; i < sets.size(); ++i) out.push_back(mask_from_json(sets[i], n, "sets[" + std::to_string(i) + "]"));
    return out;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

bool looks_like_json(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string_view::npos && text[first] == '{';
}

} // namespace

json to_json(SetMask mask) { return mask.elements(); }

SetMask mask_from_json(const json& j, int n, const std::string& where) {
    if (!j.is_array()) throw InvalidInput(where + ": expected an array of elements");
    SetMask out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& v = j[i];
        const auto at = where + "[" + std::to_string(i) + "]";
        if (!v.is_number_integer()) throw InvalidInput(at + ": expected an integer element");
        const auto e = v.get<long long>();
        if (e < 1 || e > n) throw InvalidInput(at + ": element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
        if (out.contains(static_cast<int>(e))) throw InvalidInput(at + ": element " + std::to_string(e) + " repeated");
        out = out.with(static_cast<int>(e));
    }
    return out;
}

json to_json(const SetSystem& system) {
    json sets = json::array();
    for (auto m : system) sets.push_back(to_json(m));
    return json{{"n", system.universe_size()}, {"sets", std::move(sets)}};
}

SetSystem system_from_json(const json& j) {
    const int n = universe_field(j);
    return SetSystem(n, sets_field(j, n));
}

std::string to_text(const SetSystem& system) {
    std::string out = "n=" + std::to_string(system.universe_size()) + "\n";
    for (auto m : system) out += text_set(m) + "\n";
    return out;
}

SetSystem system_from_text(std::string_view text) {
    const auto lines = content_lines(text);
    const int n = parse_header(lines);
    std::vector<SetMask> members;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto m = parse_text_set(lines[i].body, n, lines[i]);
        if (std::find(members.begin(), members.end(), m) != members.end()) line_error(lines[i], "duplicate set " + to_string(m));
        members.push_back(m);
    }
    return SetSystem(n, std::move(members));
}

SetSystem parse_set_system(std::string_view text) {
    return looks_like_json(text) ? system_from_json(parse_json(text)) : system_from_text(text);
}

json to_json(const ShatterFamily& family) {
    json sets = json::array();
    for (auto m : family.sets) sets.push_back(to_json(m));
    return json{{"kind", std::string(to_string(family.kind))}, {"n", family.n}, {"sets", std::move(sets)}};
}

ShatterFamily family_from_json(const json& j) {
    const auto& kind = field(j, "kind", "root");
    ShatterFamily out;
    if (kind == "Sh") {
        out.kind = ShatterKind::Shattered;
    } else if (kind == "st") {
        out.kind = ShatterKind::StronglyShattered;
    } else {
        throw InvalidInput("root.kind: expected \"Sh\" or \"st\"");
    }
    out.n = universe_field(j);
    out.sets = sets_field(j, out.n);
    std::sort(out.sets.begin(), out.sets.end());
    if (std::adjacent_find(out.sets.begin(), out.sets.end()) != out.sets.end()) throw InvalidInput("root.sets: duplicate set");
    return out;
}

json to_json(const BuildScript& script) {
    json steps = json::array();
    for (const auto& step : script.steps) {
        if (const auto* a = std::get_if<StepA>(&step)) {
            steps.push_back(json{{"kind", "A"}, {"alpha", a->alpha}, {"w", to_json(a->w)}});
        } else if (const auto* b = std::get_if<StepB>(&step)) {
            steps.push_back(json{{"kind", "B"}, {"alpha", b->alpha}, {"beta", b->beta}, {"w", to_json(b->w)}});
        } else {
            const auto& g = std::get<StepGeneral>(step);
            steps.push_back(json{{"kind", "G"}, {"s", to_json(g.s)}, {"f", to_json(g.f)}});
        }
    }
    json out{{"n", script.n}, {"steps", std::move(steps)}};
    if (!script.flip.empty()) out["flip"] = to_json(script.flip);
    return out;
}

BuildScript script_from_json(const json& j) {
    BuildScript script;
    script.n = universe_field(j);
    const auto& steps = field(j, "steps", "root");
    if (!steps.is_array()) throw InvalidInput("root.steps: expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto where = "steps[" + std::to_string(i) + "]";
        const auto& s = steps[i];
        const auto& kind = field(s, "kind", where);
        if (kind == "A") {
            script.steps.emplace_back(StepA{int_field(s, "alpha", where), mask_from_json(field(s, "w", where), script.n, where + ".w")});
        } else if (kind == "B") {
            script.steps.emplace_back(StepB{int_field(s, "alpha", where), int_field(s, "beta", where),
                                            mask_from_json(field(s, "w", where), script.n, where + ".w")});
        } else if (kind == "G") {
            script.steps.emplace_back(StepGeneral{mask_from_json(field(s, "s", where), script.n, where + ".s"),
                                                  mask_from_json(field(s, "f", where), script.n, where + ".f")});
        } else {
            throw InvalidInput(where + ".kind: expected \"A\", \"B\" or \"G\"");
        }
    }
    if (j.contains("flip")) script.flip = mask_from_json(j.at("flip"), script.n, "flip");
    return script;
}

std::string to_text(const BuildScript& script) {
    std::ostringstream out;
    out << "n=" << script.n << "\n";
    if (!script.flip.empty()) out << "flip " << text_set(script.flip) << "\n";
    for (const auto& step : script.steps) {
        if (const auto* a = std::get_if<StepA>(&step)) {
            out << "A " << a->alpha << " | " << text_set(a->w) << "\n";
        } else if (const auto* b = std::get_if<StepB>(&step)) {
            out << "B " << b->alpha << ' ' << b->beta << " | " << text_set(b->w) << "\n";
        } else {
            const auto& g = std::get<StepGeneral>(step);
            out << "G " << text_set(g.s) << " | " << text_set(g.f) << "\n";
        }
    }
    return out.str();
}

BuildScript script_from_text(std::string_view text) {
    const auto lines = content_lines(text);
    BuildScript script;
    script.n = parse_header(lines);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto body = line.body;
        if (body.substr(0, 5) == "flip ") {
            if (i != 1) line_error(line, "'flip' must directly follow the header");
            script.flip = parse_text_set(body.substr(5), script.n, line);
            continue;
        }
        const auto bar = body.find('|');
        if (bar == std::string_view::npos) line_error(line, "expected '<kind> <labels> | <set>'");
        const auto head = tokens(body.substr(0, bar));
        const auto tail = trim(body.substr(bar + 1));
        if (head.empty()) line_error(line, "missing step kind");
        if (head[0] == "A") {
            if (head.size() != 2) line_error(line, "step A takes one label");
            script.steps.emplace_back(StepA{parse_int(head[1], line), parse_text_set(tail, script.n, line)});
        } else if (head[0] == "B") {
            if (head.size() != 3) line_error(line, "step B takes two labels");
            script.steps.emplace_back(StepB{parse_int(head[1], line), parse_int(head[2], line), parse_text_set(tail, script.n, line)});
        } else if (head[0] == "G") {
            const auto s_body = trim(body.substr(1, bar - 1));
            script.steps.emplace_back(StepGeneral{parse_text_set(s_body, script.n, line), parse_text_set(tail, script.n, line)});
        } else {
            line_error(line, "unknown step kind '" + std::string(head[0]) + "'");
        }
    }
    return script;
}

BuildScript parse_build_script(std::string_view text) {
    return looks_like_json(text) ? script_from_json(parse_json(text)) : script_from_text(text);
}

json to_json(const InclusionGraph& graph) {
    json vertices = json::array();
    for (auto v : graph.vertices()) vertices.push_back(to_json(v));
    json edges = json::array();
    for (const auto& e : graph.edges()) edges.push_back(json{{"from", to_json(e.from)}, {"to", to_json(e.to)}, {"label", e.label}});
    return json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

} // namespace shatter
