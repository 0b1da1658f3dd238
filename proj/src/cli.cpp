#include "shatter/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shatter/analysis.hpp"
#include "shatter/builder.hpp"
#include "shatter/inclusion_graph.hpp"
#include "shatter/io.hpp"
#include "shatter/oracle.hpp"

namespace shatter::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string format = "text";
    std::string out_path;
    std::string input;
    std::string anchor;
    bool json_flag = false;
    int n = 0;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    int random_n = 10;
    int vc_cap = 2;
    bool require_empty = false;
    std::string theorem;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Accepts "1,2", "1 2", "{1,2}", "{}" or "-".
SetMask parse_anchor(const std::string& text, int n) {
    std::string cleaned;
    for (char c : text) cleaned += (c == ',' || c == '{' || c == '}') ? ' ' : c;
    std::istringstream in(cleaned);
    std::string token;
    SetMask out;
    while (in >> token) {
        if (token == "-") continue;
        int e = 0;
        try {
            std::size_t used = 0;
            e = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw InvalidInput("--anchor: '" + token + "' is not an element");
        }
        if (e < 1 || e > n) throw InvalidInput("--anchor: element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
        out = out.with(e);
    }
    return out;
}

class Runner {
  public:
    Runner(const Options& opts, std::ostream& out, std::ostream& err) : o_{opts}, out_{out}, err_{err} {}

    [[nodiscard]] bool json_mode() const { return o_.format == "json" || o_.json_flag; }

    void emit(const std::string& text) {
        if (o_.out_path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream file(o_.out_path, std::ios::binary);
        if (!file) throw InvalidInput("cannot write '" + o_.out_path + "'");
        file << text;
    }
    void emit(const json& j) { emit(j.dump(2) + "\n"); }

    int analyze() {
        const auto report = shatter::analyze(parse_set_system(read_file(o_.input)));
        if (json_mode()) {
            emit(to_json(report));
        } else {
            emit(to_text(report));
        }
        return report.extremal ? kSuccess : kClaimFailure;
    }

    int reconstruct() {
        const auto system = parse_set_system(read_file(o_.input));
        if (system.empty()) throw InvalidInput("cannot reconstruct the empty system");
        SetMask flips;
        if (!o_.anchor.empty()) {
            flips = flip_to_empty(system, parse_anchor(o_.anchor, system.universe_size())).flips;
        } else if (!system.contains(SetMask{})) {
            flips = system[0];
        }
        const auto rebuilt = reconstruct_script(apply_flips(system, flips));
        if (const auto* failure = std::get_if<ReconstructFailure>(&rebuilt)) {
            if (json_mode()) {
                emit(json{{"ok", false},
                          {"reason", failure->reason == ReconstructFailure::Reason::NotExtremal ? "not_extremal"
                                                                                                 : "vc_dimension_too_large"},
                          {"family_size", failure->report.family_size},
                          {"shattered_count", failure->report.shattered_count},
                          {"strongly_shattered_count", failure->report.strongly_shattered_count},
                          {"vc_dimension", failure->vc_dimension}});
            } else {
                emit("not buildable: " + describe(*failure) + "\n");
            }
            return kClaimFailure;
        }
        auto script = std::get<BuildScript>(rebuilt);
        script.flip = flips;
        if (json_mode()) {
            emit(to_json(script));
        } else {
            emit(to_text(script));
        }
        return kSuccess;
    }

    int replay() {
        const auto script = parse_build_script(read_file(o_.input));
        try {
            const auto system = shatter::replay(script);
            if (json_mode()) {
                emit(to_json(system));
            } else {
                emit(to_text(system));
            }
            return kSuccess;
        } catch (const ReplayError& e) {
            if (json_mode()) {
                emit(json{{"ok", false}, {"step_index", e.step_index()}, {"diagnostic", e.diagnostic()}});
            } else {
                err_ << "invalid script: " << e.what() << "\n";
            }
            return kClaimFailure;
        }
    }

    int peel() {
        const auto system = parse_set_system(read_file(o_.input));
        const auto order = shatter::peel(system);
        auto rest = system;
        json removals = json::array();
        std::string text;
        bool all_ok = true;
        for (auto removed : order) {
            rest = rest.without(removed);
            const bool ok = is_extremal(rest) && vc_dimension(rest) <= 2;
            all_ok = all_ok && ok;
            removals.push_back(json{{"set", to_json(removed)}, {"still_extremal", ok}});
            text += "remove " + to_string(removed) + "  still extremal: " + (ok ? "yes" : "no") + "\n";
        }
        if (json_mode()) {
            emit(json{{"removals", std::move(removals)}, {"remaining", to_json(rest)}});
        } else {
            emit(text + "remaining " + to_string(rest[0]) + "\n");
        }
        return all_ok ? kSuccess : kClaimFailure;
    }

    int random() {
        const auto built = random_build(o_.n, o_.steps, o_.seed);
        if (json_mode()) {
            emit(json{{"script", to_json(built.script)}, {"system", to_json(built.system)}});
        } else {
            emit(to_text(built.system) + "\n" + to_text(built.script));
        }
        return kSuccess;
    }

    int enumerate() {
        const auto systems = enumerate_extremal(o_.n, o_.require_empty, o_.vc_cap);
        if (json_mode()) {
            json all = json::array();
            for (const auto& s : systems) all.push_back(to_json(s));
            emit(all);
        } else {
            std::string text = "count=" + std::to_string(systems.size()) + "\n";
            for (const auto& s : systems) {
                std::string line;
                for (auto m : s) line += (line.empty() ? "" : " ") + to_string(m);
                text += line + "\n";
            }
            emit(text);
        }
        return kSuccess;
    }

    int verify(bool seed_given) {
        std::vector<VerificationReport> reports;
        if (o_.theorem == "1") {
            reports.push_back(verify_theorem1(o_.n));
        } else if (o_.theorem == "2") {
            if (o_.samples > 0 && !seed_given) throw InvalidInput("--seed is required for random samples");
            reports.push_back(verify_theorem2(o_.n, o_.samples, o_.seed, o_.random_n));
        } else {
            if (o_.n > 4 && !seed_given) throw InvalidInput("--seed is required for sampled verification");
            reports = verify_propositions(o_.n, o_.samples == 0 ? 2000 : o_.samples, o_.seed);
        }
        bool passed = true;
        json all = json::array();
        for (const auto& r : reports) {
            passed = passed && r.passed;
            all.push_back(to_json(r));
        }
        if (json_mode()) {
            emit(all);
        } else {
            emit(summary_table(reports));
        }
        return passed ? kSuccess : kClaimFailure;
    }

    int export_dot() {
        const InclusionGraph graph(parse_set_system(read_file(o_.input)));
        if (json_mode()) {
            emit(to_json(graph));
        } else {
            emit(shatter::export_dot(graph));
        }
        return kSuccess;
    }

  private:
    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Shattering invariants and Step A/B builds for set systems"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", o.out_path, "Write output to a file instead of stdout");

    auto* analyze = app.add_subcommand("analyze", "Report |F|, Sh, st, VC dimension, extremality and isometry");
    analyze->add_option("input", o.input, "Set system file (JSON or text)")->required();
    analyze->add_flag("--json", o.json_flag, "Same as --format json");

    auto* reconstruct = app.add_subcommand("reconstruct", "Find a Step A/B script that builds the system");
    reconstruct->add_option("input", o.input)->required();
    reconstruct->add_option("--anchor", o.anchor, "Member flipped to the empty set first, e.g. 1,2");

    auto* replay = app.add_subcommand("replay", "Replay a build script");
    replay->add_option("input", o.input)->required();

    auto* peel = app.add_subcommand("peel", "Remove members one by one keeping extremality");
    peel->add_option("input", o.input)->required();

    auto* random = app.add_subcommand("random", "Seeded random Step A/B build");
    random->add_option("--n", o.n)->required()->check(CLI::Range(1, kMaxUniverse));
    random->add_option("--steps", o.steps)->required();
    random->add_option("--seed", o.seed)->required();

    auto* enumerate = app.add_subcommand("enumerate", "List every extremal system over [n], n <= 4");
    enumerate->add_option("--n", o.n)->required()->check(CLI::Range(1, 4));
    enumerate->add_option("--vc-cap", o.vc_cap, "Largest allowed VC dimension")->capture_default_str();
    enumerate->add_flag("--require-empty", o.require_empty, "Only systems containing the empty set");

    auto* verify = app.add_subcommand("verify", "Run an exhaustive or sampled verification");
    verify->add_option("--theorem", o.theorem)->required()->check(CLI::IsMember({"1", "2", "props"}));
    verify->add_option("--n", o.n)->required()->check(CLI::Range(1, 12));
    auto* seed_opt = verify->add_option("--seed", o.seed);
    verify->add_option("--samples", o.samples, "Random samples (theorem 2 builds / sampled systems)");
    verify->add_option("--random-n", o.random_n, "Universe of the random builds for theorem 2")->capture_default_str();

    auto* dot = app.add_subcommand("export-dot", "Inclusion graph as DOT (or JSON with --format json)");
    dot->add_option("input", o.input)->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInputError;
    }

    Runner runner(o, out, err);
    try {
        if (*analyze) return runner.analyze();
        if (*reconstruct) return runner.reconstruct();
        if (*replay) return runner.replay();
        if (*peel) return runner.peel();
        if (*random) return runner.random();
        if (*enumerate) return runner.enumerate();
        if (*verify) {
            if (o.theorem == "2" && o.n > 4) throw InvalidInput("theorem 2 sweeps need --n <= 4");
            if (o.theorem == "1" && o.n > 4) throw InvalidInput("theorem 1 sweeps need --n <= 4");
            return runner.verify(seed_opt->count() > 0);
        }
        if (*dot) return runner.export_dot();
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kClaimFailure;
    }
    return kInputError;
}

} // namespace shatter::cli
