#include "shatter/analysis.hpp"

#include <sstream>
#include <variant>

#include "shatter/builder.hpp"
#include "shatter/inclusion_graph.hpp"
#include "shatter/io.hpp"
#include "shatter/shattering.hpp"

namespace shatter {

AnalysisReport analyze(const SetSystem& system) {
    AnalysisReport out;
    out.n = system.universe_size();
    const auto extremal = extremality(system);
    const auto sh = shattered_sets(system);
    out.family_size = extremal.family_size;
    out.shattered_count = extremal.shattered_count;
    out.strongly_shattered_count = extremal.strongly_shattered_count;
    out.extremal = extremal.extremal;
    out.vc_dimension = vc_dimension(sh);
    out.maximal_shattered = maximal_sets(sh);
    const auto iso = is_isometrically_embedded(InclusionGraph(system));
    out.isometric = iso.isometric;
    out.isometry_violation = iso.violation;
    if (out.extremal && out.vc_dimension <= 2 && system.contains(SetMask{})) {
        const auto rebuilt = reconstruct_script(system);
        if (const auto* script = std::get_if<BuildScript>(&rebuilt)) out.build_script_length = script->steps.size();
    }
    return out;
}

nlohmann::json to_json(const AnalysisReport& r) {
    nlohmann::json maximal = nlohmann::json::array();
    for (auto s : r.maximal_shattered) maximal.push_back(to_json(s));
    nlohmann::json out{{"n", r.n},
                       {"family_size", r.family_size},
                       {"shattered_count", r.shattered_count},
                       {"strongly_shattered_count", r.strongly_shattered_count},
                       {"vc_dimension", r.vc_dimension},
                       {"extremal", r.extremal},
                       {"isometric", r.isometric},
                       {"maximal_shattered", std::move(maximal)},
                       {"in_E", r.build_script_length.has_value()}};
    if (r.isometry_violation) {
        out["isometry_violation"] = {to_json(r.isometry_violation->first), to_json(r.isometry_violation->second)};
    }
    if (r.build_script_length) out["build_script_length"] = *r.build_script_length;
    return out;
}

std::string to_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "n                 " << r.n << "\n"
        << "|F|               " << r.family_size << "\n"
        << "|Sh|              " << r.shattered_count << "\n"
        << "|st|              " << r.strongly_shattered_count << "\n"
        << "VC dimension      " << r.vc_dimension << "\n"
        << "extremal          " << (r.extremal ? "yes" : "no") << "\n"
        << "isometric         " << (r.isometric ? "yes" : "no");
    if (r.isometry_violation) {
        out << " (first violation: " << to_string(r.isometry_violation->first) << ", "
            << to_string(r.isometry_violation->second) << ")";
    }
    out << "\nmaximal shattered";
    for (auto s : r.maximal_shattered) out << ' ' << to_string(s);
    out << "\nin E              ";
    if (r.build_script_length) {
        out << "yes (" << *r.build_script_length << " steps)";
    } else {
        out << "no";
    }
    out << "\n";
    return out.str();
}

} // namespace shatter
