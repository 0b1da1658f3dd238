#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shatter/set_system.hpp"

namespace shatter {

/// Every invariant the toolkit computes for one system.
struct AnalysisReport {
    int n = 1;
    std::size_t family_size = 0;
    std::size_t shattered_count = 0;
    std::size_t strongly_shattered_count = 0;
    int vc_dimension = 0;
    bool extremal = false;
    bool isometric = false;
    std::optional<std::pair<SetMask, SetMask>> isometry_violation;
    std::vector<SetMask> maximal_shattered;
    /// Length of the reconstructed Step A/B script when the system contains
    /// {} and is extremal with VC dimension <= 2.
    std::optional<std::size_t> build_script_length;
};

/// Throws InvalidInput for empty or oversized systems.
AnalysisReport analyze(const SetSystem& system);

nlohmann::json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

} // namespace shatter
