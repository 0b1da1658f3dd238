#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "shatter/set_system.hpp"
#include "shatter/shattering.hpp"

namespace shatter {

// Brute-force references. These deliberately share no code with the fast
// paths in shattering.cpp so that agreement between the two means something.

/// Sh(F) by scanning every S in 2^[n] and collecting traces. n <= 20.
ShatterFamily sh_by_definition(const SetSystem& system);

/// st(F) by checking 2^S + I for every S and every I outside S. n <= 16.
ShatterFamily st_by_definition(const SetSystem& system);

/// Every nonempty system over [n] (n <= 4) that is extremal with VC
/// dimension <= vc_cap, optionally required to contain {}. Classification
/// uses sh_by_definition only. Ordered by the bitmask over 2^[n] that
/// encodes each system.
std::vector<SetSystem> enumerate_extremal(int n, bool require_empty, int vc_cap);

/// Independent Bernoulli(p) inclusion of each subset of [n], conditioned on
/// a nonempty result. n <= 20.
SetSystem sample_system(int n, double p, std::mt19937_64& rng);

/// Inclusion density used for the i-th sampled system: 0.1, 0.3, 0.5 cycling.
double sample_density(std::uint64_t i);

struct VerificationReport {
    std::string claim;
    nlohmann::json parameters = nlohmann::json::object();
    bool passed = true;
    std::size_t checked = 0;
    /// Present iff !passed.
    std::optional<SetSystem> counterexample;
    std::string details;
    double seconds = 0.0;
};

nlohmann::json to_json(const VerificationReport& report);
/// One line per report: claim, PASS/FAIL, count, time, first counterexample.
std::string summary_table(std::span<const VerificationReport> reports);

/// Negative-control hook. When set, a verifier passes each system through it
/// after the hypothesis of a claim has been established and before the
/// conclusion is checked, so that a verifier which never looks at its data
/// would be caught.
using Mutator = std::function<SetSystem(const SetSystem&)>;

/// Extremal, VC <= 2 and containing {} coincides with buildable by Steps A/B,
/// checked as an exact equality of the two family collections over [n], n <= 4.
VerificationReport verify_theorem1(int n, const Mutator& mutate = {});

/// removable_set and peel on every extremal VC <= 2 family over [n] (n <= 4,
/// with or without {}) and on random_samples seeded builds over [random_n].
VerificationReport verify_theorem2(int n, std::size_t random_samples, std::uint64_t seed, int random_n = 10,
                                   const Mutator& mutate = {});

/// Sauer, reverse Sauer, st within Sh, the extremality equivalence, bit-flip
/// invariance, subdivision and interval heredity, isometry, witness
/// uniqueness, the VC-1 tree characterization and cube copies, one report
/// each. Exhaustive for n <= 4; otherwise `samples` seeded random systems plus
/// samples / 10 seeded random builds (n <= 12).
std::vector<VerificationReport> verify_propositions(int n, std::size_t samples, std::uint64_t seed,
                                                    const Mutator& mutate = {});

} // namespace shatter
