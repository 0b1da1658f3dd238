#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shatter/set_system.hpp"
#include "shatter/shattering.hpp"

namespace shatter {

/// Adds W + {alpha} for an element alpha outside the current support.
struct StepA {
    int alpha = 0;
    SetMask w;
    friend bool operator==(const StepA&, const StepA&) = default;
};

/// Completes the square on {alpha, beta} at corner W: given W, W ^ {beta}
/// and W ^ {alpha}, adds W ^ {alpha, beta}. Requires {alpha, beta} not yet
/// strongly shattered.
struct StepB {
    int alpha = 0;
    int beta = 0;
    SetMask w;
    friend bool operator==(const StepB&, const StepB&) = default;
};

/// Experimental generalized step for higher VC bounds: adds f so that s
/// becomes strongly shattered.
struct StepGeneral {
    SetMask s;
    SetMask f;
    friend bool operator==(const StepGeneral&, const StepGeneral&) = default;
};

using BuildStep = std::variant<StepA, StepB, StepGeneral>;

/// The set a step adds (V).
SetMask added_set(const BuildStep& step);
/// The set a step makes strongly shattered: {alpha}, {alpha, beta} or s.
SetMask step_shape(const BuildStep& step);
/// Short human-readable form, e.g. "A(1, {})" or "B(2, 3, {2})".
std::string describe(const BuildStep& step);

/// A replayable build. Replay starts from {{}} (the implicit initial step),
/// applies steps in order and finally applies the bit flips in flip.
struct BuildScript {
    int n = 1;
    std::vector<BuildStep> steps;
    SetMask flip;

    friend bool operator==(const BuildScript&, const BuildScript&) = default;
};

/// A step whose precondition fails. what() names the failed clause.
class StepRejected : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// Replay failure at a 0-based step index.
class ReplayError : public InvalidInput {
  public:
    ReplayError(std::size_t index, const std::string& diagnostic);
    [[nodiscard]] std::size_t step_index() const { return index_; }
    [[nodiscard]] const std::string& diagnostic() const { return diagnostic_; }

  private:
    std::size_t index_;
    std::string diagnostic_;
};

struct ApplyOptions {
    /// Recompute st, extremality and VC dimension from scratch after the
    /// step and compare them with the incremental bookkeeping.
    bool verify_from_scratch = false;
};

/// The state of a build: the current system plus the sets made strongly
/// shattered so far. For A/B builds, st(current) is exactly
/// {{}} + {alpha : A used} + {{alpha, beta} : B used}, which is what
/// strongly_shattered() returns without recomputation.
class BuildState {
  public:
    static BuildState initial(int n);

    [[nodiscard]] const SetSystem& current() const { return current_; }
    [[nodiscard]] int universe_size() const { return current_.universe_size(); }
    [[nodiscard]] SetMask support() const { return support_; }
    /// Labels alpha used by Step A.
    [[nodiscard]] SetMask used_singletons() const;
    /// Label pairs used by Step B, canonical order.
    [[nodiscard]] std::vector<SetMask> used_pairs() const;
    /// {} plus every step shape, canonical order.
    [[nodiscard]] ShatterFamily strongly_shattered() const;
    [[nodiscard]] bool is_strongly_shattered(SetMask s) const;

  private:
    friend BuildState apply_step(const BuildState&, const BuildStep&, const ApplyOptions&);
    friend BuildState apply_step_general(const BuildState&, const StepGeneral&, int, const ApplyOptions&);

    explicit BuildState(SetSystem current) : current_{std::move(current)} {}
    BuildState extended(SetMask added, SetMask shape) const;

    SetSystem current_;
    SetMask support_;
    std::vector<SetMask> shapes_; // sorted, excludes {}
};

/// Applies a Step A or B (StepGeneral is forwarded to apply_step_general
/// with no dimension bound). Throws StepRejected when a precondition fails.
BuildState apply_step(const BuildState& state, const BuildStep& step, const ApplyOptions& options = {});

/// Experimental generalized step: |s| <= t, f not a member, s newly strongly
/// shattered by current + {f}, s not used before. The result is checked to be
/// extremal; completeness for t >= 3 is not claimed.
BuildState apply_step_general(const BuildState& state, const StepGeneral& step, int t,
                              const ApplyOptions& options = {});

/// Replays a script from {{}}. Throws ReplayError at the first invalid step.
SetSystem replay(const BuildScript& script, const ApplyOptions& options = {});

/// Every valid Step A / Step B whose new set lies in target (or anywhere when
/// target is absent). Order: all Step A before Step B; within a kind by
/// label(s) ascending, then by W.
std::vector<BuildStep> enumerate_valid_steps(const BuildState& state, const SetSystem* target = nullptr);

/// Every valid StepGeneral with |s| <= t, ordered by (f, s).
std::vector<StepGeneral> enumerate_general_steps(const BuildState& state, int t);

struct ReconstructFailure {
    enum class Reason { NotExtremal, VcDimensionTooLarge };
    Reason reason = Reason::NotExtremal;
    ExtremalityReport report;
    int vc_dimension = 0;
};

std::string describe(const ReconstructFailure& failure);

using Reconstruction = std::variant<BuildScript, ReconstructFailure>;

/// Builds target greedily, always taking the first valid step into target.
/// target must contain {} (flip first otherwise). Non-extremal or VC > 2
/// targets yield a ReconstructFailure; getting stuck on a valid target
/// throws InternalError.
Reconstruction reconstruct_script(const SetSystem& target);

/// A member whose removal keeps the system extremal with VC dimension <= 2.
/// The anchor (default: first member) is flipped to {} before rebuilding;
/// the answer is the flipped-back last set of the rebuild. Throws
/// InvalidInput unless the system is extremal, VC <= 2 and has >= 2 members.
SetMask removable_set(const SetSystem& system, std::optional<SetMask> anchor = std::nullopt);

/// Repeated removable_set down to a single member; |F| - 1 removals.
std::vector<SetMask> peel(const SetSystem& system);

struct RandomBuild {
    BuildScript script;
    SetSystem system;
};

/// Seeded build choosing uniformly among enumerate_valid_steps each turn;
/// stops early once no step is valid.
RandomBuild random_build(int n, std::size_t steps, std::uint64_t seed);

} // namespace shatter
