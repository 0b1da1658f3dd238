#include "shatter/builder.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace shatter {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void reject(const std::string& clause) { throw StepRejected(clause); }

void check_label(int label, int n) {
    if (label < 1 || label > n) reject("label " + std::to_string(label) + " outside universe [1, " + std::to_string(n) + "]");
}

int neighbor_count(const SetSystem& system, SetMask v) {
    int count = 0;
    for (int e = 1; e <= system.universe_size(); ++e) {
        if (system.contains(v.toggled(e))) ++count;
    }
    return count;
}

// Calls visit(step) for every valid A/B step into target, in canonical
// order, until visit returns true.
template <typename Visit>
void visit_valid_steps(const BuildState& state, const SetSystem* target, Visit&& visit) {
    const auto& current = state.current();
    const int n = state.universe_size();
    const auto supp = state.support();
    auto wanted = [&](SetMask v) { return target == nullptr || target->contains(v); };

    for (int alpha = 1; alpha <= n; ++alpha) {
        if (supp.contains(alpha)) continue;
        for (auto w : current) {
            if (wanted(w.with(alpha)) && visit(BuildStep{StepA{alpha, w}})) return;
        }
    }
    for (int alpha = 1; alpha <= n; ++alpha) {
        if (!supp.contains(alpha)) continue;
        for (int beta = alpha + 1; beta <= n; ++beta) {
            if (!supp.contains(beta)) continue;
            if (state.is_strongly_shattered(SetMask::singleton(alpha).with(beta))) continue;
            for (auto w : current) {
                const auto v = w.toggled(alpha).toggled(beta);
                if (!current.contains(w.toggled(beta)) || !current.contains(w.toggled(alpha))) continue;
                if (wanted(v) && visit(BuildStep{StepB{alpha, beta, w}})) return;
            }
        }
    }
}

std::size_t pick_index(std::mt19937_64& rng, std::size_t bound) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const auto limit = kMax - kMax % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

void verify_state(const BuildState& state, int vc_bound) {
    const auto st = strongly_shattered_sets(state.current());
    if (!st.same_sets(state.strongly_shattered())) {
        throw InternalError("strongly shattered sets drifted from the step bookkeeping");
    }
    const auto report = extremality(state.current());
    if (!report.extremal) throw InternalError("built system is not extremal");
    if (vc_dimension(state.current()) > vc_bound) throw InternalError("built system exceeds the VC bound");
}

} // namespace

ReplayError::ReplayError(std::size_t index, const std::string& diagnostic)
    : InvalidInput("step " + std::to_string(index) + ": " + diagnostic), index_{index}, diagnostic_{diagnostic} {}

SetMask added_set(const BuildStep& step) {
    return std::visit(Overloaded{
                          [](const StepA& a) { return a.w.with(a.alpha); },
                          [](const StepB& b) { return b.w.toggled(b.alpha).toggled(b.beta); },
                          [](const StepGeneral& g) { return g.f; },
                      },
                      step);
}

SetMask step_shape(const BuildStep& step) {
    return std::visit(Overloaded{
                          [](const StepA& a) { return SetMask::singleton(a.alpha); },
                          [](const StepB& b) { return SetMask::singleton(b.alpha).with(b.beta); },
                          [](const StepGeneral& g) { return g.s; },
                      },
                      step);
}

std::string describe(const BuildStep& step) {
    return std::visit(Overloaded{
                          [](const StepA& a) { return "A(" + std::to_string(a.alpha) + ", " + to_string(a.w) + ")"; },
                          [](const StepB& b) {
                              return "B(" + std::to_string(b.alpha) + ", " + std::to_string(b.beta) + ", " +
                                     to_string(b.w) + ")";
                          },
                          [](const StepGeneral& g) { return "Step(" + to_string(g.s) + ", " + to_string(g.f) + ")"; },
                      },
                      step);
}

BuildState BuildState::initial(int n) { return BuildState(SetSystem(n, {SetMask{}})); }

SetMask BuildState::used_singletons() const {
    SetMask out;
    for (auto s : shapes_) {
        if (s.size() == 1) out |= s;
    }
    return out;
}

std::vector<SetMask> BuildState::used_pairs() const {
    std::vector<SetMask> out;
    std::copy_if(shapes_.begin(), shapes_.end(), std::back_inserter(out), [](SetMask s) { return s.size() == 2; });
    return out;
}

ShatterFamily BuildState::strongly_shattered() const {
    ShatterFamily out{universe_size(), ShatterKind::StronglyShattered, {SetMask{}}};
    out.sets.insert(out.sets.end(), shapes_.begin(), shapes_.end());
    return out;
}

bool BuildState::is_strongly_shattered(SetMask s) const {
    return s.empty() || std::binary_search(shapes_.begin(), shapes_.end(), s);
}

BuildState BuildState::extended(SetMask added, SetMask shape) const {
    BuildState next(current_.with(added));
    next.support_ = support_ | added;
    next.shapes_ = shapes_;
    next.shapes_.insert(std::lower_bound(next.shapes_.begin(), next.shapes_.end(), shape), shape);
    return next;
}

BuildState apply_step(const BuildState& state, const BuildStep& step, const ApplyOptions& options) {
    const int n = state.universe_size();
    const auto& current = state.current();
    if (const auto* general = std::get_if<StepGeneral>(&step)) return apply_step_general(state, *general, n, options);

    int expected_neighbors = 0;
    if (const auto* a = std::get_if<StepA>(&step)) {
        check_label(a->alpha, n);
        if (state.support().contains(a->alpha)) reject("label " + std::to_string(a->alpha) + " already in support");
        if (!current.contains(a->w)) reject("W = " + to_string(a->w) + " is not a member");
        expected_neighbors = 1;
    } else {
        const auto& b = std::get<StepB>(step);
        check_label(b.alpha, n);
        check_label(b.beta, n);
        if (b.alpha == b.beta) reject("labels alpha and beta must differ");
        const auto pair = SetMask::singleton(b.alpha).with(b.beta);
        if (state.is_strongly_shattered(pair)) reject(to_string(pair) + " already strongly shattered");
        if (!current.contains(b.w)) reject("W = " + to_string(b.w) + " is not a member");
        if (!current.contains(b.w.toggled(b.beta))) reject("P = " + to_string(b.w.toggled(b.beta)) + " is not a member");
        if (!current.contains(b.w.toggled(b.alpha))) reject("Q = " + to_string(b.w.toggled(b.alpha)) + " is not a member");
        expected_neighbors = 2;
    }

    const auto v = added_set(step);
    if (current.contains(v)) throw InternalError("new set " + to_string(v) + " is already a member");
    auto next = state.extended(v, step_shape(step));
    if (neighbor_count(next.current(), v) != expected_neighbors) {
        throw InternalError("new set " + to_string(v) + " has an unexpected number of neighbours");
    }
    if (options.verify_from_scratch) verify_state(next, 2);
    return next;
}

BuildState apply_step_general(const BuildState& state, const StepGeneral& step, int t, const ApplyOptions& options) {
    const int n = state.universe_size();
    const auto& current = state.current();
    if (step.s.size() > t) reject("|S| = " + std::to_string(step.s.size()) + " exceeds the bound t = " + std::to_string(t));
    if (!step.s.fits_universe(n) || !step.f.fits_universe(n)) reject("S or F exceeds the universe");
    if (current.contains(step.f)) reject("F = " + to_string(step.f) + " is already a member");
    if (state.is_strongly_shattered(step.s)) reject(to_string(step.s) + " already strongly shattered");
    if (strongly_shattered_sets(current).contains(step.s)) reject(to_string(step.s) + " already strongly shattered");
    const auto grown = current.with(step.f);
    if (strong_witnesses(grown, step.s).empty()) {
        reject(to_string(step.s) + " is not strongly shattered after adding " + to_string(step.f));
    }

    auto next = state.extended(step.f, step.s);
    if (!is_extremal(next.current())) throw InternalError("generalized step produced a non-extremal system");
    if (options.verify_from_scratch) {
        verify_state(next, std::max(t, 0));
        if (neighbor_count(next.current(), step.f) != step.s.size()) {
            throw InternalError("new set " + to_string(step.f) + " has neighbours outside its cube");
        }
    }
    return next;
}

SetSystem replay(const BuildScript& script, const ApplyOptions& options) {
    auto state = BuildState::initial(script.n);
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        try {
            state = apply_step(state, script.steps[i], options);
        } catch (const StepRejected& e) {
            throw ReplayError(i, e.what());
        }
    }
    if (!script.flip.fits_universe(script.n)) throw InvalidInput("flip set exceeds the universe");
    return apply_flips(state.current(), script.flip);
}

std::vector<BuildStep> enumerate_valid_steps(const BuildState& state, const SetSystem* target) {
    std::vector<BuildStep> out;
    visit_valid_steps(state, target, [&](const BuildStep& s) {
        out.push_back(s);
        return false;
    });
    return out;
}

std::vector<StepGeneral> enumerate_general_steps(const BuildState& state, int t) {
    const int n = state.universe_size();
    if (n > 20) throw InvalidInput("generalized step enumeration is limited to n <= 20");
    const auto& current = state.current();
    const auto st_now = strongly_shattered_sets(current);
    std::vector<StepGeneral> out;
    for (SetMask::word_type bits = 0; bits < (SetMask::word_type{1} << n); ++bits) {
        const SetMask f{bits};
        if (current.contains(f)) continue;
        for (auto s : strongly_shattered_sets(current.with(f)).sets) {
            if (s.size() <= t && !st_now.contains(s) && !state.is_strongly_shattered(s)) out.push_back(StepGeneral{s, f});
        }
    }
    return out;
}

std::string describe(const ReconstructFailure& failure) {
    const auto& r = failure.report;
    if (failure.reason == ReconstructFailure::Reason::NotExtremal) {
        return "not extremal: |Sh| = " + std::to_string(r.shattered_count) + ", |st| = " +
               std::to_string(r.strongly_shattered_count) + ", |F| = " + std::to_string(r.family_size);
    }
    return "VC dimension " + std::to_string(failure.vc_dimension) + " exceeds 2";
}

Reconstruction reconstruct_script(const SetSystem& target) {
    if (target.empty()) throw InvalidInput("cannot reconstruct the empty system");
    if (!target.contains(SetMask{})) {
        throw InvalidInput("target does not contain the empty set; apply flip_to_empty on a member first");
    }
    ReconstructFailure failure;
    failure.report = extremality(target);
    failure.vc_dimension = vc_dimension(target);
    if (!failure.report.extremal) return failure;
    if (failure.vc_dimension > 2) {
        failure.reason = ReconstructFailure::Reason::VcDimensionTooLarge;
        return failure;
    }

    BuildScript script{target.universe_size(), {}, {}};
    auto state = BuildState::initial(target.universe_size());
    while (state.current().size() < target.size()) {
        std::optional<BuildStep> next;
        visit_valid_steps(state, &target, [&](const BuildStep& s) {
            next = s;
            return true;
        });
        if (!next) {
            throw InternalError("reconstruction stuck after " + std::to_string(script.steps.size()) +
                                " steps with " + std::to_string(state.current().size()) + " of " +
                                std::to_string(target.size()) + " sets built");
        }
        state = apply_step(state, *next);
        script.steps.push_back(*next);
    }
    return script;
}

SetMask removable_set(const SetSystem& system, std::optional<SetMask> anchor) {
    if (system.size() < 2) throw InvalidInput("removal needs at least two members");
    const auto report = extremality(system);
    if (!report.extremal) {
        throw InvalidInput("system is not extremal: |Sh| = " + std::to_string(report.shattered_count) +
                           ", |F| = " + std::to_string(report.family_size));
    }
    const int vc = vc_dimension(system);
    if (vc > 2) throw InvalidInput("VC dimension " + std::to_string(vc) + " exceeds 2");

    const auto flipped = flip_to_empty(system, anchor.value_or(system[0]));
    const auto rebuilt = reconstruct_script(flipped.system);
    const auto* script = std::get_if<BuildScript>(&rebuilt);
    if (script == nullptr) throw InternalError("bit flips broke extremality");
    const auto removed = added_set(script->steps.back()) ^ flipped.flips;

    const auto rest = system.without(removed);
    const auto rest_report = extremality(rest);
    if (!rest_report.extremal || vc_dimension(rest) > 2) {
        throw InternalError("removing " + to_string(removed) + " broke extremality");
    }
    return removed;
}

std::vector<SetMask> peel(const SetSystem& system) {
    std::vector<SetMask> order;
    if (system.empty()) throw InvalidInput("cannot peel the empty system");
    auto rest = system;
    if (rest.size() == 1) {
        if (!is_extremal(rest)) throw InternalError("single-member system reported non-extremal");
        return order;
    }
    while (rest.size() > 1) {
        const auto removed = removable_set(rest);
        order.push_back(removed);
        rest = rest.without(removed);
    }
    return order;
}

RandomBuild random_build(int n, std::size_t steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto state = BuildState::initial(n);
    BuildScript script{n, {}, {}};
    for (std::size_t i = 0; i < steps; ++i) {
        const auto options = enumerate_valid_steps(state);
        if (options.empty()) break;
        const auto& chosen = options[pick_index(rng, options.size())];
        state = apply_step(state, chosen);
        script.steps.push_back(chosen);
    }
    return RandomBuild{std::move(script), state.current()};
}

} // namespace shatter
