#include "shatter/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <set>
#include <unordered_set>

#include "shatter/builder.hpp"
#include "shatter/inclusion_graph.hpp"
#include "shatter/io.hpp"

namespace shatter {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// A system over [n] with n <= 6 encoded as a bitmask over 2^[n].
std::uint64_t family_code(const SetSystem& system) {
    std::uint64_t code = 0;
    for (auto m : system) code |= std::uint64_t{1} << m.bits();
    return code;
}

SetSystem system_from_code(int n, std::uint64_t code) {
    std::vector<SetMask> members;
    for (auto rest = code; rest != 0; rest &= rest - 1) members.emplace_back(static_cast<std::uint64_t>(std::countr_zero(rest)));
    return SetSystem(n, std::move(members));
}

// Tracks one claim: counts checks and keeps the first counterexample.
class ClaimTracker {
  public:
    ClaimTracker(std::string claim, json parameters) {
        report_.claim = std::move(claim);
        report_.parameters = std::move(parameters);
    }

    void check(bool ok, const SetSystem& system, const std::function<std::string()>& details) {
        ++report_.checked;
        if (ok || !report_.passed) return;
        report_.passed = false;
        report_.counterexample = system;
        report_.details = details();
    }

    void fail(const SetSystem& system, const std::string& details) {
        check(false, system, [&] { return details; });
    }

    VerificationReport finish(Clock::time_point start) {
        report_.seconds = seconds_since(start);
        return report_;
    }

  private:
    VerificationReport report_;
};

bool oracle_extremal_vc(const SetSystem& system, int vc_cap) {
    const auto sh = sh_by_definition(system);
    return sh.size() == system.size() && vc_dimension(sh) <= vc_cap;
}

bool fast_extremal_vc2(const SetSystem& system) {
    return !system.empty() && is_extremal(system) && vc_dimension(system) <= 2;
}

std::size_t shattered_count_or_zero(const SetSystem& system) {
    return system.empty() ? 0 : shattered_sets(system).size();
}

bool down_closed(const ShatterFamily& family) {
    for (auto s : family.sets) {
        for (int e : s.elements()) {
            if (!family.contains(s.without(e))) return false;
        }
    }
    return true;
}

std::string sets_string(const std::vector<SetMask>& sets) {
    std::string out;
    for (auto s : sets) out += (out.empty() ? "" : " ") + to_string(s);
    return out;
}

} // namespace

ShatterFamily sh_by_definition(const SetSystem& system) {
    const int n = system.universe_size();
    if (n > 20) throw InvalidInput("sh_by_definition is limited to n <= 20");
    ShatterFamily out{n, ShatterKind::Shattered, {}};
    for (SetMask::word_type s = 0; s < (SetMask::word_type{1} << n); ++s) {
        std::set<SetMask::word_type> traces;
        for (auto f : system) traces.insert(f.bits() & s);
        if (traces.size() == (std::size_t{1} << std::popcount(s))) out.sets.emplace_back(s);
    }
    return out;
}

ShatterFamily st_by_definition(const SetSystem& system) {
    const int n = system.universe_size();
    if (n > 16) throw InvalidInput("st_by_definition is limited to n <= 16");
    const std::unordered_set<SetMask> members(system.begin(), system.end());
    const auto universe = SetMask::universe(n);
    ShatterFamily out{n, ShatterKind::StronglyShattered, {}};
    for (SetMask::word_type bits = 0; bits <= universe.bits(); ++bits) {
        const SetMask s{bits};
        bool strongly = false;
        for_each_subset(universe - s, [&](SetMask offset) {
            if (strongly) return;
            bool cube = true;
            for_each_subset(s, [&](SetMask h) { cube = cube && members.contains(h | offset); });
            strongly = cube;
        });
        if (strongly) out.sets.push_back(s);
    }
    return out;
}

std::vector<SetSystem> enumerate_extremal(int n, bool require_empty, int vc_cap) {
    if (n < 1 || n > 4) throw InvalidInput("enumerate_extremal is limited to 1 <= n <= 4");
    const std::uint64_t limit = std::uint64_t{1} << (1U << n);
    std::vector<SetSystem> out;
    for (std::uint64_t code = 1; code < limit; ++code) {
        if (require_empty && (code & 1U) == 0) continue;
        auto system = system_from_code(n, code);
        if (oracle_extremal_vc(system, vc_cap)) out.push_back(std::move(system));
    }
    return out;
}

double sample_density(std::uint64_t i) {
    constexpr double kDensities[] = {0.1, 0.3, 0.5};
    return kDensities[i % 3];
}

SetSystem sample_system(int n, double p, std::mt19937_64& rng) {
    if (n < 1 || n > 20) throw InvalidInput("sample_system is limited to 1 <= n <= 20");
    const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
    while (true) {
        std::vector<SetMask> members;
        for (SetMask::word_type s = 0; s < (SetMask::word_type{1} << n); ++s) {
            if (rng() < threshold) members.emplace_back(s);
        }
        if (!members.empty()) return SetSystem(n, std::move(members));
    }
}

json to_json(const VerificationReport& report) {
    json out{{"claim", report.claim},
             {"parameters", report.parameters},
             {"passed", report.passed},
             {"checked", report.checked},
             {"seconds", report.seconds}};
    if (report.counterexample) {
        out["counterexample"] = json{{"system", to_json(*report.counterexample)}, {"details", report.details}};
    }
    return out;
}

std::string summary_table(std::span<const VerificationReport> reports) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %-6s %10s %9s\n", "claim", "result", "checked", "seconds");
    out += line;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-34s %-6s %10zu %9.3f\n", r.claim.c_str(), r.passed ? "PASS" : "FAIL", r.checked,
                      r.seconds);
        out += line;
        if (r.counterexample) {
            out += "    counterexample: " + to_json(*r.counterexample).dump() + "\n";
            out += "    details: " + r.details + "\n";
        }
    }
    return out;
}

VerificationReport verify_theorem1(int n, const Mutator& mutate) {
    const auto start = Clock::now();
    ClaimTracker tracker("theorem1_buildable_iff_extremal_vc2", json{{"n", n}});
    const auto census = enumerate_extremal(n, true, 2);

    // Closure of {{}} under every valid Step A / Step B.
    std::unordered_set<std::uint64_t> reachable;
    std::deque<BuildState> queue{BuildState::initial(n)};
    reachable.insert(family_code(queue.front().current()));
    while (!queue.empty()) {
        const auto state = std::move(queue.front());
        queue.pop_front();
        const auto& system = state.current();
        tracker.check(system.contains(SetMask{}) && oracle_extremal_vc(system, 2), system,
                      [] { return "buildable system is not extremal with VC <= 2"; });
        for (const auto& step : enumerate_valid_steps(state)) {
            auto next = apply_step(state, step);
            if (reachable.insert(family_code(next.current())).second) queue.push_back(std::move(next));
        }
    }

    std::unordered_set<std::uint64_t> census_codes;
    for (const auto& original : census) {
        const auto system = mutate ? mutate(original) : original;
        census_codes.insert(family_code(system));
        tracker.check(reachable.contains(family_code(system)), system,
                      [] { return "extremal VC <= 2 system not reachable by Steps A/B"; });
        try {
            const auto rebuilt = reconstruct_script(system);
            if (const auto* failure = std::get_if<ReconstructFailure>(&rebuilt)) {
                tracker.fail(system, "reconstruction refused: " + describe(*failure));
            } else {
                tracker.check(replay(std::get<BuildScript>(rebuilt)) == system, system,
                              [] { return "replayed script differs from the target"; });
            }
        } catch (const std::exception& e) {
            tracker.fail(system, std::string("reconstruction raised: ") + e.what());
        }
    }
    for (auto code : reachable) {
        if (!census_codes.contains(code)) {
            tracker.fail(system_from_code(n, code), "buildable system missing from the extremal census");
            break;
        }
    }
    auto report = tracker.finish(start);
    report.parameters["census_size"] = census.size();
    report.parameters["reachable_size"] = reachable.size();
    return report;
}

VerificationReport verify_theorem2(int n, std::size_t random_samples, std::uint64_t seed, int random_n,
                                   const Mutator& mutate) {
    const auto start = Clock::now();
    ClaimTracker tracker("theorem2_removable_element",
                         json{{"n", n}, {"random_samples", random_samples}, {"seed", seed}, {"random_n", random_n}});

    auto check_family = [&](const SetSystem& system) {
        try {
            if (system.size() >= 2) {
                const auto removed = removable_set(system);
                auto rest = system.without(removed);
                if (mutate) rest = mutate(rest);
                tracker.check(fast_extremal_vc2(rest), system, [&] {
                    return "removing " + to_string(removed) + " leaves a system that is not extremal with VC <= 2";
                });
            }
            const auto order = peel(system);
            bool ok = order.size() + 1 == system.size();
            auto rest = system;
            for (auto removed : order) {
                if (!ok || !rest.contains(removed)) {
                    ok = false;
                    break;
                }
                rest = rest.without(removed);
                ok = fast_extremal_vc2(rest);
            }
            tracker.check(ok && rest.size() == 1, system,
                          [&] { return "peel order " + sets_string(order) + " is not a valid extremal peeling"; });
        } catch (const std::exception& e) {
            tracker.fail(system, std::string("raised: ") + e.what());
        }
    };

    for (const auto& system : enumerate_extremal(n, false, 2)) check_family(system);

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_samples; ++i) {
        const auto steps = 1 + static_cast<std::size_t>(rng() % 30);
        const auto build_seed = rng();
        check_family(random_build(random_n, steps, build_seed).system);
    }
    return tracker.finish(start);
}

std::vector<VerificationReport> verify_propositions(int n, std::size_t samples, std::uint64_t seed,
                                                    const Mutator& mutate) {
    if (n < 1 || n > 12) throw InvalidInput("verify_propositions is limited to 1 <= n <= 12");
    const bool exhaustive = n <= 4;
    const json params = exhaustive ? json{{"n", n}, {"mode", "exhaustive"}}
                                   : json{{"n", n}, {"mode", "sampled"}, {"samples", samples}, {"builds", samples / 10}, {"seed", seed}};
    const auto start = Clock::now();

    std::vector<ClaimTracker> claims;
    claims.reserve(32); // trackers are referenced by address below
    auto claim = [&](const char* name) -> ClaimTracker& { return claims.emplace_back(name, params); };
    auto& sauer = claim("sauer_inequality");
    auto& reverse_sauer = claim("reverse_sauer_inequality");
    auto& st_within_sh = claim("st_subset_of_sh");
    auto& closed = claim("sh_st_down_closed");
    auto& equivalence = claim("extremality_equivalence");
    auto& sh_is_st = claim("extremal_sh_equals_st");
    auto& flips = claim("bit_flip_invariance");
    auto& subdivision_bound = claim("subdivision_bound");
    auto& subdivision_heredity = claim("subdivision_heredity");
    auto& interval_heredity = claim("interval_heredity");
    auto& isometry = claim("extremal_isometric_embedding");
    auto& uniqueness = claim("maximal_witness_uniqueness");
    auto& vc1 = claim("vc1_tree_characterization");
    auto& copies = claim("cube_copies_match_witnesses");
    auto& two_copies = claim("two_copies_shatter_extension");
    auto& oracle_sh = claim("sh_matches_definition");
    auto& oracle_st = claim("st_matches_definition");

    std::mt19937_64 rng(seed);
    const auto universe = SetMask::universe(n);

    auto examine = [&](const SetSystem& f) {
        const auto sh = shattered_sets(f);
        const auto st = strongly_shattered_sets(f);
        const bool extremal = sh.size() == f.size();
        const auto g = extremal && mutate ? mutate(f) : f;

        sauer.check(sh.size() >= f.size(), f, [&] { return "|Sh| < |F|"; });
        reverse_sauer.check(st.size() <= f.size(), f, [&] { return "|st| > |F|"; });
        st_within_sh.check(st.is_subfamily_of(sh), f, [&] { return "st not contained in Sh"; });
        closed.check(down_closed(sh) && down_closed(st), f, [&] { return "Sh or st not down-closed"; });
        equivalence.check(extremal == (st.size() == f.size()), f, [&] {
            return "|Sh| = " + std::to_string(sh.size()) + ", |st| = " + std::to_string(st.size());
        });
        // Sampled mode checks one random element and a few random sets per
        // system; exhaustive mode checks all of them.
        std::vector<int> elements;
        if (exhaustive) {
            for (int i = 1; i <= n; ++i) elements.push_back(i);
        } else {
            elements.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
        }
        for (int i : elements) {
            flips.check(shattered_sets(bit_flip(f, i)).sets == sh.sets, f,
                        [&] { return "Sh changes under flip of " + std::to_string(i); });
            const auto parts = standard_subdivision(f, i);
            subdivision_bound.check(
                shattered_count_or_zero(parts.avoiding) + shattered_count_or_zero(parts.containing) <= sh.size(), f,
                [&] { return "subdivision bound fails at element " + std::to_string(i); });
        }
        if (extremal) {
            sh_is_st.check(!g.empty() && shattered_sets(g).sets == strongly_shattered_sets(g).sets, g,
                           [&] { return "Sh differs from st"; });
            for (int i = 1; i <= n && !g.empty(); ++i) {
                const auto parts = standard_subdivision(g, i);
                subdivision_heredity.check(
                    (parts.avoiding.empty() || is_extremal(parts.avoiding)) &&
                        (parts.containing.empty() || is_extremal(parts.containing)),
                    g, [&] { return "a part of the subdivision at " + std::to_string(i) + " is not extremal"; });
            }
            auto check_interval = [&](SetMask lower, SetMask upper) {
                const auto part = interval_restrict(g, IntervalQuery(lower, upper));
                interval_heredity.check(part.empty() || is_extremal(part), g, [&] {
                    return "interval [" + to_string(lower) + ", " + to_string(upper) + "] is not extremal";
                });
            };
            if (exhaustive) {
                for_each_subset(universe, [&](SetMask upper) {
                    for_each_subset(upper, [&](SetMask lower) { check_interval(lower, upper); });
                });
            } else {
                for (int k = 0; k < 8; ++k) {
                    const SetMask upper{rng() & universe.bits()};
                    check_interval(SetMask{rng() & upper.bits()}, upper);
                }
            }
            const auto iso = is_isometrically_embedded(InclusionGraph(g));
            isometry.check(iso.isometric, g, [&] {
                return "distance mismatch between " + to_string(iso.violation->first) + " and " +
                       to_string(iso.violation->second);
            });
            for (auto s : maximal_sets(sh)) {
                const auto count = g.empty() ? 0 : strong_witnesses(g, s).size();
                uniqueness.check(count == 1, g, [&] {
                    return "maximal set " + to_string(s) + " has " + std::to_string(count) + " witnesses";
                });
            }
        }
        const InclusionGraph graph(f);
        vc1.check(is_labelled_tree(graph) == (extremal && vc_dimension(sh) <= 1), f,
                  [&] { return "tree test disagrees with extremal and VC <= 1"; });
        std::vector<SetMask> probes = sh.sets;
        if (!exhaustive && probes.size() > 16) {
            std::vector<SetMask> picked;
            for (int k = 0; k < 16; ++k) picked.push_back(probes[rng() % probes.size()]);
            probes = std::move(picked);
        }
        for (auto s : probes) {
            const auto witnesses = strong_witnesses(f, s);
            const auto found = find_cube_copies(graph, s);
            bool same = witnesses.size() == found.size() && (witnesses.empty() == !st.contains(s));
            for (std::size_t k = 0; same && k < found.size(); ++k) same = found[k].base == witnesses[k].offset;
            copies.check(same, f, [&] { return "cube copies of " + to_string(s) + " differ from witnesses"; });
            if (witnesses.size() >= 2) {
                const auto spread = witnesses[0].offset ^ witnesses[1].offset;
                bool extends = false;
                for (int a : spread.elements()) extends = extends || sh.contains(s.with(a));
                two_copies.check(extends, f,
                                 [&] { return "two copies of " + to_string(s) + " without a shattered extension"; });
            }
        }
        if (n <= 10) oracle_sh.check(sh_by_definition(f).sets == sh.sets, f, [&] { return "fast Sh differs"; });
        if (n <= 8) oracle_st.check(st_by_definition(f).sets == st.sets, f, [&] { return "fast st differs"; });
    };

    if (exhaustive) {
        const std::uint64_t limit = std::uint64_t{1} << (1U << n);
        for (std::uint64_t code = 1; code < limit; ++code) examine(system_from_code(n, code));
    } else {
        for (std::size_t i = 0; i < samples; ++i) examine(sample_system(n, sample_density(i), rng));
        // Random systems are almost never extremal; seeded builds feed the
        // claims that assume extremality.
        for (std::size_t i = 0; i < samples / 10; ++i) {
            const auto steps = 1 + static_cast<std::size_t>(rng() % 30);
            examine(random_build(n, steps, rng()).system);
        }
    }

    std::vector<VerificationReport> out;
    for (auto& c : claims) out.push_back(c.finish(start));
    return out;
}

} // namespace shatter
