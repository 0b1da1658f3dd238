#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "shatter/errors.hpp"
#include "shatter/shattering.hpp"
#include "test_support.hpp"

using namespace shatter;
using namespace testing_support;

namespace {

std::vector<SetMask> sets(std::initializer_list<std::initializer_list<int>> s) {
    std::vector<SetMask> out;
    for (auto e : s) out.push_back(SetMask::of(e));
    std::sort(out.begin(), out.end());
    return out;
}

// All I outside s with 2^s + I inside f, by direct enumeration.
std::vector<SetMask> brute_offsets(const SetSystem& f, SetMask s) {
    std::vector<SetMask> out;
    const auto rest = SetMask::universe(f.universe_size()) - s;
    for_each_subset(rest, [&](SetMask i) {
        bool all = true;
        for_each_subset(s, [&](SetMask h) { all = all && f.contains(h | i); });
        if (all) out.push_back(i);
    });
    return out;
}

} // namespace

TEST(ShatteredSets, Examples) {
    EXPECT_EQ(shattered_sets(S(2, {{}, {1, 2}})).sets, sets({{}, {1}, {2}}));
    EXPECT_EQ(shattered_sets(S(2, {{}})).sets, sets({{}}));
    EXPECT_EQ(shattered_sets(example_family()).sets, sets({{}, {1}, {2}, {3}, {2, 3}}));
    EXPECT_EQ(shattered_sets(example_family()).kind, ShatterKind::Shattered);
}

TEST(ShatteredSets, RejectsEmptyAndOversized) {
    EXPECT_THROW(shattered_sets(SetSystem(3)), InvalidInput);
    std::vector<SetMask> wide{SetMask{}, SetMask::universe(26)};
    EXPECT_THROW(shattered_sets(SetSystem(30, wide)), InvalidInput);
    EXPECT_THROW(strongly_shattered_sets(SetSystem(30, wide)), InvalidInput);
    EXPECT_THROW(vc_dimension(SetSystem(2)), InvalidInput);
    EXPECT_THROW(is_extremal(SetSystem(2)), InvalidInput);
}

TEST(ShatteredSets, WideSupportUsesFallbackPath) {
    // Support of 22 elements goes past the dense trace table.
    std::vector<SetMask> members{SetMask{}};
    for (int i = 1; i <= 22; ++i) members.push_back(SetMask::singleton(i));
    members.push_back(M({1, 2}));
    SetSystem f(22, members);
    auto sh = shattered_sets(f);
    EXPECT_EQ(sh.size(), 24U);
    EXPECT_TRUE(sh.contains(M({1, 2})));
    EXPECT_EQ(strongly_shattered_sets(f).sets, sh.sets);
    EXPECT_TRUE(is_extremal(f));
}

TEST(StronglyShatteredSets, Examples) {
    EXPECT_EQ(strongly_shattered_sets(S(2, {{}, {1, 2}})).sets, sets({{}}));
    EXPECT_EQ(strongly_shattered_sets(SetSystem::power_set(2, M({1, 2}))).sets, sets({{}, {1}, {2}, {1, 2}}));
    EXPECT_EQ(strongly_shattered_sets(example_family()).sets, sets({{}, {1}, {2}, {3}, {2, 3}}));
    EXPECT_EQ(strongly_shattered_sets(example_family()).kind, ShatterKind::StronglyShattered);
}

TEST(StrongWitnesses, Examples) {
    auto cube = SetSystem::power_set(2, M({1, 2}));
    EXPECT_EQ(strong_witnesses(cube, M({1, 2})), (std::vector<StrongWitness>{{M({1, 2}), M({})}}));
    EXPECT_TRUE(strong_witnesses(S(2, {{}, {1, 2}}), M({1})).empty());
    auto f = S(3, {{}, {1}, {2}, {1, 2}, {3}, {1, 3}});
    auto w = strong_witnesses(f, M({1}));
    ASSERT_EQ(w.size(), 3U);
    EXPECT_EQ(w[0].offset, M({}));
    EXPECT_EQ(w[1].offset, M({2}));
    EXPECT_EQ(w[2].offset, M({3}));
    std::vector<SetMask> offsets;
    for (auto& x : w) offsets.push_back(x.offset);
    EXPECT_EQ(offsets, brute_offsets(f, M({1})));
}

TEST(StrongWitnesses, MatchBruteForceOnRandomSystems) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        auto f = random_system(n, 0.5, rng);
        SetMask s{rng() & SetMask::universe(n).bits()};
        std::vector<SetMask> offsets;
        for (auto& x : strong_witnesses(f, s)) {
            EXPECT_EQ(x.shattered, s);
            EXPECT_TRUE((x.offset & s).empty());
            offsets.push_back(x.offset);
        }
        EXPECT_EQ(offsets, brute_offsets(f, s));
        EXPECT_EQ(offsets.empty(), !strongly_shattered_sets(f).contains(s));
    }
}

TEST(VcDimension, Examples) {
    EXPECT_EQ(vc_dimension(S(3, {{}})), 0);
    EXPECT_EQ(vc_dimension(example_family()), 2);
    EXPECT_EQ(vc_dimension(SetSystem::power_set(3, M({1, 2, 3}))), 3);
    EXPECT_EQ(vc_dimension(S(3, {{2}})), 0);
}

TEST(Extremality, Examples) {
    auto r = extremality(S(2, {{}, {1, 2}}));
    EXPECT_FALSE(r.extremal);
    EXPECT_EQ(r.family_size, 2U);
    EXPECT_EQ(r.shattered_count, 3U);
    EXPECT_EQ(r.strongly_shattered_count, 1U);
    EXPECT_TRUE(is_extremal(S(1, {{}})));
    auto e = extremality(example_family());
    EXPECT_TRUE(e.extremal);
    EXPECT_EQ(e.shattered_count, 5U);
    EXPECT_EQ(e.strongly_shattered_count, 5U);
}

TEST(MaximalShattered, Examples) {
    EXPECT_EQ(maximal_shattered(example_family()), sets({{1}, {2, 3}}));
    EXPECT_EQ(maximal_shattered(S(2, {{}})), sets({{}}));
    EXPECT_EQ(maximal_shattered(SetSystem::power_set(2, M({1, 2}))), sets({{1, 2}}));
}

TEST(ShatteringProperties, RandomSystems) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        auto f = random_system(n, trial % 2 ? 0.2 : 0.5, rng);
        auto sh = shattered_sets(f);
        auto st = strongly_shattered_sets(f);
        EXPECT_GE(sh.size(), f.size());
        EXPECT_LE(st.size(), f.size());
        EXPECT_TRUE(st.is_subfamily_of(sh));
        EXPECT_EQ(static_cast<int>(sh.size()), shattered_count(f));
        for (auto s : sh.sets) {
            EXPECT_TRUE(traces_all(f, s));
            for (int e : s.elements()) EXPECT_TRUE(sh.contains(s.without(e)));
        }
        for (auto s : st.sets)
            for (int e : s.elements()) EXPECT_TRUE(st.contains(s.without(e)));
        auto rep = extremality(f);
        EXPECT_EQ(rep.extremal, sh.size() == f.size());
        EXPECT_EQ(rep.extremal, st.size() == f.size());
        if (rep.extremal) EXPECT_EQ(sh.sets, st.sets);
        for (int i = 1; i <= n; ++i) {
            auto d = standard_subdivision(f, i);
            std::size_t parts = 0;
            if (!d.avoiding.empty()) parts += shattered_sets(d.avoiding).size();
            if (!d.containing.empty()) parts += shattered_sets(d.containing).size();
            EXPECT_GE(sh.size(), parts);
        }
    }
}

TEST(ShatteringProperties, MonotoneUnderAddingMembers) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        auto f = random_system(n, 0.3, rng);
        SetMask extra{rng() & SetMask::universe(n).bits()};
        if (f.contains(extra)) continue;
        auto g = f.with(extra);
        EXPECT_TRUE(shattered_sets(f).is_subfamily_of(shattered_sets(g)));
        EXPECT_TRUE(strongly_shattered_sets(f).is_subfamily_of(strongly_shattered_sets(g)));
    }
}

TEST(ShatteringProperties, MaximalSetsHaveUniqueWitnessWhenExtremal) {
    for (std::uint64_t code = 1; code < 256; ++code) {
        auto f = decode(3, code);
        if (!extremal_by_count(f)) continue;
        for (auto s : maximal_shattered(f)) EXPECT_EQ(strong_witnesses(f, s).size(), 1U);
    }
}

TEST(ShatterKind, Names) {
    EXPECT_EQ(to_string(ShatterKind::Shattered), "Sh");
    EXPECT_EQ(to_string(ShatterKind::StronglyShattered), "st");
}
