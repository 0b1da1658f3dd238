#include <gtest/gtest.h>

#include <random>

#include "shatter/errors.hpp"
#include "shatter/set_system.hpp"
#include "shatter/shattering.hpp"
#include "test_support.hpp"

using namespace shatter;
using namespace testing_support;

TEST(SetMask, BasicArithmetic) {
    auto a = M({1, 3});
    auto b = M({3, 4});
    EXPECT_EQ(a | b, M({1, 3, 4}));
    EXPECT_EQ(a & b, M({3}));
    EXPECT_EQ(a ^ b, M({1, 4}));
    EXPECT_EQ(a - b, M({1}));
    EXPECT_TRUE(M({3}).is_subset_of(a));
    EXPECT_FALSE(a.is_subset_of(b));
    EXPECT_EQ(a.size(), 2);
    EXPECT_EQ(a.max_element(), 3);
    EXPECT_EQ(a.min_element(), 1);
    EXPECT_EQ(SetMask{}.max_element(), 0);
    EXPECT_EQ(a.elements(), (std::vector<int>{1, 3}));
}

TEST(SetMask, LabelsOutsideRangeRejected) {
    EXPECT_THROW(SetMask::of({0}), InvalidInput);
    EXPECT_THROW(SetMask::of({64}), InvalidInput);
    EXPECT_NO_THROW(SetMask::of({63}));
}

TEST(SetMask, ToString) {
    EXPECT_EQ(to_string(SetMask{}), "{}");
    EXPECT_EQ(to_string(M({2, 3})), "{2,3}");
}

TEST(SetMask, ForEachSubsetVisitsAllInOrder) {
    std::vector<SetMask> seen;
    for_each_subset(M({1, 3}), [&](SetMask s) { seen.push_back(s); });
    EXPECT_EQ(seen, (std::vector<SetMask>{M({}), M({1}), M({3}), M({1, 3})}));
}

TEST(SetMask, CompressExpandRoundTrip) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        SetMask::word_type mask = rng() & SetMask::universe(20).bits();
        SetMask::word_type x = rng() & mask;
        auto c = compress_bits(x, mask);
        EXPECT_LT(c, SetMask::word_type{1} << std::popcount(mask));
        EXPECT_EQ(expand_bits(c, mask), x);
    }
}

TEST(SetSystem, CanonicalOrderAndDuplicates) {
    SetSystem s(3, {M({2, 3}), M({}), M({1})});
    ASSERT_EQ(s.size(), 3U);
    EXPECT_EQ(s[0], M({}));
    EXPECT_EQ(s[1], M({1}));
    EXPECT_EQ(s[2], M({2, 3}));
    EXPECT_THROW(SetSystem(3, {M({1}), M({1})}), InvalidInput);
    EXPECT_THROW(SetSystem(2, {M({3})}), InvalidInput);
    EXPECT_THROW(SetSystem(0), InvalidInput);
    EXPECT_THROW(SetSystem(64), InvalidInput);
}

TEST(SetSystem, MembershipAndEditing) {
    auto f = example_family();
    EXPECT_TRUE(f.contains(M({2, 3})));
    EXPECT_FALSE(f.contains(M({1, 2})));
    EXPECT_EQ(f.index_of(M({3})), 3);
    EXPECT_EQ(f.index_of(M({1, 2})), -1);
    EXPECT_EQ(f.with(M({1, 2})).size(), 6U);
    EXPECT_EQ(f.without(M({1})), S(3, {{}, {2}, {3}, {2, 3}}));
    EXPECT_THROW((void)f.with(M({1})), InvalidInput);
    EXPECT_THROW((void)f.without(M({1, 2})), InvalidInput);
}

TEST(SetSystem, PowerSet) {
    EXPECT_EQ(SetSystem::power_set(3, M({1, 2})), S(3, {{}, {1}, {2}, {1, 2}}));
}

TEST(Support, Examples) {
    EXPECT_EQ(support(S(3, {{}, {1}, {2, 3}})), M({1, 2, 3}));
    EXPECT_EQ(support(S(3, {{}})), M({}));
    EXPECT_EQ(support(example_family()), M({1, 2, 3}));
    EXPECT_EQ(support(SetSystem(4)), M({}));
}

TEST(BitFlip, Examples) {
    EXPECT_EQ(bit_flip(S(2, {{}, {1, 2}}), 1), S(2, {{1}, {2}}));
    EXPECT_THROW(bit_flip(S(2, {{}}), 3), InvalidInput);
    EXPECT_THROW(bit_flip(S(2, {{}}), 0), InvalidInput);
}

TEST(BitFlip, InvolutionAndDistancesOnRandomSystems) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        auto f = random_system(n, 0.4, rng);
        const int i = 1 + static_cast<int>(rng() % n);
        auto g = bit_flip(f, i);
        EXPECT_EQ(g.size(), f.size());
        EXPECT_EQ(bit_flip(g, i), f);
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = 0; b < f.size(); ++b) {
                auto fa = f[a].toggled(i);
                auto fb = f[b].toggled(i);
                EXPECT_TRUE(g.contains(fa));
                EXPECT_EQ((fa ^ fb).size(), (f[a] ^ f[b]).size());
            }
        EXPECT_EQ(shattered_sets(g), shattered_sets(f));
    }
}

TEST(FlipToEmpty, Examples) {
    auto r = flip_to_empty(S(2, {{}, {1, 2}}), M({1, 2}));
    EXPECT_EQ(r.system, S(2, {{}, {1, 2}}));
    EXPECT_EQ(r.flips, M({1, 2}));

    auto single = flip_to_empty(S(1, {{1}}), M({1}));
    EXPECT_EQ(single.system, S(1, {{}}));

    EXPECT_THROW(flip_to_empty(S(2, {{}}), M({1})), InvalidInput);
}

TEST(FlipToEmpty, InvertsOnRandomSystems) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        auto f = random_system(n, 0.3, rng);
        auto target = f[rng() % f.size()];
        auto r = flip_to_empty(f, target);
        EXPECT_TRUE(r.system.contains(SetMask{}));
        EXPECT_EQ(invert_flip(r), f);
        EXPECT_EQ(apply_flips(f, target), r.system);
    }
}

TEST(StandardSubdivision, Examples) {
    auto [f0, f1] = standard_subdivision(example_family(), 3);
    EXPECT_EQ(f0, S(3, {{}, {1}, {2}}));
    EXPECT_EQ(f1, S(3, {{}, {2}}));

    auto d = standard_subdivision(S(1, {{}}), 1);
    EXPECT_EQ(d.avoiding, S(1, {{}}));
    EXPECT_TRUE(d.containing.empty());
    EXPECT_EQ(d.containing.universe_size(), 1);
}

TEST(StandardSubdivision, SizesAddUpAndElementAbsent) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        auto f = random_system(n, 0.5, rng);
        const int i = 1 + static_cast<int>(rng() % n);
        auto d = standard_subdivision(f, i);
        EXPECT_EQ(d.avoiding.size() + d.containing.size(), f.size());
        EXPECT_FALSE(support(d.avoiding).contains(i));
        EXPECT_FALSE(support(d.containing).contains(i));
    }
}

TEST(StandardSubdivision, ExtremalPartsExhaustiveN3) {
    for (std::uint64_t code = 1; code < 256; ++code) {
        auto f = decode(3, code);
        if (!extremal_by_count(f)) continue;
        for (int i = 1; i <= 3; ++i) {
            auto d = standard_subdivision(f, i);
            EXPECT_TRUE(is_extremal(d.avoiding.empty() ? S(3, {{}}) : d.avoiding));
            if (!d.containing.empty()) EXPECT_TRUE(is_extremal(d.containing));
        }
    }
}

TEST(IntervalRestrict, Examples) {
    auto f = example_family();
    EXPECT_EQ(interval_restrict(f, IntervalQuery(M({}), M({2, 3}))), S(3, {{}, {2}, {3}, {2, 3}}));
    EXPECT_EQ(interval_restrict(f, IntervalQuery(M({}), SetMask::universe(3))), f);
    EXPECT_THROW(IntervalQuery(M({1}), M({2})), InvalidInput);
}

TEST(IntervalRestrict, IdempotentAndHereditary) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        auto f = random_system(n, 0.6, rng);
        SetMask upper{rng() & SetMask::universe(n).bits()};
        SetMask lower{rng() & upper.bits()};
        IntervalQuery q(lower, upper);
        auto r = interval_restrict(f, q);
        EXPECT_EQ(interval_restrict(r, q), r);
        for (auto m : f) EXPECT_EQ(r.contains(m), q.contains(m));
        if (!r.empty() && extremal_by_count(f)) EXPECT_TRUE(extremal_by_count(r));
    }
}
