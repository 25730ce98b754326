#include "wmerge/lp.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wmerge;

namespace {

std::vector<Rational> row(std::initializer_list<int> xs) {
    std::vector<Rational> r;
    for (int x : xs) r.emplace_back(x);
    return r;
}

// Grid oracle for two-source minimality: w1 >= 1, w2 >= 1 integer up to
// `bound`. For integer distances, the feasible cone (if non-empty) contains
// an integer point with coordinates at most 1 + max |coefficient|.
bool grid_minimal(const DistanceVector& t, const std::vector<DistanceVector>& others, std::int64_t bound) {
    for (std::int64_t a = 1; a <= bound; ++a)
        for (std::int64_t b = 1; b <= bound; ++b) {
            bool ok = true;
            for (const auto& o : others)
                if (a * (t[0] - o[0]) + b * (t[1] - o[1]) > 0) ok = false;
            if (ok) return true;
        }
    return false;
}

}  // namespace

TEST(Lp, SimpleFeasibleAndInfeasible) {
    LinSystem s(2);
    s.add(row({1, 1}), Relation::LessEqual, Rational(4));
    s.add(row({-1, 0}), Relation::Less, Rational(-1));
    s.add(row({0, -1}), Relation::Less, Rational(-1));
    auto r = feasible(s);
    ASSERT_TRUE(r);
    EXPECT_TRUE(s.satisfied_by(*r.witness));

    LinSystem t(1);
    t.add(row({1}), Relation::Less, Rational(1));
    t.add(row({-1}), Relation::LessEqual, Rational(-1));
    EXPECT_FALSE(feasible(t));

    LinSystem eq(2);
    eq.add(row({1, -1}), Relation::Equal, Rational(0));
    eq.add(row({1, 0}), Relation::Equal, Rational(3));
    auto e = feasible(eq);
    ASSERT_TRUE(e);
    EXPECT_EQ((*e.witness)[1], 3);
}

TEST(Lp, StrictnessMatters) {
    // x <= 1 and x >= 1 is feasible; x < 1 and x >= 1 is not.
    LinSystem a(1);
    a.add(row({1}), Relation::LessEqual, Rational(1));
    a.add(row({-1}), Relation::LessEqual, Rational(-1));
    EXPECT_TRUE(feasible(a));
    LinSystem b(1);
    b.add(row({1}), Relation::Less, Rational(1));
    b.add(row({-1}), Relation::LessEqual, Rational(-1));
    EXPECT_FALSE(feasible(b));
}

TEST(Lp, ResourceGuard) {
    LinSystem s(2);
    for (int i = 1; i <= 20; ++i) {
        s.add(row({i, 1}), Relation::LessEqual, Rational(100));
        s.add(row({-i, -1}), Relation::LessEqual, Rational(100));
    }
    EXPECT_THROW(feasible(s, 50), ResourceLimitError);
    EXPECT_TRUE(feasible(s));
}

TEST(Lp, IntegerWitness) {
    auto w = integer_witness({Rational(3, 2), Rational(1), Rational(5, 3)});
    EXPECT_EQ(w, (WeightVector{9, 6, 10}));
    EXPECT_THROW(integer_witness({Rational(0)}), ValidationError);
}

TEST(Lp, MinimalitySystemMatchesGridOracleForTwoSources) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t top = 2 + static_cast<std::int64_t>(rng() % 6);
        const std::size_t count = 1 + rng() % 6;
        DistanceVector t{static_cast<std::int64_t>(rng() % (top + 1)), static_cast<std::int64_t>(rng() % (top + 1))};
        std::vector<DistanceVector> others;
        for (std::size_t i = 0; i < count; ++i)
            others.push_back({static_cast<std::int64_t>(rng() % (top + 1)),
                              static_cast<std::int64_t>(rng() % (top + 1))});
        auto r = feasible(minimality_system(t, others));
        EXPECT_EQ(r.feasible(), grid_minimal(t, others, 2 * top + 2))
            << "t=[" << t[0] << "," << t[1] << "]";
        if (r) {
            auto w = integer_witness(*r.witness);
            for (const auto& o : others) EXPECT_LE(weighted_distance(w, t), weighted_distance(w, o));
        }
    }
}

TEST(Lp, WitnessesAreSoundInHigherDimensions) {
    std::mt19937 rng(29);
    int feasible_count = 0, infeasible_count = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t m = 3 + rng() % 3;
        DistanceVector t(m);
        for (auto& x : t) x = rng() % 4;
        std::vector<DistanceVector> others(2 + rng() % 8, DistanceVector(m));
        for (auto& o : others)
            for (auto& x : o) x = rng() % 4;
        auto r = feasible(minimality_system(t, others));
        if (!r) {
            ++infeasible_count;
            // every sampled positive vector must leave t beaten by someone
            for (int probe = 0; probe < 50; ++probe) {
                std::vector<Rational> w;
                for (std::size_t i = 0; i < m; ++i) w.emplace_back(1 + rng() % 20);
                WeightVector wv(w);
                bool beaten = false;
                for (const auto& o : others)
                    if (weighted_distance(wv, o) < weighted_distance(wv, t)) beaten = true;
                EXPECT_TRUE(beaten);
            }
            continue;
        }
        ++feasible_count;
        auto w = integer_witness(*r.witness);
        for (const auto& o : others) EXPECT_LE(weighted_distance(w, t), weighted_distance(w, o));
    }
    EXPECT_GT(feasible_count, 0);
    EXPECT_GT(infeasible_count, 0);
}
