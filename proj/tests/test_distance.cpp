#include "wmerge/distance.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wmerge;

namespace {

Universe vars(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return Universe(names);
}

Formula random_model_set_formula(std::mt19937& rng, const Universe& u) {
    auto everything = all_models(u);
    ModelSet chosen;
    while (chosen.empty())
        for (const auto& m : everything)
            if (rng() % 3 == 0) chosen.push_back(m);
    return formula_from_models(chosen, u);
}

}  // namespace

TEST(Distance, HammingAndDrastic) {
    auto a = Model::from_values({true, false, true});
    auto b = Model::from_values({false, false, false});
    EXPECT_EQ(hamming_count(a, b), 2u);
    EXPECT_EQ(model_distance(DistanceKind::hamming(), a, b), 2);
    EXPECT_EQ(model_distance(DistanceKind::drastic(), a, b), 1);
    EXPECT_EQ(model_distance(DistanceKind::drastic(), a, a), 0);
    EXPECT_THROW(hamming_count(a, Model::from_values({true})), ValidationError);
}

TEST(Distance, TableLookupAndValidation) {
    auto ds = DistanceKind::table({0, 1, 2, 2, 2}, 5);
    EXPECT_EQ(ds.from_hamming(0), 0);
    EXPECT_EQ(ds.from_hamming(4), 2);
    EXPECT_EQ(ds.from_hamming(5), 5);
    EXPECT_EQ(ds.max_value(5), 5);
    EXPECT_EQ(ds.codomain_size(5), 4u);
    EXPECT_THROW(DistanceKind::table({1, 2}, 3), ValidationError);
    EXPECT_THROW(DistanceKind::table({0, 0}, 3), ValidationError);
    EXPECT_THROW(DistanceKind::table({0, 1}, 0), ValidationError);
}

TEST(Distance, TriangleInequalityByBruteForce) {
    const std::vector<DistanceKind> kinds{
        DistanceKind::drastic(), DistanceKind::hamming(), DistanceKind::table({0, 1, 2, 2, 2}, 5),
        DistanceKind::table({0, 3, 2, 3}, 3), DistanceKind::table({0, 1, 1, 5}, 5)};
    for (std::size_t n = 1; n <= 5; ++n) {
        auto everything = all_models(vars(n));
        for (const auto& kind : kinds) {
            bool brute = true;
            for (const auto& i : everything)
                for (const auto& j : everything)
                    for (const auto& k : everything)
                        if (model_distance(kind, i, k) + model_distance(kind, k, j) < model_distance(kind, i, j))
                            brute = false;
            EXPECT_EQ(satisfies_triangle_inequality(kind, n), brute) << kind.name() << " n=" << n;
        }
    }
}

TEST(Distance, KnownTriangleFailures) {
    EXPECT_TRUE(satisfies_triangle_inequality(DistanceKind::hamming(), 6));
    EXPECT_TRUE(satisfies_triangle_inequality(DistanceKind::drastic(), 6));
    // 1 + 2 < 5 at Hamming counts (1, 4, 5)
    EXPECT_FALSE(satisfies_triangle_inequality(DistanceKind::table({0, 1, 2, 2, 2}, 5), 5));
    EXPECT_TRUE(satisfies_triangle_inequality(DistanceKind::table({0, 1, 2, 2, 2}, 5), 4));
}

TEST(Distance, FormulaDistanceIsMinimumOverModels) {
    Universe u({"a", "b", "c"});
    auto f = parse_formula("a & b & c", u);
    auto m = Model::from_values({false, false, false});
    EXPECT_EQ(formula_distance(DistanceKind::hamming(), m, f, u), 3);
    EXPECT_EQ(formula_distance(DistanceKind::drastic(), m, f, u), 1);
    EXPECT_EQ(formula_distance(DistanceKind::hamming(), m, parse_formula("a | b", u), u), 1);
    EXPECT_THROW(formula_distance(DistanceKind::hamming(), m, parse_formula("a & !a", u), u),
                 InconsistentFormulaError);
}

TEST(Distance, ProfileVectorAndErrorIndex) {
    Universe u({"a", "b"});
    Profile e{parse_formula("a & b", u), parse_formula("!a & !b", u)};
    auto m = Model::from_values({true, false});
    EXPECT_EQ(profile_distance_vector(DistanceKind::hamming(), m, e, u), (DistanceVector{1, 1}));
    Profile bad{parse_formula("a", u), parse_formula("b & !b", u)};
    try {
        ProfileDistances pd(DistanceKind::hamming(), bad, u);
        FAIL();
    } catch (const InconsistentFormulaError& err) {
        EXPECT_EQ(err.index(), 1u);
    }
}

TEST(Distance, DrasticVectorIsComplementOfSubsat) {
    std::mt19937 rng(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto u = vars(n);
        for (int trial = 0; trial < 50; ++trial) {
            Profile e;
            const std::size_t m = 1 + rng() % 4;
            for (std::size_t i = 0; i < m; ++i) e.push_back(random_model_set_formula(rng, u));
            ProfileDistances pd(DistanceKind::drastic(), e, u);
            for (const auto& model : all_models(u)) {
                auto d = pd(model);
                auto sat = subsat(model, e);
                for (std::size_t i = 0; i < m; ++i) {
                    bool in = std::find(sat.begin(), sat.end(), i) != sat.end();
                    EXPECT_EQ(d[i], in ? 0 : 1);
                }
            }
        }
    }
}
