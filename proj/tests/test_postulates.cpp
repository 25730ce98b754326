#include "wmerge/instancegen.hpp"
#include "wmerge/postulates.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace wmerge;
using Status = Verdict::Status;

namespace {

Model model_at(const Instance& inst, const DistanceVector& v) {
    auto c = candidates(inst, DistanceKind::hamming());
    for (std::size_t i = 0; i < c.models.size(); ++i)
        if (c.vectors[i] == v) return c.models[i];
    throw std::logic_error("no model at vector");
}

std::vector<OperatorConfig> basic_configs(std::size_t m) {
    std::vector<OperatorConfig> out;
    std::vector<WeightVector> explicit_list;
    std::vector<Rational> a(m, Rational(1)), b(m, Rational(1));
    a[0] = 3;
    b[m - 1] = 2;
    explicit_list.emplace_back(a);
    explicit_list.emplace_back(b);
    for (const auto& kind : {DistanceKind::drastic(), DistanceKind::hamming()}) {
        out.push_back({kind, WeightScheme::equal()});
        out.push_back({kind, WeightScheme::expert()});
        out.push_back({kind, WeightScheme::all_positive()});
        out.push_back({kind, WeightScheme::list(explicit_list)});
    }
    return out;
}

}  // namespace

TEST(Postulates, BasicOnesHoldEverywhere) {
    std::size_t vacuous = 0, nonvacuous = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t n = 1 + seed % 4, m = 1 + seed % 3;
        auto inst = random_instance(n, m, seed + 123);
        PostulateAux aux;
        aux.mu_prime = random_instance(n, 1, seed + 999).profile[0];
        for (const auto& cfg : basic_configs(m)) {
            for (auto id : {PostulateId::IC0, PostulateId::IC1, PostulateId::IC2, PostulateId::IC3, PostulateId::IC7}) {
                auto v = check_postulate(id, cfg, inst, aux);
                EXPECT_NE(v.status, Status::Fail) << v.detail << " seed " << seed;
                (v.status == Status::Vacuous ? vacuous : nonvacuous)++;
            }
        }
    }
    EXPECT_GT(nonvacuous, vacuous);
}

TEST(Postulates, Ic2ForcesConjunction) {
    Universe u({"a", "b"});
    Instance inst{u, parse_formula("a | b", u), {parse_formula("a", u), parse_formula("a -> b", u)}};
    for (const auto& cfg : basic_configs(2)) EXPECT_EQ(check_postulate(PostulateId::IC2, cfg, inst).status, Status::Pass);
}

TEST(Postulates, Ic3WithPermutationAndExplicitWeights) {
    Universe u({"a", "b", "c"});
    auto f = [&](const char* s) { return parse_formula(s, u); };
    Instance inst{u, f("a | b | c"), {f("a & b"), f("!a"), f("c -> a")}};
    Instance other{u, f("!(!a & !b & !c)"), {f("!a | !c & !a"), f("!c | a"), f("b & a")}};
    PostulateAux aux;
    aux.equivalent = other;
    aux.permutation = std::vector<std::size_t>{2, 0, 1};
    for (const auto& kind : {DistanceKind::drastic(), DistanceKind::hamming()}) {
        OperatorConfig cfg{kind, WeightScheme::list({WeightVector{5, 1, 1}, WeightVector{1, 1, 4}})};
        EXPECT_EQ(check_postulate(PostulateId::IC3, cfg, inst, aux).status, Status::Pass);
    }
    PostulateAux wrong = aux;
    wrong.permutation = std::vector<std::size_t>{0, 1, 2};
    EXPECT_THROW(check_postulate(PostulateId::IC3, {}, inst, wrong), ValidationError);
}

TEST(Postulates, Ic4SymmetricSchemesWithTriangleInequality) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const std::size_t n = 1 + seed % 4;
        auto inst = random_instance(n, 2, seed + 555);
        inst.constraints = inst.constraints || inst.profile[0] || inst.profile[1];
        for (const auto& kind : {DistanceKind::drastic(), DistanceKind::hamming()}) {
            ASSERT_TRUE(satisfies_triangle_inequality(kind, n));
            for (const auto& s : {WeightScheme::all_positive(), WeightScheme::equal(), WeightScheme::expert(3),
                                  WeightScheme::list({{4, 1}, {1, 4}})}) {
                auto v = check_postulate(PostulateId::IC4, {kind, s}, inst);
                EXPECT_EQ(v.status, Status::Pass) << v.detail;
                ++checked;
            }
        }
    }
    EXPECT_EQ(checked, 960u);
}

TEST(Postulates, Ic4FailsForAsymmetricWeights) {
    Universe u({"x"});
    Instance inst{u, Formula::constant(true), {parse_formula("x", u), parse_formula("!x", u)}};
    auto v = check_postulate(PostulateId::IC4, {DistanceKind::hamming(), WeightScheme::list({WeightVector{2, 1}})}, inst);
    EXPECT_EQ(v.status, Status::Fail);
    EXPECT_EQ(v.models, (ModelSet{Model::from_values({true})}));
}

TEST(Postulates, Ic4FailsWithoutTriangleInequality) {
    Universe u({"x1", "x2", "x3", "x4", "x5"});
    auto f1 = parse_formula("x1 & x2 & x3 & x4 & x5", u);
    auto f2 = parse_formula("!x1 & !x2 & !x3 & !x4 & !x5", u);
    auto mu = f1 || f2 || parse_formula("x1 & !x2 & !x3 & !x4 & !x5", u);
    Instance inst{u, mu, {f1, f2}};
    auto ds = DistanceKind::table({0, 1, 2, 2, 2}, 5);
    EXPECT_FALSE(satisfies_triangle_inequality(ds, 5));
    auto c = candidates(inst, ds);
    auto vs = c.vectors;
    std::sort(vs.begin(), vs.end());
    EXPECT_EQ(vs, (std::vector<DistanceVector>{{0, 5}, {2, 1}, {5, 0}}));
    auto v = check_postulate(PostulateId::IC4, {ds, WeightScheme::list({{5, 2}, {2, 5}})}, inst);
    EXPECT_EQ(v.status, Status::Fail);
    auto r = merge_scheme(inst, WeightScheme::list({{5, 2}, {2, 5}}), ds).models;
    EXPECT_FALSE(set_intersection(r, models_of(f1, u)).empty());
    EXPECT_TRUE(set_intersection(r, models_of(f2, u)).empty());
}

TEST(Postulates, Ic5HoldsForProductSchemes) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        auto inst = random_instance(1 + seed % 4, 2 + seed % 3, seed + 31337);
        PostulateAux aux;
        aux.split = 1 + seed % (inst.profile.size() - 1);
        for (const auto& kind : {DistanceKind::drastic(), DistanceKind::hamming()}) {
            EXPECT_NE(check_postulate(PostulateId::IC5, {kind, WeightScheme::all_positive()}, inst, aux).status,
                      Status::Fail);
            EXPECT_NE(check_postulate(PostulateId::IC5, {kind, WeightScheme::equal()}, inst, aux).status, Status::Fail);
            EXPECT_NE(check_postulate(PostulateId::IC5, {kind, WeightScheme::expert(3)}, inst, aux).status,
                      Status::Fail);
        }
    }
}

TEST(Postulates, Ic6HoldsForSingleVectorParts) {
    // With one vector per part the product has one vector and the
    // conjunction argument goes through.
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        auto inst = random_instance(1 + seed % 4, 2 + seed % 3, seed + 4711);
        PostulateAux aux;
        aux.split = 1 + seed % (inst.profile.size() - 1);
        for (const auto& kind : {DistanceKind::drastic(), DistanceKind::hamming()})
            EXPECT_NE(check_postulate(PostulateId::IC6, {kind, WeightScheme::equal()}, inst, aux).status, Status::Fail);
    }
}

TEST(Postulates, Ic6FailsWhenPartsPickDifferentVectors) {
    // A = (0,1,1), B = (1,1,0), C = (2,0,0), split after two entries.
    // Part merges: {A, C} and {B, C}; their conjunction is {C}. The whole
    // merge keeps A and B as well: under [1,1,1] all three tie.
    auto inst = realize({{{0, 1, 1}, {1, 1, 0}, {2, 0, 0}}});
    const auto a = model_at(inst, {0, 1, 1});
    const auto b = model_at(inst, {1, 1, 0});
    PostulateAux aux;
    aux.split = 2;

    auto v = check_postulate(PostulateId::IC6, {DistanceKind::hamming(), WeightScheme::all_positive()}, inst, aux);
    ASSERT_EQ(v.status, Status::Fail);
    ModelSet ab{a, b};
    normalize(ab);
    EXPECT_EQ(v.models, ab);
    EXPECT_TRUE(contains(merge_fixed(inst, WeightVector{1, 1, 1}, DistanceKind::hamming()), b));

    aux.left = WeightScheme::list({{1, 2}, {2, 1}});
    aux.right = WeightScheme::equal();
    auto f = check_postulate(PostulateId::IC6, {DistanceKind::hamming(), WeightScheme::equal()}, inst, aux);
    ASSERT_EQ(f.status, Status::Fail);
    EXPECT_EQ(f.models, ModelSet{a});
    ASSERT_EQ(f.weights.size(), 1u);
    EXPECT_EQ(f.weights[0], (WeightVector{2, 1, 1}));

    // IC5 is fine on the same data
    EXPECT_EQ(check_postulate(PostulateId::IC5, {DistanceKind::hamming(), WeightScheme::equal()}, inst, aux).status,
              Status::Pass);
}

TEST(Postulates, Ic8CounterexampleReproduces) {
    auto inst = realize({{{1, 0}, {0, 1}, {0, 2}}});
    const auto i = model_at(inst, {1, 0});
    const auto k = model_at(inst, {0, 2});
    PostulateAux aux;
    aux.mu_prime = formula_from_models(ModelSet{i, k}, inst.universe);
    OperatorConfig cfg{DistanceKind::hamming(), WeightScheme::all_positive()};
    auto v = check_postulate(PostulateId::IC8, cfg, inst, aux);
    ASSERT_EQ(v.status, Status::Fail);
    EXPECT_EQ(v.models, ModelSet{k});
    ASSERT_EQ(v.weights.size(), 1u);
    // under [2,1] both remaining models weigh 2
    EXPECT_EQ(weighted_distance(WeightVector{2, 1}, {1, 0}), 2);
    EXPECT_EQ(weighted_distance(WeightVector{2, 1}, {0, 2}), 2);
    Instance narrowed{inst.universe, inst.constraints && *aux.mu_prime, inst.profile};
    EXPECT_TRUE(contains(merge_fixed(narrowed, WeightVector{2, 1}, DistanceKind::hamming()), k));
    // IC7 still holds on the same data
    EXPECT_EQ(check_postulate(PostulateId::IC7, cfg, inst, aux).status, Status::Pass);
}

TEST(Postulates, MalformedAux) {
    auto inst = random_instance(2, 2, 3);
    EXPECT_THROW(check_postulate(PostulateId::IC7, {}, inst), ValidationError);
    EXPECT_THROW(check_postulate(PostulateId::IC5, {}, inst), ValidationError);
    PostulateAux aux;
    aux.split = 2;
    EXPECT_THROW(check_postulate(PostulateId::IC6, {}, inst, aux), ValidationError);
}

TEST(ClosestPairs, Examples) {
    Universe u({"x", "y"});
    auto r = closest_pairs_merge(u, parse_formula("x & y", u), parse_formula("!x & !y", u));
    ModelSet expect{Model::from_values({false, false}), Model::from_values({true, true})};
    EXPECT_EQ(r, expect);
    auto both = closest_pairs_merge(u, parse_formula("x", u), parse_formula("y", u));
    EXPECT_TRUE(is_subset(models_of(parse_formula("x & y", u), u), both));
    EXPECT_THROW(closest_pairs_merge(u, parse_formula("x & !x", u), parse_formula("y", u)), InconsistentFormulaError);
}

TEST(ClosestPairs, EqualsExpertMergeOnRandomPairs) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 1 + seed % 4;
        auto two = random_instance(n, 2, seed + 71);
        Instance inst{two.universe, Formula::constant(true), two.profile};
        auto expert = merge_scheme(inst, WeightScheme::expert(static_cast<std::int64_t>(n) + 1), DistanceKind::hamming());
        EXPECT_EQ(closest_pairs_merge(inst.universe, two.profile[0], two.profile[1]), expert.models);
    }
}

TEST(Majority, AllPositiveKeepsTheLoneSource) {
    Universe u({"a"});
    auto a = parse_formula("a", u);
    for (std::size_t reps = 1; reps <= 5; ++reps) {
        OperatorConfig cfg{DistanceKind::hamming(), WeightScheme::all_positive()};
        auto v = check_majority(cfg, u, a, !a, reps);
        ASSERT_EQ(v.status, Status::Fail);
        EXPECT_EQ(v.models, (ModelSet{Model::from_values({true})}));
        std::vector<Rational> w(reps + 1, Rational(1));
        w[0] = static_cast<std::int64_t>(reps);
        Instance inst{u, Formula::constant(true), Profile(reps + 1, !a)};
        inst.profile[0] = a;
        EXPECT_TRUE(contains(merge_fixed(inst, WeightVector(w), DistanceKind::hamming()), Model::from_values({true})));
    }
}

TEST(Majority, EqualWeightsFollowTheMajority) {
    Universe u({"a"});
    auto a = parse_formula("a", u);
    OperatorConfig cfg{DistanceKind::hamming(), WeightScheme::equal()};
    EXPECT_EQ(check_majority(cfg, u, a, !a, 2).status, Status::Pass);
    EXPECT_EQ(check_majority({DistanceKind::hamming(), WeightScheme::all_positive()}, u, a, a, 3).status, Status::Pass);
    EXPECT_THROW(check_majority(cfg, u, a, a, 0), ValidationError);
}

TEST(Disjunctive, ExpertIsDisjunctiveEqualIsNot) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const std::size_t n = 1 + seed % 4, m = 1 + seed % 3;
        auto inst = random_instance(n, m, seed + 8080);
        inst.constraints = Formula::constant(true);
        OperatorConfig cfg{DistanceKind::hamming(), WeightScheme::expert(static_cast<std::int64_t>(n * m) + 1)};
        EXPECT_EQ(check_disjunctive(cfg, inst).status, Status::Pass);
    }
    Universe u({"x", "y"});
    Instance inst{u, Formula::constant(true), {parse_formula("x & y", u), parse_formula("!x & !y", u)}};
    auto v = check_disjunctive({DistanceKind::hamming(), WeightScheme::equal()}, inst);
    EXPECT_EQ(v.status, Status::Fail);
    EXPECT_EQ(v.models.size(), 2u);
    Instance single{u, Formula::constant(true), {parse_formula("x | y", u)}};
    EXPECT_EQ(check_disjunctive({DistanceKind::hamming(), WeightScheme::equal()}, single).status, Status::Pass);
    Instance conflict{u, parse_formula("x", u), {parse_formula("!x", u)}};
    EXPECT_EQ(check_disjunctive({DistanceKind::hamming(), WeightScheme::equal()}, conflict).status, Status::Vacuous);
}

TEST(Arbitration, DuplicatingLastEntryIsHarmless) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        auto inst = random_instance(1 + seed % 4, 1 + seed % 3, seed + 2024);
        for (const auto& kind : {DistanceKind::drastic(), DistanceKind::hamming()})
            EXPECT_EQ(check_arbitration_duplicate({kind, WeightScheme::all_positive()}, inst).status, Status::Pass);
    }
    Universe u({"a"});
    Instance inst{u, Formula::constant(true), {parse_formula("a", u), parse_formula("!a", u)}};
    EXPECT_THROW(check_arbitration_duplicate({DistanceKind::hamming(), WeightScheme::equal()}, inst), ValidationError);
    // the equal-weight merge does change
    auto dup = inst;
    dup.profile.push_back(inst.profile.back());
    EXPECT_NE(merge_fixed(inst, WeightVector{1, 1}, DistanceKind::hamming()),
              merge_fixed(dup, WeightVector{1, 1, 1}, DistanceKind::hamming()));
}
