#pragma once

// Per-instance checkers for the merging postulates IC0-IC8, majority,
// duplicate-invariance and the disjunctive property, plus the closest-pairs
// operator.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"
#include "wmerge/merge.hpp"
#include "wmerge/weights.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace wmerge {

struct OperatorConfig {
    DistanceKind kind = DistanceKind::hamming();
    WeightScheme scheme = WeightScheme::all_positive();
};

struct Verdict {
    enum class Status { Pass, Fail, Vacuous };
    Status status = Status::Pass;
    std::string detail;
    ModelSet models;
    std::vector<WeightVector> weights;

    bool passed() const noexcept { return status != Status::Fail; }
};

inline std::string to_string(Verdict::Status s) {
    switch (s) {
    case Verdict::Status::Pass: return "pass";
    case Verdict::Status::Fail: return "fail";
    case Verdict::Status::Vacuous: return "vacuous";
    }
    return "?";
}

enum class PostulateId { IC0, IC1, IC2, IC3, IC4, IC5, IC6, IC7, IC8 };

inline std::optional<PostulateId> parse_postulate(std::string_view s) {
    static constexpr std::string_view names[] = {"ic0", "ic1", "ic2", "ic3", "ic4", "ic5", "ic6", "ic7", "ic8"};
    for (std::size_t i = 0; i < 9; ++i)
        if (s == names[i]) return static_cast<PostulateId>(i);
    return std::nullopt;
}

/// Extra input some postulates need.
struct PostulateAux {
    std::optional<Formula> mu_prime;             // IC7, IC8
    std::optional<std::size_t> split;            // IC5, IC6: first part is entries [0, split)
    std::optional<WeightScheme> left, right;     // IC5, IC6 part schemes
    std::optional<Instance> equivalent;          // IC3
    std::optional<std::vector<std::size_t>> permutation;  // IC3: inst entry i matches equivalent entry perm[i]
};

namespace detail {

inline Verdict pass(std::string detail = {}) { return {Verdict::Status::Pass, std::move(detail), {}, {}}; }
inline Verdict vacuous(std::string detail) { return {Verdict::Status::Vacuous, std::move(detail), {}, {}}; }
inline Verdict fail(std::string detail, ModelSet models, std::vector<WeightVector> weights = {}) {
    return {Verdict::Status::Fail, std::move(detail), std::move(models), std::move(weights)};
}

inline bool equivalent(const Formula& a, const Formula& b, const Universe& u) {
    return models_of(a, u) == models_of(b, u);
}

inline std::vector<WeightVector> witnesses_for(const MergeResult& r, const ModelSet& models) {
    std::vector<WeightVector> out;
    for (const auto& m : models) {
        auto it = r.witnesses.find(m);
        if (it != r.witnesses.end()) out.push_back(it->second);
    }
    return out;
}

// Scheme applied to a permuted profile: entry i of the original becomes
// entry perm[i].
inline WeightScheme permute_scheme(const WeightScheme& s, const std::vector<std::size_t>& perm) {
    if (s.tag() != WeightScheme::Tag::Explicit) return s;
    std::vector<WeightVector> out;
    for (const auto& w : s.vectors()) {
        std::vector<Rational> p(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) p[perm[i]] = w[i];
        out.emplace_back(std::move(p));
    }
    return WeightScheme::list(std::move(out));
}

inline Instance with_constraints(const Instance& inst, const Formula& mu) { return {inst.universe, mu, inst.profile}; }

inline Instance slice(const Instance& inst, std::size_t from, std::size_t to) {
    return {inst.universe, inst.constraints, Profile(inst.profile.begin() + from, inst.profile.begin() + to)};
}

}  // namespace detail

inline MergeResult merge(const Instance& inst, const OperatorConfig& cfg) {
    return merge_scheme(inst, cfg.scheme, cfg.kind);
}

/// Concatenation product: every vector of `a` followed by every vector of
/// `b`. All positive times all positive is all positive.
inline WeightScheme scheme_product(const SchemeExpansion& a, const SchemeExpansion& b) {
    if (a.all_positive && b.all_positive) return WeightScheme::all_positive();
    if (a.all_positive || b.all_positive)
        throw ValidationError("product of an infinite and a finite scheme is not supported");
    std::vector<WeightVector> out;
    for (const auto& x : a.vectors)
        for (const auto& y : b.vectors) {
            auto v = x.values();
            v.insert(v.end(), y.values().begin(), y.values().end());
            out.emplace_back(std::move(v));
        }
    return WeightScheme::list(std::move(out));
}

inline Verdict check_postulate(PostulateId id, const OperatorConfig& cfg, const Instance& inst,
                               const PostulateAux& aux = {}) {
    validate(inst);
    const auto& u = inst.universe;
    const auto mu_models = models_of(inst.constraints, u);
    switch (id) {
    case PostulateId::IC0: {
        auto r = merge(inst, cfg);
        auto outside = set_difference(r.models, mu_models);
        if (!outside.empty()) return detail::fail("merged models violate mu", outside, detail::witnesses_for(r, outside));
        return detail::pass();
    }
    case PostulateId::IC1: {
        auto r = merge(inst, cfg);
        if (r.models.empty()) return detail::fail("merge is inconsistent although mu is consistent", {});
        return detail::pass();
    }
    case PostulateId::IC2: {
        auto all = mu_models;
        for (const auto& f : inst.profile) all = set_intersection(all, models_of(f, u));
        if (all.empty()) return detail::vacuous("mu and the profile are jointly inconsistent");
        auto r = merge(inst, cfg);
        if (r.models != all) {
            auto diff = set_union(set_difference(r.models, all), set_difference(all, r.models));
            return detail::fail("merge differs from mu and the conjunction of the profile", diff);
        }
        return detail::pass();
    }
    case PostulateId::IC3: {
        Instance other{u, inst.constraints, {}};
        std::vector<std::size_t> perm(inst.profile.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        if (aux.equivalent) {
            other = *aux.equivalent;
            if (aux.permutation) perm = *aux.permutation;
            if (!(other.universe == u)) throw ValidationError("IC3: equivalent instance uses another universe");
            if (perm.size() != inst.profile.size() || other.profile.size() != perm.size())
                throw ValidationError("IC3: permutation does not match profile length");
            auto sorted = perm;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < sorted.size(); ++i)
                if (sorted[i] != i) throw ValidationError("IC3: not a permutation");
            if (!detail::equivalent(inst.constraints, other.constraints, u))
                throw ValidationError("IC3: constraints are not equivalent");
            for (std::size_t i = 0; i < perm.size(); ++i)
                if (!detail::equivalent(inst.profile[i], other.profile[perm[i]], u))
                    throw ValidationError("IC3: profile entry " + std::to_string(i + 1) + " has no equivalent match");
        } else {
            other = Instance{u, formula_from_models(mu_models, u), {}};
            for (const auto& f : inst.profile) other.profile.push_back(formula_from_models(models_of(f, u), u));
        }
        auto a = merge(inst, cfg);
        OperatorConfig permuted{cfg.kind, detail::permute_scheme(cfg.scheme, perm)};
        auto b = merge(other, permuted);
        if (a.models != b.models) {
            auto diff = set_union(set_difference(a.models, b.models), set_difference(b.models, a.models));
            return detail::fail("equivalent inputs merge differently", diff);
        }
        return detail::pass();
    }
    case PostulateId::IC4: {
        if (inst.profile.size() != 2) return detail::vacuous("IC4 concerns profiles of two formulae");
        const auto m1 = models_of(inst.profile[0], u);
        const auto m2 = models_of(inst.profile[1], u);
        if (!is_subset(m1, mu_models) || !is_subset(m2, mu_models))
            return detail::vacuous("F1 or F2 does not entail mu");
        auto r = merge(inst, cfg);
        auto with1 = set_intersection(r.models, m1);
        auto with2 = set_intersection(r.models, m2);
        if (with1.empty() != with2.empty()) {
            return detail::fail(with1.empty() ? "merge consistent with F2 but not with F1"
                                              : "merge consistent with F1 but not with F2",
                                r.models, detail::witnesses_for(r, r.models));
        }
        return detail::pass();
    }
    case PostulateId::IC5:
    case PostulateId::IC6: {
        const std::size_t m = inst.profile.size();
        if (!aux.split || *aux.split == 0 || *aux.split >= m)
            throw ValidationError("IC5/IC6 need a split point strictly inside the profile");
        const std::size_t k = *aux.split;
        WeightScheme left = aux.left.value_or(cfg.scheme);
        WeightScheme right = aux.right.value_or(cfg.scheme);
        if ((left.tag() == WeightScheme::Tag::AllPositive) != (right.tag() == WeightScheme::Tag::AllPositive))
            throw ValidationError("IC5/IC6: part schemes must both be finite or both be all positive");
        left = left.resolve(cfg.kind, u.size(), k);
        right = right.resolve(cfg.kind, u.size(), m - k);
        auto total = scheme_product(expand_scheme(left, k), expand_scheme(right, m - k));
        auto first = merge_scheme(detail::slice(inst, 0, k), left, cfg.kind);
        auto second = merge_scheme(detail::slice(inst, k, m), right, cfg.kind);
        auto whole = merge_scheme(inst, total, cfg.kind);
        auto both = set_intersection(first.models, second.models);
        if (id == PostulateId::IC5) {
            auto missing = set_difference(both, whole.models);
            if (!missing.empty())
                return detail::fail("models of both part merges missing from the whole merge", missing,
                                    detail::witnesses_for(first, missing));
            return detail::pass();
        }
        if (both.empty()) return detail::vacuous("part merges are jointly inconsistent");
        auto extra = set_difference(whole.models, both);
        if (!extra.empty())
            return detail::fail("whole merge has models outside the conjunction of the part merges", extra,
                                detail::witnesses_for(whole, extra));
        return detail::pass();
    }
    case PostulateId::IC7:
    case PostulateId::IC8: {
        if (!aux.mu_prime) throw ValidationError("IC7/IC8 need a second constraint formula");
        check_in_universe(*aux.mu_prime, u);
        const auto narrowed_models = set_intersection(mu_models, models_of(*aux.mu_prime, u));
        if (narrowed_models.empty()) return detail::vacuous("mu and mu' are jointly inconsistent");
        auto base = merge(inst, cfg);
        auto narrowed = merge(detail::with_constraints(inst, inst.constraints && *aux.mu_prime), cfg);
        auto kept = set_intersection(base.models, models_of(*aux.mu_prime, u));
        if (id == PostulateId::IC7) {
            auto missing = set_difference(kept, narrowed.models);
            if (!missing.empty())
                return detail::fail("models of mu' and the merge missing under mu and mu'", missing);
            return detail::pass();
        }
        if (kept.empty()) return detail::vacuous("mu' is inconsistent with the merge");
        auto extra = set_difference(narrowed.models, base.models);
        if (!extra.empty())
            return detail::fail("merge under mu and mu' selects models the merge under mu excludes", extra,
                                detail::witnesses_for(narrowed, extra));
        return detail::pass();
    }
    }
    throw ValidationError("unknown postulate");
}

/// Models occurring in some pair of Mod(f1) x Mod(f2) at minimal Hamming
/// distance.
inline ModelSet closest_pairs_merge(const Universe& u, const Formula& f1, const Formula& f2) {
    const auto a = models_of(f1, u);
    const auto b = models_of(f2, u);
    if (a.empty() || b.empty()) throw InconsistentFormulaError("closest pairs need two satisfiable formulae");
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& i : a)
        for (const auto& j : b) best = std::min(best, hamming_count(i, j));
    ModelSet out;
    for (const auto& i : a)
        for (const auto& j : b)
            if (hamming_count(i, j) == best) {
                out.push_back(i);
                out.push_back(j);
            }
    normalize(out);
    return out;
}

/// Whether merging f1 with `reps` copies of f2 under mu = true entails f2.
inline Verdict check_majority(const OperatorConfig& cfg, const Universe& u, const Formula& f1, const Formula& f2,
                              std::size_t reps) {
    if (reps < 1) throw ValidationError("majority needs at least one repetition");
    Profile e{f1};
    for (std::size_t i = 0; i < reps; ++i) e.push_back(f2);
    Instance inst{u, Formula::constant(true), e};
    auto r = merge(inst, cfg);
    auto outside = set_difference(r.models, models_of(f2, u));
    if (!outside.empty())
        return detail::fail("merge does not entail the repeated formula", outside, detail::witnesses_for(r, outside));
    return detail::pass();
}

/// Whether every merged model satisfies at least one profile entry.
inline Verdict check_disjunctive(const OperatorConfig& cfg, const Instance& inst) {
    validate(inst);
    const auto& u = inst.universe;
    const auto mu_models = models_of(inst.constraints, u);
    ModelSet any;
    for (const auto& f : inst.profile) {
        auto mf = models_of(f, u);
        if (set_intersection(mf, mu_models).empty()) return detail::vacuous("a profile entry conflicts with mu");
        any = set_union(any, mf);
    }
    auto r = merge(inst, cfg);
    auto outside = set_difference(r.models, any);
    if (!outside.empty())
        return detail::fail("merged models satisfy no profile entry", outside, detail::witnesses_for(r, outside));
    return detail::pass();
}

/// Whether repeating the last profile entry leaves the all-positive merge
/// unchanged.
inline Verdict check_arbitration_duplicate(const OperatorConfig& cfg, const Instance& inst) {
    if (cfg.scheme.tag() != WeightScheme::Tag::AllPositive)
        throw ValidationError("duplicate invariance is only claimed for all positive weights");
    auto dup = inst;
    dup.profile.push_back(inst.profile.back());
    auto a = merge(inst, cfg);
    auto b = merge(dup, cfg);
    if (a.models != b.models) {
        auto diff = set_union(set_difference(a.models, b.models), set_difference(b.models, a.models));
        return detail::fail("duplicating the last entry changes the merge", diff);
    }
    return detail::pass();
}

}  // namespace wmerge
