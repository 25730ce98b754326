#pragma once

// Weighted-distance merging under integrity constraints: fixed weights,
// finite weight schemes, all positive weight vectors (decided per model by
// exact linear feasibility), dominance, exclusion certificates and
// multi-formula sources.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"
#include "wmerge/lp.hpp"
#include "wmerge/weights.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wmerge {

/// Integrity constraints `constraints` (mu) and the profile to merge.
struct Instance {
    Universe universe;
    Formula constraints;
    Profile profile;
};

/// One set of formulae per source.
using SourceProfile = std::vector<std::vector<Formula>>;

struct MergeResult {
    ModelSet models;
    /// For each selected model, an integer weight vector selecting it.
    std::map<Model, WeightVector> witnesses;
};

/// Throws unless mu and every profile entry are consistent formulae over
/// the universe.
inline void validate(const Instance& inst) {
    check_in_universe(inst.constraints, inst.universe);
    if (inst.profile.empty()) throw ValidationError("profile must contain at least one formula");
    for (const auto& f : inst.profile) check_in_universe(f, inst.universe);
    if (models_of(inst.constraints, inst.universe).empty())
        throw InconsistentFormulaError("integrity constraints are inconsistent");
    for (std::size_t i = 0; i < inst.profile.size(); ++i)
        if (models_of(inst.profile[i], inst.universe).empty())
            throw InconsistentFormulaError("profile entry " + std::to_string(i + 1) + " is inconsistent", i);
}

/// Models of mu paired with their distance vectors.
struct Candidates {
    ModelSet models;
    std::vector<DistanceVector> vectors;
};

inline Candidates candidates(const Instance& inst, const DistanceKind& kind) {
    validate(inst);
    ProfileDistances dist(kind, inst.profile, inst.universe);
    Candidates c;
    c.models = models_of(inst.constraints, inst.universe);
    c.vectors.reserve(c.models.size());
    for (const auto& m : c.models) c.vectors.push_back(dist(m));
    return c;
}

/// Candidates whose vectors aggregate each source: entry i is the sum of
/// the distances to the formulae of source i.
inline Candidates source_candidates(const Universe& u, const Formula& mu, const SourceProfile& sources,
                                    const DistanceKind& kind) {
    check_in_universe(mu, u);
    if (sources.empty()) throw ValidationError("at least one source is required");
    Profile flat;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (sources[i].empty()) throw ValidationError("source " + std::to_string(i + 1) + " is empty");
        for (const auto& f : sources[i]) {
            check_in_universe(f, u);
            flat.push_back(f);
            owner.push_back(i);
        }
    }
    Candidates c;
    c.models = models_of(mu, u);
    if (c.models.empty()) throw InconsistentFormulaError("integrity constraints are inconsistent");
    ProfileDistances dist(kind, flat, u);
    for (const auto& m : c.models) {
        auto per_formula = dist(m);
        DistanceVector v(sources.size(), 0);
        for (std::size_t k = 0; k < per_formula.size(); ++k) v[owner[k]] += per_formula[k];
        c.vectors.push_back(std::move(v));
    }
    return c;
}

/// Indices of the vectors with minimal weighted distance.
inline std::vector<std::size_t> minimal_indices(const std::vector<DistanceVector>& vectors, const WeightVector& w) {
    std::vector<std::size_t> out;
    std::optional<Rational> best;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        Rational v = weighted_distance(w, vectors[i]);
        if (!best || v < *best) {
            best = v;
            out.assign(1, i);
        } else if (v == *best) {
            out.push_back(i);
        }
    }
    return out;
}

/// Constraint vectors that matter for the minimality of `target`: distinct,
/// not componentwise >= target (implied by w > 0) and not componentwise >=
/// another kept vector (implied by that vector's constraint).
inline std::vector<DistanceVector> relevant_competitors(const DistanceVector& target,
                                                        const std::vector<DistanceVector>& vectors) {
    std::vector<DistanceVector> pool;
    for (const auto& v : vectors)
        if (!dominates(target, v)) pool.push_back(v);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<DistanceVector> out;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        bool implied = false;
        for (std::size_t j = 0; j < pool.size() && !implied; ++j)
            implied = j != i && strictly_dominates(pool[j], pool[i]);
        if (!implied) out.push_back(pool[i]);
    }
    return out;
}

/// Integer weight vector under which `target` is minimal among `vectors`,
/// or nothing when no positive weights make it minimal.
inline std::optional<WeightVector> positive_witness(const DistanceVector& target,
                                                    const std::vector<DistanceVector>& vectors) {
    auto sys = minimality_system(target, relevant_competitors(target, vectors));
    auto result = feasible(sys);
    if (!result) return std::nullopt;
    return integer_witness(*result.witness);
}

struct Selection {
    std::vector<std::size_t> indices;
    std::map<std::size_t, WeightVector> witnesses;
};

/// Selection under a scheme expansion. Finite schemes: union of the
/// per-vector minima, each index witnessed by the first vector selecting it.
/// All positive: one feasibility query per distinct distance vector.
inline Selection select(const std::vector<DistanceVector>& vectors, const SchemeExpansion& scheme) {
    Selection sel;
    if (scheme.all_positive) {
        std::map<DistanceVector, std::optional<WeightVector>> memo;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            auto it = memo.find(vectors[i]);
            if (it == memo.end()) it = memo.emplace(vectors[i], positive_witness(vectors[i], vectors)).first;
            if (it->second) {
                sel.indices.push_back(i);
                sel.witnesses.emplace(i, *it->second);
            }
        }
        return sel;
    }
    for (const auto& w : scheme.vectors)
        for (auto i : minimal_indices(vectors, w)) sel.witnesses.emplace(i, w);
    for (const auto& [i, w] : sel.witnesses) sel.indices.push_back(i);
    return sel;
}

inline MergeResult to_result(const Candidates& c, const Selection& sel) {
    MergeResult r;
    for (auto i : sel.indices) r.models.push_back(c.models[i]);
    for (const auto& [i, w] : sel.witnesses) r.witnesses.emplace(c.models[i], w);
    return r;
}

inline ModelSet merge_fixed(const Instance& inst, const WeightVector& w, const DistanceKind& kind) {
    if (w.size() != inst.profile.size()) throw ValidationError("weight vector length differs from profile length");
    auto c = candidates(inst, kind);
    ModelSet out;
    for (auto i : minimal_indices(c.vectors, w)) out.push_back(c.models[i]);
    return out;
}

inline void require_model_of_constraints(const Instance& inst, const Model& m) {
    if (m.width() != inst.universe.size()) throw ValidationError("model does not match universe");
    if (!inst.constraints.evaluate(m)) throw ValidationError("model does not satisfy the integrity constraints");
}

/// An integer weight vector making `m` minimal among the models of mu, if
/// one exists.
inline std::optional<WeightVector> minimal_for_some_positive(const Model& m, const Instance& inst,
                                                             const DistanceKind& kind) {
    require_model_of_constraints(inst, m);
    auto c = candidates(inst, kind);
    auto target = c.vectors[static_cast<std::size_t>(std::lower_bound(c.models.begin(), c.models.end(), m) -
                                                     c.models.begin())];
    return positive_witness(target, c.vectors);
}

inline MergeResult merge_scheme(const Instance& inst, const WeightScheme& s, const DistanceKind& kind) {
    auto c = candidates(inst, kind);
    auto resolved = s.resolve(kind, inst.universe.size(), inst.profile.size());
    return to_result(c, select(c.vectors, expand_scheme(resolved, inst.profile.size())));
}

/// Models of mu whose distance vector no other model strictly dominates.
inline ModelSet undominated(const Instance& inst, const DistanceKind& kind) {
    auto c = candidates(inst, kind);
    ModelSet out;
    for (std::size_t i = 0; i < c.models.size(); ++i) {
        bool beaten = false;
        for (std::size_t j = 0; j < c.models.size() && !beaten; ++j)
            beaten = strictly_dominates(c.vectors[j], c.vectors[i]);
        if (!beaten) out.push_back(c.models[i]);
    }
    return out;
}

/// For a model excluded under all positive weights, a smallest set of at
/// most m other models of mu that already excludes it; nothing when the
/// model is selected. Subsets are scanned by size, then lexicographically
/// over one representative model per distinct distance vector.
inline std::optional<ModelSet> excluding_subset(const Model& m, const Instance& inst, const DistanceKind& kind) {
    require_model_of_constraints(inst, m);
    auto c = candidates(inst, kind);
    const auto pos = static_cast<std::size_t>(std::lower_bound(c.models.begin(), c.models.end(), m) -
                                              c.models.begin());
    const DistanceVector& target = c.vectors[pos];
    if (positive_witness(target, c.vectors)) return std::nullopt;

    std::vector<std::size_t> reps;
    {
        std::map<DistanceVector, std::size_t> first;
        for (std::size_t i = 0; i < c.models.size(); ++i)
            if (c.vectors[i] != target) first.emplace(c.vectors[i], i);
        for (const auto& [v, i] : first) reps.push_back(i);
        std::sort(reps.begin(), reps.end());
    }
    const std::size_t m_len = inst.profile.size();
    for (std::size_t size = 1; size <= std::min(m_len, reps.size()); ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<DistanceVector> others;
            for (auto p : pick) others.push_back(c.vectors[reps[p]]);
            if (!feasible(minimality_system(target, others))) {
                ModelSet out;
                for (auto p : pick) out.push_back(c.models[reps[p]]);
                return out;
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && pick[k - 1] == reps.size() - size + k - 1) --k;
            if (k == 0) break;
            ++pick[k - 1];
            for (std::size_t j = k; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw Error("no excluding subset of at most " + std::to_string(m_len) + " models found");
}

/// Minimizes sum_i w_i * sum_{F in S_i} d(I, F) over the models of mu.
inline MergeResult multi_source_merge(const Universe& u, const Formula& mu, const SourceProfile& sources,
                                      const WeightScheme& s, const DistanceKind& kind) {
    auto c = source_candidates(u, mu, sources, kind);
    auto resolved = s.resolve(kind, u.size(), sources.size());
    return to_result(c, select(c.vectors, expand_scheme(resolved, sources.size())));
}

}  // namespace wmerge
