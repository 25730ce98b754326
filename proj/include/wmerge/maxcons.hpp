#pragma once

// Maximal subsets of the profile consistent with the integrity constraints.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"
#include "wmerge/merge.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wmerge {

/// 0-based profile indices; mu is implicitly part of every maxcon.
using Maxcon = std::vector<std::size_t>;

namespace detail {

// For each model of mu, the set of satisfied profile entries as a bitmask.
inline std::vector<std::uint64_t> subsat_masks(const Instance& inst) {
    check_in_universe(inst.constraints, inst.universe);
    if (inst.profile.size() > 63) throw ResourceLimitError("maxcons supports at most 63 profile entries");
    for (const auto& f : inst.profile) check_in_universe(f, inst.universe);
    auto mu = models_of(inst.constraints, inst.universe);
    if (mu.empty()) throw InconsistentFormulaError("integrity constraints are inconsistent");
    std::vector<std::uint64_t> masks;
    masks.reserve(mu.size());
    for (const auto& m : mu) {
        std::uint64_t s = 0;
        for (auto i : subsat(m, inst.profile)) s |= std::uint64_t{1} << i;
        masks.push_back(s);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    return masks;
}

}  // namespace detail

/// All maximal index sets S such that mu and the entries in S are jointly
/// consistent, sorted lexicographically.
inline std::vector<Maxcon> maxcons(const Instance& inst) {
    const auto masks = detail::subsat_masks(inst);
    const std::size_t m = inst.profile.size();
    // A subset S is consistent with mu iff some mu-model satisfies all of S,
    // so maxcons are exactly the inclusion-maximal subsat masks.
    std::vector<std::uint64_t> maximal;
    for (auto s : masks) {
        bool covered = false;
        for (auto t : masks)
            if (t != s && (s & t) == s) covered = true;
        if (!covered) maximal.push_back(s);
    }
    std::vector<Maxcon> out;
    for (auto s : maximal) {
        Maxcon idx;
        for (std::size_t i = 0; i < m; ++i)
            if (s >> i & 1) idx.push_back(i);
        out.push_back(std::move(idx));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Models of mu satisfying every entry of at least one maxcon.
inline ModelSet maxcons_disjunction(const Instance& inst) {
    const auto sets = maxcons(inst);
    ModelSet out;
    for (const auto& m : models_of(inst.constraints, inst.universe)) {
        for (const auto& s : sets) {
            if (std::all_of(s.begin(), s.end(), [&](std::size_t i) { return inst.profile[i].evaluate(m); })) {
                out.push_back(m);
                break;
            }
        }
    }
    return out;
}

}  // namespace wmerge
