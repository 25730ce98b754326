#pragma once

// Model-to-model, model-to-formula and model-to-profile distances.

#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace wmerge {

using DistanceVector = std::vector<std::int64_t>;
using Profile = std::vector<Formula>;

/// A model distance that factors through the Hamming count: drastic,
/// Hamming, or a table remapping Hamming counts.
class DistanceKind {
public:
    enum class Tag { Drastic, Hamming, Table };

    static DistanceKind drastic() { return DistanceKind(Tag::Drastic, {}, 0); }
    static DistanceKind hamming() { return DistanceKind(Tag::Hamming, {}, 0); }

    /// `values[k]` is the distance for Hamming count k; counts past the end
    /// map to `above`. Requires values[0] == 0 and every other value > 0.
    static DistanceKind table(std::vector<std::int64_t> values, std::int64_t above) {
        if (values.empty() || values.front() != 0)
            throw ValidationError("distance table must map 0 to 0");
        for (std::size_t k = 1; k < values.size(); ++k)
            if (values[k] <= 0) throw ValidationError("distance table must be positive on non-zero counts");
        if (above <= 0) throw ValidationError("distance table default must be positive");
        return DistanceKind(Tag::Table, std::move(values), above);
    }

    Tag tag() const noexcept { return tag_; }
    const std::vector<std::int64_t>& table_values() const noexcept { return table_; }
    std::int64_t table_default() const noexcept { return above_; }

    std::int64_t from_hamming(std::size_t count) const {
        switch (tag_) {
        case Tag::Drastic: return count == 0 ? 0 : 1;
        case Tag::Hamming: return static_cast<std::int64_t>(count);
        case Tag::Table: return count < table_.size() ? table_[count] : above_;
        }
        return 0;
    }

    /// Largest model distance attainable over `n` variables.
    std::int64_t max_value(std::size_t n) const {
        std::int64_t best = 0;
        for (std::size_t k = 0; k <= n; ++k) best = std::max(best, from_hamming(k));
        return best;
    }

    /// Number of distinct values on Hamming counts 0..n.
    std::size_t codomain_size(std::size_t n) const {
        std::vector<std::int64_t> vals;
        for (std::size_t k = 0; k <= n; ++k) vals.push_back(from_hamming(k));
        std::sort(vals.begin(), vals.end());
        return static_cast<std::size_t>(std::unique(vals.begin(), vals.end()) - vals.begin());
    }

    std::string name() const {
        switch (tag_) {
        case Tag::Drastic: return "drastic";
        case Tag::Hamming: return "hamming";
        case Tag::Table: break;
        }
        std::string s = "table[";
        for (std::size_t k = 0; k < table_.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(table_[k]);
        }
        return s + ";" + std::to_string(above_) + "]";
    }

    friend bool operator==(const DistanceKind&, const DistanceKind&) = default;

private:
    DistanceKind(Tag t, std::vector<std::int64_t> values, std::int64_t above)
        : tag_(t), table_(std::move(values)), above_(above) {}

    Tag tag_;
    std::vector<std::int64_t> table_;
    std::int64_t above_;
};

inline std::size_t hamming_count(const Model& a, const Model& b) {
    if (a.width() != b.width()) throw ValidationError("models belong to different universes");
    return static_cast<std::size_t>(std::popcount(a.bits() ^ b.bits()));
}

inline std::int64_t model_distance(const DistanceKind& kind, const Model& a, const Model& b) {
    return kind.from_hamming(hamming_count(a, b));
}

/// Minimal distance from `m` to a non-empty set of models.
inline std::int64_t set_distance(const DistanceKind& kind, const Model& m, const ModelSet& models) {
    if (models.empty()) throw InconsistentFormulaError("distance to an unsatisfiable formula is undefined");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& j : models) {
        best = std::min(best, model_distance(kind, m, j));
        if (best == 0) break;
    }
    return best;
}

inline std::int64_t formula_distance(const DistanceKind& kind, const Model& m, const Formula& f, const Universe& u) {
    return set_distance(kind, m, models_of(f, u));
}

/// Distance vectors to a fixed profile. The model sets of the profile's
/// formulae are enumerated once at construction.
class ProfileDistances {
public:
    ProfileDistances(DistanceKind kind, const Profile& profile, const Universe& u) : kind_(std::move(kind)) {
        if (profile.empty()) throw ValidationError("profile must contain at least one formula");
        entries_.reserve(profile.size());
        for (std::size_t i = 0; i < profile.size(); ++i) {
            auto ms = models_of(profile[i], u);
            if (ms.empty())
                throw InconsistentFormulaError("profile entry " + std::to_string(i + 1) + " is inconsistent", i);
            entries_.push_back(std::move(ms));
        }
    }

    std::size_t size() const noexcept { return entries_.size(); }
    const DistanceKind& kind() const noexcept { return kind_; }
    const ModelSet& models(std::size_t i) const { return entries_.at(i); }

    DistanceVector operator()(const Model& m) const {
        DistanceVector d(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) d[i] = set_distance(kind_, m, entries_[i]);
        return d;
    }

private:
    DistanceKind kind_;
    std::vector<ModelSet> entries_;
};

inline DistanceVector profile_distance_vector(const DistanceKind& kind, const Model& m, const Profile& e,
                                              const Universe& u) {
    return ProfileDistances(kind, e, u)(m);
}

/// Indices (0-based) of the profile entries satisfied by `m`.
inline std::vector<std::size_t> subsat(const Model& m, const Profile& e) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i].evaluate(m)) out.push_back(i);
    return out;
}

/// Whether d(I,K) + d(K,J) >= d(I,J) holds for all models over `n`
/// variables. Decided on Hamming-count triples (a, b, c) realizable by
/// three models: |a-b| <= c <= a+b, a+b+c even, a+b+c <= 2n.
inline bool satisfies_triangle_inequality(const DistanceKind& kind, std::size_t n) {
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b <= n; ++b)
            for (std::size_t c = 0; c <= n; ++c) {
                const std::size_t lo = a > b ? a - b : b - a;
                if (c < lo || c > a + b || (a + b + c) % 2 != 0 || a + b + c > 2 * n) continue;
                if (kind.from_hamming(a) + kind.from_hamming(b) < kind.from_hamming(c)) return false;
            }
    return true;
}

}  // namespace wmerge
