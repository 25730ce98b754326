#pragma once

// Weight vectors, weight schemes, dominance and scalar-product aggregation.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wmerge {

/// Strictly positive rational weights, one per source.
class WeightVector {
public:
    WeightVector() = default;

    explicit WeightVector(std::vector<Rational> w) : w_(std::move(w)) {
        for (const auto& x : w_)
            if (x <= 0) throw ValidationError("weights must be strictly positive");
    }

    WeightVector(std::initializer_list<std::int64_t> ints) {
        w_.reserve(ints.size());
        for (auto x : ints) w_.emplace_back(x);
        for (const auto& x : w_)
            if (x <= 0) throw ValidationError("weights must be strictly positive");
    }

    static WeightVector uniform(std::size_t m, std::int64_t value = 1) {
        return WeightVector(std::vector<Rational>(m, Rational(value)));
    }

    std::size_t size() const noexcept { return w_.size(); }
    const Rational& operator[](std::size_t i) const { return w_[i]; }
    const std::vector<Rational>& values() const noexcept { return w_; }

    /// True when every entry is an integer.
    bool is_integral() const {
        for (const auto& x : w_)
            if (denominator_of(x) != 1) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (i) s += ',';
            s += w_[i].str();
        }
        return s + "]";
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
    friend bool operator<(const WeightVector& a, const WeightVector& b) { return a.w_ < b.w_; }

private:
    std::vector<Rational> w_;
};

inline Rational weighted_distance(const WeightVector& w, const DistanceVector& d) {
    if (w.size() != d.size()) throw ValidationError("weight and distance vectors differ in length");
    Rational total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) total += w[i] * d[i];
    return total;
}

/// Componentwise a <= b.
inline bool dominates(const DistanceVector& a, const DistanceVector& b) {
    if (a.size() != b.size()) throw ValidationError("distance vectors differ in length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool strictly_dominates(const DistanceVector& a, const DistanceVector& b) {
    return dominates(a, b) && a != b;
}

/// Set of admissible weight vectors.
class WeightScheme {
public:
    enum class Tag { Equal, Expert, AllPositive, Explicit };

    static WeightScheme equal() { return WeightScheme(Tag::Equal); }
    static WeightScheme all_positive() { return WeightScheme(Tag::AllPositive); }

    /// One-expert family; without `a` the weight is chosen from the distance
    /// bound at merge time (see `resolve`).
    static WeightScheme expert(std::optional<std::int64_t> a = std::nullopt) {
        if (a && *a < 2) throw ValidationError("expert weight must be at least 2");
        WeightScheme s(Tag::Expert);
        s.expert_ = a;
        return s;
    }

    static WeightScheme list(std::vector<WeightVector> vectors) {
        if (vectors.empty()) throw ValidationError("explicit weight list must not be empty");
        for (const auto& v : vectors)
            if (v.size() != vectors.front().size())
                throw ValidationError("explicit weight vectors differ in length");
        WeightScheme s(Tag::Explicit);
        s.list_ = std::move(vectors);
        return s;
    }

    Tag tag() const noexcept { return tag_; }
    std::optional<std::int64_t> expert_weight() const noexcept { return expert_; }
    const std::vector<WeightVector>& vectors() const noexcept { return list_; }

    /// Fills in the default expert weight: max distance * m + 1, i.e. m+1
    /// for drastic and n*m+1 for Hamming.
    WeightScheme resolve(const DistanceKind& kind, std::size_t n, std::size_t m) const {
        if (tag_ != Tag::Expert || expert_) return *this;
        auto a = kind.max_value(n) * static_cast<std::int64_t>(m) + 1;
        return expert(std::max<std::int64_t>(a, 2));
    }

    std::string str() const {
        switch (tag_) {
        case Tag::Equal: return "equal";
        case Tag::AllPositive: return "all";
        case Tag::Expert: return expert_ ? "expert:" + std::to_string(*expert_) : "expert";
        case Tag::Explicit: break;
        }
        std::string s = "list:";
        for (std::size_t i = 0; i < list_.size(); ++i) {
            if (i) s += ';';
            for (std::size_t j = 0; j < list_[i].size(); ++j) {
                if (j) s += ',';
                s += list_[i][j].str();
            }
        }
        return s;
    }

    friend bool operator==(const WeightScheme&, const WeightScheme&) = default;

private:
    explicit WeightScheme(Tag t) : tag_(t) {}

    Tag tag_;
    std::optional<std::int64_t> expert_;
    std::vector<WeightVector> list_;
};

/// Result of expanding a scheme for a profile of length m: either a finite
/// list, or the symbolic set of all positive vectors.
struct SchemeExpansion {
    bool all_positive = false;
    std::vector<WeightVector> vectors;
};

inline SchemeExpansion expand_scheme(const WeightScheme& s, std::size_t m) {
    if (m == 0) throw ValidationError("profile length must be positive");
    SchemeExpansion out;
    switch (s.tag()) {
    case WeightScheme::Tag::Equal: out.vectors.push_back(WeightVector::uniform(m)); break;
    case WeightScheme::Tag::AllPositive: out.all_positive = true; break;
    case WeightScheme::Tag::Expert: {
        if (!s.expert_weight()) throw ValidationError("expert weight unresolved; call resolve() first");
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rational> w(m, Rational(1));
            w[i] = *s.expert_weight();
            out.vectors.emplace_back(std::move(w));
        }
        break;
    }
    case WeightScheme::Tag::Explicit:
        for (const auto& v : s.vectors())
            if (v.size() != m) throw ValidationError("explicit weight vector length differs from profile length");
        out.vectors = s.vectors();
        break;
    }
    return out;
}

/// Whether every permutation of every listed vector is also listed.
inline bool is_permutation_closed(const SchemeExpansion& e) {
    if (e.all_positive) return true;
    for (const auto& v : e.vectors) {
        auto vals = v.values();
        std::sort(vals.begin(), vals.end());
        do {
            WeightVector p(vals);
            if (std::find(e.vectors.begin(), e.vectors.end(), p) == e.vectors.end()) return false;
        } while (std::next_permutation(vals.begin(), vals.end()));
    }
    return true;
}

/// CLI syntax: `equal`, `expert`, `expert:A`, `all`, `list:2,1;1,2`.
inline WeightScheme parse_scheme(std::string_view text) {
    if (text == "equal") return WeightScheme::equal();
    if (text == "all") return WeightScheme::all_positive();
    if (text == "expert") return WeightScheme::expert();
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) throw ValidationError("empty number in scheme '" + std::string(text) + "'");
        std::int64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw ValidationError("invalid number '" + std::string(s) + "' in scheme");
            v = v * 10 + (c - '0');
            if (v > (std::int64_t{1} << 40)) throw ValidationError("weight too large in scheme");
        }
        return v;
    };
    if (text.starts_with("expert:")) return WeightScheme::expert(parse_int(text.substr(7)));
    if (text.starts_with("list:")) {
        std::vector<WeightVector> vectors;
        std::string body(text.substr(5));
        std::stringstream rows(body);
        std::string row;
        while (std::getline(rows, row, ';')) {
            std::vector<Rational> w;
            std::stringstream cells(row);
            std::string cell;
            while (std::getline(cells, cell, ',')) w.emplace_back(parse_int(cell));
            if (w.empty()) throw ValidationError("empty weight vector in scheme");
            vectors.emplace_back(std::move(w));
        }
        return WeightScheme::list(std::move(vectors));
    }
    throw ValidationError("unknown weight scheme '" + std::string(text) + "'");
}

}  // namespace wmerge
