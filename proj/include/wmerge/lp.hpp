#pragma once

// Exact feasibility of linear inequality systems over the rationals by
// Fourier-Motzkin elimination, with strictness tracking and witness
// extraction by back-substitution.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/rational.hpp"
#include "wmerge/weights.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wmerge {

enum class Relation { LessEqual, Less, Equal };

struct LinConstraint {
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs = 0;

    bool holds_at(const std::vector<Rational>& point) const {
        if (point.size() != coefficients.size()) throw ValidationError("point dimension mismatch");
        Rational lhs = 0;
        for (std::size_t i = 0; i < point.size(); ++i) lhs += coefficients[i] * point[i];
        switch (relation) {
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::Less: return lhs < rhs;
        case Relation::Equal: return lhs == rhs;
        }
        return false;
    }
};

class LinSystem {
public:
    explicit LinSystem(std::size_t dimension) : dim_(dimension) {
        if (dimension == 0) throw ValidationError("system dimension must be positive");
    }

    void add(LinConstraint c) {
        if (c.coefficients.size() != dim_) throw ValidationError("constraint dimension mismatch");
        constraints_.push_back(std::move(c));
    }

    void add(std::vector<Rational> coefficients, Relation rel, Rational rhs) {
        add(LinConstraint{std::move(coefficients), rel, std::move(rhs)});
    }

    /// x_var >= 1
    void add_lower_bound_one(std::size_t var) {
        std::vector<Rational> c(dim_, Rational(0));
        c.at(var) = -1;
        add(std::move(c), Relation::LessEqual, Rational(-1));
    }

    std::size_t dimension() const noexcept { return dim_; }
    const std::vector<LinConstraint>& constraints() const noexcept { return constraints_; }

    bool satisfied_by(const std::vector<Rational>& point) const {
        return std::all_of(constraints_.begin(), constraints_.end(),
                           [&](const LinConstraint& c) { return c.holds_at(point); });
    }

private:
    std::size_t dim_;
    std::vector<LinConstraint> constraints_;
};

/// Infeasible, or a point satisfying every constraint exactly.
struct Feasibility {
    std::optional<std::vector<Rational>> witness;

    bool feasible() const noexcept { return witness.has_value(); }
    explicit operator bool() const noexcept { return feasible(); }
};

inline constexpr std::size_t kDefaultEliminationLimit = 1'000'000;

namespace detail {

// a.x <= b, or a.x < b when strict. `origins` lists the input inequalities
// this one was combined from, sorted.
struct Ineq {
    std::vector<Rational> a;
    Rational b;
    bool strict = false;
    std::vector<std::size_t> origins;
};

inline std::vector<std::size_t> merge_origins(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    std::vector<std::size_t> out;
    out.reserve(x.size() + y.size());
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

// Scale so that the leading non-zero coefficient has absolute value 1.
inline void canonicalize(Ineq& q) {
    for (const auto& c : q.a) {
        if (c != 0) {
            Rational s = c < 0 ? Rational(-c) : c;
            for (auto& x : q.a) x /= s;
            q.b /= s;
            return;
        }
    }
}

// Drops exact duplicates, keeping the copy with the fewest origins. Looser
// copies of the same left-hand side are kept: replacing them by a tighter
// one with more origins would defeat the origin-count pruning below.
inline std::vector<Ineq> prune(std::vector<Ineq> in) {
    std::map<std::pair<std::vector<Rational>, std::pair<Rational, bool>>, Ineq> best;
    for (auto& q : in) {
        canonicalize(q);
        auto key = std::make_pair(q.a, std::make_pair(q.b, q.strict));
        auto it = best.find(key);
        if (it == best.end())
            best.emplace(std::move(key), std::move(q));
        else if (q.origins.size() < it->second.origins.size())
            it->second = std::move(q);
    }
    std::vector<Ineq> out;
    out.reserve(best.size());
    for (auto& [k, q] : best) out.push_back(std::move(q));
    return out;
}

inline bool trivially_holds(const Ineq& q) { return q.strict ? Rational(0) < q.b : Rational(0) <= q.b; }

inline bool all_zero(const std::vector<Rational>& a, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i)
        if (a[i] != 0) return false;
    return true;
}

}  // namespace detail

/// Decides feasibility exactly. On success the witness is produced by
/// back-substitution, setting each variable to the midpoint of its
/// feasible interval, or to its single bound (plus one when that bound is
/// strict), or to 0 when unconstrained.
inline Feasibility feasible(const LinSystem& s, std::size_t limit = kDefaultEliminationLimit) {
    using detail::Ineq;
    const std::size_t dim = s.dimension();

    std::vector<Ineq> current;
    for (const auto& c : s.constraints()) {
        switch (c.relation) {
        case Relation::LessEqual: current.push_back({c.coefficients, c.rhs, false, {}}); break;
        case Relation::Less: current.push_back({c.coefficients, c.rhs, true, {}}); break;
        case Relation::Equal: {
            current.push_back({c.coefficients, c.rhs, false, {}});
            std::vector<Rational> neg(c.coefficients);
            for (auto& x : neg) x = -x;
            current.push_back({std::move(neg), -c.rhs, false, {}});
            break;
        }
        }
    }
    for (std::size_t i = 0; i < current.size(); ++i) current[i].origins = {i};

    // stages[k] holds the system over variables 0..k-1 (k = dim initially).
    std::vector<std::vector<Ineq>> stages(dim + 1);
    stages[dim] = detail::prune(std::move(current));

    for (std::size_t k = dim; k > 0; --k) {
        const std::size_t var = k - 1;
        const std::size_t eliminated = dim - var;
        std::vector<Ineq> lower, upper, rest;
        for (const auto& q : stages[k]) {
            if (q.a[var] > 0)
                upper.push_back(q);
            else if (q.a[var] < 0)
                lower.push_back(q);
            else
                rest.push_back(q);
        }
        if (rest.size() + lower.size() * upper.size() > limit)
            throw ResourceLimitError("Fourier-Motzkin elimination exceeded " + std::to_string(limit) +
                                     " constraints");
        std::vector<Ineq> next = std::move(rest);
        // upper: a.x + p*x_var <= b (p > 0); lower: c.x - q*x_var <= d (q > 0).
        for (const auto& u : upper) {
            for (const auto& l : lower) {
                const Rational p = u.a[var];
                const Rational q = -l.a[var];
                Ineq combined;
                combined.a.resize(dim);
                for (std::size_t i = 0; i < dim; ++i) combined.a[i] = q * u.a[i] + p * l.a[i];
                combined.a[var] = 0;
                combined.b = q * u.b + p * l.b;
                combined.strict = u.strict || l.strict;
                combined.origins = detail::merge_origins(u.origins, l.origins);
                // Chernikov: after eliminating e variables, an inequality
                // built from more than e+1 inputs is implied by the others.
                if (combined.origins.size() > eliminated + 1) continue;
                next.push_back(std::move(combined));
            }
        }
        // Constant constraints are decided now.
        std::vector<Ineq> kept;
        kept.reserve(next.size());
        for (auto& q : next) {
            if (detail::all_zero(q.a, dim)) {
                if (!detail::trivially_holds(q)) return Feasibility{};
                continue;
            }
            kept.push_back(std::move(q));
        }
        stages[var] = detail::prune(std::move(kept));
    }
    for (const auto& q : stages[0])
        if (!detail::trivially_holds(q)) return Feasibility{};

    std::vector<Rational> x(dim, Rational(0));
    for (std::size_t var = 0; var < dim; ++var) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& q : stages[var + 1]) {
            const Rational coef = q.a[var];
            if (coef == 0) continue;
            Rational rest = q.b;
            for (std::size_t i = 0; i < var; ++i) rest -= q.a[i] * x[i];
            const Rational bound = rest / coef;
            if (coef > 0) {
                if (!hi || bound < *hi || (bound == *hi && q.strict)) {
                    hi = bound;
                    hi_strict = q.strict;
                }
            } else {
                if (!lo || bound > *lo || (bound == *lo && q.strict)) {
                    lo = bound;
                    lo_strict = q.strict;
                }
            }
        }
        if (lo && hi)
            x[var] = (*lo + *hi) / 2;
        else if (lo)
            x[var] = lo_strict ? *lo + 1 : *lo;
        else if (hi)
            x[var] = hi_strict ? *hi - 1 : *hi;
        else
            x[var] = 0;
    }
    if (!s.satisfied_by(x)) throw Error("internal error: Fourier-Motzkin witness fails verification");
    return Feasibility{std::move(x)};
}

/// Weights w >= 1 under which a model at `target` is no worse than a model
/// at each of `others`: w.(target - other) <= 0.
inline LinSystem minimality_system(const DistanceVector& target, const std::vector<DistanceVector>& others) {
    LinSystem s(target.size());
    for (const auto& o : others) {
        if (o.size() != target.size()) throw ValidationError("distance vectors differ in length");
        std::vector<Rational> c(target.size());
        for (std::size_t i = 0; i < target.size(); ++i) c[i] = target[i] - o[i];
        s.add(std::move(c), Relation::LessEqual, Rational(0));
    }
    for (std::size_t i = 0; i < target.size(); ++i) s.add_lower_bound_one(i);
    return s;
}

/// Clears denominators: multiplies by the lcm of all denominators.
inline WeightVector integer_witness(const std::vector<Rational>& w) {
    BigInt l = 1;
    for (const auto& x : w) {
        if (x <= 0) throw ValidationError("witness entries must be positive");
        l = boost::multiprecision::lcm(l, denominator_of(x));
    }
    std::vector<Rational> out;
    out.reserve(w.size());
    for (const auto& x : w) out.emplace_back(x * l);
    return WeightVector(std::move(out));
}

}  // namespace wmerge
