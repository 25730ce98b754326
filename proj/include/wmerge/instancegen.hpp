#pragma once

// Instance generators: realizing given Hamming distance vectors, the
// replicated-block family, and seeded random instances.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"
#include "wmerge/merge.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace wmerge {

/// Distance vectors of a common length m.
struct VectorSpec {
    std::vector<DistanceVector> vectors;
};

namespace detail {

inline void check_spec(const VectorSpec& spec) {
    if (spec.vectors.empty()) throw ValidationError("vector spec must not be empty");
    const auto m = spec.vectors.front().size();
    if (m == 0) throw ValidationError("distance vectors must not be empty");
    for (const auto& v : spec.vectors) {
        if (v.size() != m) throw ValidationError("distance vectors differ in length");
        for (auto x : v)
            if (x < 0) throw ValidationError("distances must be non-negative");
    }
}

// Term of block-structured variables: in block i the first v[i] variables
// are false, the rest true. `offset` is the index of the first variable.
inline Formula block_term(const DistanceVector& v, std::size_t n, std::size_t offset) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto x = Formula::variable(offset + i * n + j);
            lits.push_back(static_cast<std::int64_t>(j) < v[i] ? !x : x);
        }
    return Formula::all_of(lits);
}

inline Formula block_conjunction(std::size_t n, std::size_t first) {
    std::vector<Formula> xs;
    for (std::size_t j = 0; j < n; ++j) xs.push_back(Formula::variable(first + j));
    return Formula::all_of(xs);
}

inline std::vector<DistanceVector> distinct_vectors(const VectorSpec& spec) {
    auto vs = spec.vectors;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// The Hamming distance vectors of mu's models, sorted.
inline std::vector<DistanceVector> realized_vectors(const Instance& inst) {
    auto c = candidates(inst, DistanceKind::hamming());
    auto vs = c.vectors;
    std::sort(vs.begin(), vs.end());
    return vs;
}

}  // namespace detail

/// Instance whose mu-models have exactly the given Hamming distance
/// vectors. Variables x{i}_{j}: block i (1-based) holds n variables, n being
/// the largest entry; F_i is the conjunction of block i.
inline Instance realize(const VectorSpec& spec) {
    detail::check_spec(spec);
    const std::size_t m = spec.vectors.front().size();
    std::int64_t top = 1;
    for (const auto& v : spec.vectors) top = std::max(top, *std::max_element(v.begin(), v.end()));
    const auto n = static_cast<std::size_t>(top);
    if (n * m > kMaxUniverseSize) throw ResourceLimitError("realized instance would need more than 31 variables");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) names.push_back("x" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    Universe u(names);

    const auto vs = detail::distinct_vectors(spec);
    std::vector<Formula> terms;
    for (const auto& v : vs) terms.push_back(detail::block_term(v, n, 0));
    Profile profile;
    for (std::size_t i = 0; i < m; ++i) profile.push_back(detail::block_conjunction(n, i * n));
    Instance inst{u, Formula::any_of(terms), profile};

    if (detail::realized_vectors(inst) != vs) throw Error("internal error: realized distance vectors differ from the requested ones");
    return inst;
}

/// k copies of the instance realizing {[3,0],[1,1],[0,3]} on disjoint
/// six-variable blocks named b{block}_x{i}_{j}. Profile length 2k, 3^k
/// models of mu.
inline Instance replicated_blocks(int k) {
    if (k < 1 || k > 3) throw ValidationError("replicated_blocks supports 1 <= k <= 3");
    const std::vector<DistanceVector> base{{3, 0}, {1, 1}, {0, 3}};
    std::vector<std::string> names;
    std::vector<Formula> mus;
    Profile profile;
    for (int b = 0; b < k; ++b) {
        const std::size_t offset = static_cast<std::size_t>(b) * 6;
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 3; ++j)
                names.push_back("b" + std::to_string(b + 1) + "_x" + std::to_string(i) + "_" + std::to_string(j));
        std::vector<Formula> terms;
        for (const auto& v : base) terms.push_back(detail::block_term(v, 3, offset));
        mus.push_back(Formula::any_of(terms));
        profile.push_back(detail::block_conjunction(3, offset));
        profile.push_back(detail::block_conjunction(3, offset + 3));
    }
    return Instance{Universe(names), Formula::all_of(mus), profile};
}

/// xoshiro256** seeded through splitmix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        for (auto& s : s_) {
            seed += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = seed;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            s = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, bound), by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ValidationError("empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

/// Probability num/den with 0 < num <= den.
struct Density {
    std::uint64_t num = 1;
    std::uint64_t den = 2;
};

inline constexpr int kRandomRetries = 1000;

/// Seeded instance over variables x1..xn: mu and every F_i are random
/// non-empty model sets (each model kept with probability `density`),
/// written in disjunctive form.
inline Instance random_instance(std::size_t n, std::size_t m, std::uint64_t seed, Density density = {}) {
    if (n < 1 || n > 12) throw ValidationError("random_instance needs 1 <= n <= 12");
    if (m < 1 || m > 5) throw ValidationError("random_instance needs 1 <= m <= 5");
    if (density.num == 0 || density.den == 0 || density.num > density.den)
        throw ValidationError("density must lie in (0, 1]");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    Universe u(names);
    const auto everything = all_models(u);
    Xoshiro256 rng(seed);
    auto draw = [&]() {
        for (int attempt = 0; attempt < kRandomRetries; ++attempt) {
            ModelSet chosen;
            for (const auto& mdl : everything)
                if (rng.below(density.den) < density.num) chosen.push_back(mdl);
            if (!chosen.empty()) return formula_from_models(chosen, u);
        }
        throw Error("random_instance: retries exhausted drawing a consistent formula");
    };
    Formula mu = draw();
    Profile profile;
    for (std::size_t i = 0; i < m; ++i) profile.push_back(draw());
    return Instance{u, mu, profile};
}

}  // namespace wmerge
