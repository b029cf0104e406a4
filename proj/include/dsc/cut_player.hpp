#pragma once

// The cut player: a lazy random walk over the matching sequence, projected
// onto a random direction orthogonal to the all-ones vector, split at the
// median.
//
// The walk matrix P has P[i][j] = Pr[a particle started at j is at i]. Row i
// is the vector of arrival probabilities at i. Adding a matching arc (i, j)
// replaces row j by the average of the old rows i and j; all rows are read
// from the previous round (the update is simultaneous).

#include "dsc/error.hpp"
#include "dsc/graph.hpp"
#include "dsc/matching.hpp"
#include "dsc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace dsc {

/// Uniform random unit vector in the hyperplane orthogonal to (1, ..., 1):
/// a standard normal sample, mean-subtracted and normalized.
template <class Urbg>
std::vector<double> sample_orthogonal_unit_vector(std::size_t n, Urbg& rng) {
    if (n < 2) throw Error(Errc::invalid_graph, "orthogonal direction needs n >= 2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> r(n);
    for (;;) {
        for (double& x : r) x = gauss(rng);
        const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(n);
        for (double& x : r) x -= mean;
        const double norm = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        if (norm < 1e-9) continue;  // measure-zero degenerate draw
        for (double& x : r) x /= norm;
        return r;
    }
}

struct ProjectionVector {
    std::vector<double> u;          // u_i = P_i(t) . r
    std::vector<double> direction;  // r
};

/// Projects the walk onto r without materializing P: start from u = r and
/// replay each matching with a double-buffered average. O(n) per matching.
inline ProjectionVector replay_walk_projection(std::span<const double> r,
                                               std::span<const DirectedPerfectMatching> matchings) {
    ProjectionVector pv{{r.begin(), r.end()}, {r.begin(), r.end()}};
    std::vector<double> next(r.size());
    for (const auto& m : matchings) {
        if (m.num_vertices != r.size())
            throw Error(Errc::mismatched_vertex_count, "matching size differs from direction length");
        const auto pred = predecessor_map(m);
        for (std::size_t j = 0; j < pv.u.size(); ++j) next[j] = 0.5 * (pv.u[pred[j]] + pv.u[j]);
        pv.u.swap(next);
    }
    return pv;
}

struct Bisection {
    std::vector<Vertex> low;   // the n/2 smallest projections
    std::vector<Vertex> high;  // the rest

    Cut low_side(std::size_t n) const { return Cut(n, low); }
};

/// S = indices of the n/2 smallest entries of u, ties broken by ascending
/// index.
inline Bisection median_bisection(std::span<const double> u) {
    const std::size_t n = u.size();
    if (n % 2 != 0) throw Error(Errc::odd_vertex_count, "median bisection needs an even vertex count");
    if (n == 0) throw Error(Errc::invalid_graph, "empty projection");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::ranges::sort(order, [&](Vertex a, Vertex b) { return u[a] < u[b] || (u[a] == u[b] && a < b); });
    Bisection b;
    b.low.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
    b.high.assign(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
    std::ranges::sort(b.low);
    std::ranges::sort(b.high);
    return b;
}

/// Exact walk matrix. Every round averages every row exactly once, so after
/// t rounds all entries are integers over the common denominator 2^t; only
/// the numerators are stored.
class WalkMatrix {
  public:
    static WalkMatrix identity(std::size_t n) {
        WalkMatrix p(n);
        for (std::size_t i = 0; i < n; ++i) p.num_[i * n + i] = 1;
        return p;
    }

    /// Arbitrary dyadic matrix: entries numerators[i*n + j] / 2^rounds.
    static WalkMatrix from_numerators(std::size_t n, std::size_t rounds, std::vector<BigInt> numerators) {
        if (numerators.size() != n * n) throw Error(Errc::invalid_graph, "walk matrix needs n*n entries");
        WalkMatrix p(n);
        p.t_ = rounds;
        p.num_ = std::move(numerators);
        return p;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t rounds() const noexcept { return t_; }

    /// P[i][j] = raw(i, j) / 2^rounds().
    const BigInt& raw(std::size_t i, std::size_t j) const { return num_[i * n_ + j]; }
    BigInt& raw(std::size_t i, std::size_t j) { return num_[i * n_ + j]; }
    BigInt denominator() const { return BigInt(1) << t_; }

    Rational entry(std::size_t i, std::size_t j) const { return Rational(raw(i, j), denominator()); }

    /// Row i as exact rationals (the arrival-probability vector of i).
    std::vector<Rational> row(std::size_t i) const {
        std::vector<Rational> r;
        r.reserve(n_);
        const BigInt den = denominator();
        for (std::size_t j = 0; j < n_; ++j) r.emplace_back(raw(i, j), den);
        return r;
    }

    friend WalkMatrix apply_matching_exact(const WalkMatrix& p, const DirectedPerfectMatching& m);

  private:
    explicit WalkMatrix(std::size_t n) : n_(n), num_(n * n) {}

    std::size_t n_ = 0;
    std::size_t t_ = 0;
    std::vector<BigInt> num_;
};

/// row_j <- (row_i + row_j) / 2 for every arc (i, j) of M, reading the
/// previous round's rows.
inline WalkMatrix apply_matching_exact(const WalkMatrix& p, const DirectedPerfectMatching& m) {
    if (m.num_vertices != p.n_) throw Error(Errc::mismatched_vertex_count, "matching size differs from walk matrix");
    const auto pred = predecessor_map(m);
    WalkMatrix next(p.n_);
    next.t_ = p.t_ + 1;
    const std::size_t n = p.n_;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = pred[j];
        for (std::size_t k = 0; k < n; ++k) next.num_[j * n + k] = p.num_[i * n + k] + p.num_[j * n + k];
    }
    return next;
}

/// psi = sum_{i,j} (P_ij - 1/n)^2, exact.
inline Rational potential(const WalkMatrix& p) {
    const std::size_t n = p.size();
    const BigInt den = p.denominator();
    const BigInt bn(n);
    BigInt sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            BigInt d = bn * p.raw(i, j) - den;
            sum += d * d;
        }
    return Rational(sum, bn * bn * den * den);
}

inline Rational min_entry(const WalkMatrix& p) {
    const BigInt* smallest = &p.raw(0, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.raw(i, j) < *smallest) smallest = &p.raw(i, j);
    return Rational(*smallest, p.denominator());
}

/// Every start reaches every vertex with probability at least 1/(2n).
inline bool is_mixing(const WalkMatrix& p) {
    return min_entry(p) * Rational(BigInt(2 * p.size())) >= 1;
}

inline WalkMatrix replay_walk_exact(std::size_t n, std::span<const DirectedPerfectMatching> matchings) {
    WalkMatrix p = WalkMatrix::identity(n);
    for (const auto& m : matchings) p = apply_matching_exact(p, m);
    return p;
}

}  // namespace dsc
