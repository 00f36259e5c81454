#pragma once

// Shared helpers and independent oracles for the test suites. The oracles
// here deliberately avoid the library code paths they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "bunchlab/multi.hpp"
#include "bunchlab/rng.hpp"
#include "bunchlab/states.hpp"

namespace testsupport {

using bunchlab::Complex;
using bunchlab::PureState;
using bunchlab::RandomStream;
using bunchlab::SquareMatrix;
using bunchlab::UnitaryMatrix;

inline double normal(RandomStream& rng) {
    // Box-Muller; u1 shifted away from 0
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline Complex random_complex_normal(RandomStream& rng) {
    return Complex{normal(rng), normal(rng)};
}

inline PureState random_state(RandomStream& rng, std::size_t dim) {
    std::vector<Complex> amps(dim);
    double norm_sq = 0.0;
    for (Complex& a : amps) {
        a = random_complex_normal(rng);
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (Complex& a : amps) a *= scale;
    return PureState(std::move(amps));
}

// Haar-ish random unitary from Gram-Schmidt on Gaussian columns; two
// orthogonalization passes keep the residual near machine precision.
inline UnitaryMatrix random_unitary(RandomStream& rng, std::size_t dim) {
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& col : cols)
        for (Complex& entry : col) entry = random_complex_normal(rng);

    for (std::size_t c = 0; c < dim; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                Complex proj{};
                for (std::size_t i = 0; i < dim; ++i)
                    proj += std::conj(cols[prev][i]) * cols[c][i];
                for (std::size_t i = 0; i < dim; ++i) cols[c][i] -= proj * cols[prev][i];
            }
        }
        double norm_sq = 0.0;
        for (Complex v : cols[c]) norm_sq += std::norm(v);
        const double scale = 1.0 / std::sqrt(norm_sq);
        for (Complex& v : cols[c]) v *= scale;
    }

    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t c = 0; c < dim; ++c) m(i, c) = cols[c][i];
    return UnitaryMatrix(std::move(m));
}

// Brute-force beta oracle: builds the symmetrized two-particle joint state
// on the dim^2 product basis, normalizes it explicitly, and projects on
// |m,m>. Independent of the pair module.
inline double symmetrized_pair_beta(const PureState& psi1, const PureState& psi2,
                                    std::size_t m) {
    const std::size_t dim = psi1.dim();
    std::vector<Complex> joint(dim * dim);
    double raw_norm_sq = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            const Complex amp =
                psi1.amplitude(a) * psi2.amplitude(b) + psi1.amplitude(b) * psi2.amplitude(a);
            joint[a * dim + b] = amp;
            raw_norm_sq += std::norm(amp);
        }
    }
    // raw_norm_sq sums both orderings, so it equals 2N and the normalized
    // joint amplitude at (m, m) is joint[m,m] / sqrt(raw_norm_sq)
    const double p_boson = std::norm(joint[m * dim + m]) / raw_norm_sq;
    const double p_dist = std::norm(psi1.amplitude(m)) * std::norm(psi2.amplitude(m));
    return p_boson / p_dist;
}

// Literal double permutation sum (1/Q!) sum_{p,q} prod_n <psi_p(n)|psi_q(n)>,
// the definition the permanent reduction is checked against. Cost (Q!)^2.
inline Complex literal_normalization_q(const std::vector<PureState>& states) {
    const std::size_t q = states.size();
    std::vector<std::vector<Complex>> overlaps(q, std::vector<Complex>(q));
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) overlaps[a][b] = bunchlab::overlap(states[a], states[b]);

    std::vector<std::size_t> perm_p(q);
    std::iota(perm_p.begin(), perm_p.end(), std::size_t{0});
    Complex acc{};
    std::uint64_t permutations = 0;
    do {
        ++permutations;
        std::vector<std::size_t> perm_q(q);
        std::iota(perm_q.begin(), perm_q.end(), std::size_t{0});
        do {
            Complex term{1.0, 0.0};
            for (std::size_t n = 0; n < q; ++n) term *= overlaps[perm_p[n]][perm_q[n]];
            acc += term;
        } while (std::next_permutation(perm_q.begin(), perm_q.end()));
    } while (std::next_permutation(perm_p.begin(), perm_p.end()));
    return acc / static_cast<double>(permutations);
}

// Fixed composite 61-point Gauss rule. Non-adaptive on purpose: the nodes
// stay a fixed distance away from the panel edges, so integrands that are
// analytically smooth but numerically noisy in a sliver at the interval
// endpoints are never sampled there.
template <typename F>
double integrate_composite_gauss(F&& f, double a, double b, std::size_t panels = 64) {
    double total = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
        const double hi = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(panels);
        total += boost::math::quadrature::gauss<double, 61>::integrate(f, lo, hi);
    }
    return total;
}

/// CDF of beta for the equal-phase scenario, F(b) = (2/pi) acos(sqrt(2/b - 1)).
inline double equal_phase_beta_cdf(double beta) {
    if (beta <= 1.0) return 0.0;
    if (beta >= 2.0) return 1.0;
    return (2.0 / std::numbers::pi) * std::acos(std::sqrt(2.0 / beta - 1.0));
}

inline std::uint64_t factorial_u64(std::uint64_t q) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= q; ++i) f *= i;
    return f;
}

}  // namespace testsupport
