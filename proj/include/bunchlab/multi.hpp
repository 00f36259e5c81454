#pragma once

// Q-particle bosonic enhancement: Gram matrices of pairwise overlaps,
// permanents (Ryser and a brute-force oracle), the symmetric-state
// normalization N = per(G), and beta = Q!/N.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "bunchlab/states.hpp"

namespace bunchlab {

inline constexpr std::size_t max_naive_particles = 10;   // Q! cost guard
inline constexpr std::size_t max_ryser_particles = 30;   // 2^Q cost guard
inline constexpr std::size_t max_exact_factorial = 33;   // 33! still fits in 128 bits

inline constexpr double gram_hermitian_tolerance = 1e-12;
inline constexpr double gram_psd_tolerance = 1e-10;  // lowest admissible eigenvalue

using Uint128 = unsigned __int128;

inline Uint128 factorial_exact(std::size_t q) {
    if (q > max_exact_factorial)
        throw std::domain_error("factorial_exact: argument exceeds 128-bit range");
    Uint128 f = 1;
    for (std::size_t i = 2; i <= q; ++i) f *= i;
    return f;
}

inline std::string uint128_to_string(Uint128 v) {
    if (v == 0) return "0";
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

// Q x Q matrix of pairwise overlaps I[a,b] = <psi_a|psi_b>. Hermitian with
// unit diagonal and positive semidefinite; all three are checked at
// construction.
class GramMatrix {
public:
    explicit GramMatrix(SquareMatrix entries) : m_(std::move(entries)) { validate(); }

    static GramMatrix from_states(const std::vector<PureState>& states) {
        if (states.size() < 2)
            throw std::invalid_argument("GramMatrix: need at least 2 states");
        const std::size_t q = states.size();
        for (const PureState& s : states)
            if (s.dim() != states.front().dim())
                throw std::invalid_argument("GramMatrix: states must share one dimension");
        SquareMatrix m(q);
        for (std::size_t a = 0; a < q; ++a) {
            m(a, a) = Complex{1.0, 0.0};
            for (std::size_t b = a + 1; b < q; ++b) {
                const Complex i_ab = overlap(states[a], states[b]);
                m(a, b) = i_ab;
                m(b, a) = std::conj(i_ab);
            }
        }
        return GramMatrix(std::move(m));
    }

    std::size_t particle_count() const { return m_.dim(); }
    Complex operator()(std::size_t a, std::size_t b) const { return m_(a, b); }
    const SquareMatrix& entries() const { return m_; }

private:
    void validate() const {
        const std::size_t q = m_.dim();
        for (std::size_t a = 0; a < q; ++a) {
            if (std::abs(m_(a, a) - Complex{1.0, 0.0}) > gram_hermitian_tolerance)
                throw std::invalid_argument("GramMatrix: diagonal entry " + std::to_string(a) +
                                            " is not 1");
            for (std::size_t b = a + 1; b < q; ++b)
                if (std::abs(m_(a, b) - std::conj(m_(b, a))) > gram_hermitian_tolerance)
                    throw std::invalid_argument("GramMatrix: not Hermitian");
        }
        Eigen::MatrixXcd em(q, q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b) em(a, b) = m_(a, b);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em,
                                                               Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -gram_psd_tolerance)
            throw std::invalid_argument("GramMatrix: not positive semidefinite");
    }

    SquareMatrix m_;
};

inline GramMatrix gram_matrix(const std::vector<PureState>& states) {
    return GramMatrix::from_states(states);
}

/// Permutation sum over all Q! terms; brute-force oracle, guarded at Q <= 10.
inline Complex permanent_naive(const SquareMatrix& m) {
    const std::size_t n = m.dim();
    if (n > max_naive_particles)
        throw std::invalid_argument("permanent_naive: dimension exceeds factorial guard");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Complex acc{};
    do {
        Complex term{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// Ryser inclusion-exclusion with Gray-code column updates, O(2^Q * Q):
//   per(M) = (-1)^Q sum_{S != 0} (-1)^|S| prod_i sum_{j in S} M[i][j].
inline Complex permanent_ryser(const SquareMatrix& m) {
    const std::size_t n = m.dim();
    if (n > max_ryser_particles)
        throw std::invalid_argument("permanent_ryser: dimension exceeds subset guard");
    if (n == 1) return m(0, 0);

    std::vector<Complex> row_sums(n, Complex{});
    Complex acc{};
    std::uint64_t gray = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const std::uint64_t next_gray = k ^ (k >> 1);
        const unsigned column = std::countr_zero(k);
        const bool added = (next_gray >> column) & 1u;
        for (std::size_t i = 0; i < n; ++i) {
            if (added)
                row_sums[i] += m(i, column);
            else
                row_sums[i] -= m(i, column);
        }
        gray = next_gray;
        Complex term{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) term *= row_sums[i];
        const bool odd_subset = std::popcount(gray) & 1u;
        acc += odd_subset ? -term : term;
    }
    const bool odd_n = n & 1u;
    return odd_n ? -acc : acc;
}

// N = per(G) for the Gram matrix G of the inputs. This equals the double
// permutation sum (1/Q!) sum_{p,q} prod_n <psi_p(n)|psi_q(n)>: fixing p and
// summing over q already yields per(G) for every p.
inline double normalization_q(const std::vector<PureState>& states) {
    const GramMatrix g = gram_matrix(states);
    const Complex p = permanent_ryser(g.entries());
    if (std::abs(p.imag()) > 1e-10 * std::max(1.0, std::abs(p.real())))
        throw std::runtime_error("normalization_q: permanent has a non-real part of " +
                                 std::to_string(p.imag()));
    if (p.real() < 1.0 - 1e-10)
        throw std::runtime_error("normalization_q: permanent below 1, Gram input invalid");
    return p.real();
}

struct EnhancementResult {
    double n_const = 1.0;       // N = per(G)
    double beta = 1.0;          // Q! / N, as a double
    Uint128 q_factorial = 1;    // exact Q!
};

// beta = Q!/N. Mutually orthogonal states give beta = Q! (the bosonic
// enhancement factor); identical states give beta = 1. For Q > 20 the
// floating beta carries the rounding of double(Q!).
inline EnhancementResult beta_q(const std::vector<PureState>& states) {
    EnhancementResult result;
    result.n_const = normalization_q(states);
    result.q_factorial = factorial_exact(states.size());
    result.beta = static_cast<double>(result.q_factorial) / result.n_const;
    return result;
}

enum class ParticleKind { boson, distinguishable };

// Probability of measuring all Q particles in basis state m:
//   bosons: (Q!/N) prod_n |<m|psi_n>|^2,  distinguishable: prod_n |<m|psi_n>|^2.
inline double p_same_state_q(const std::vector<PureState>& states, std::size_t m,
                             ParticleKind kind) {
    if (states.size() < 2)
        throw std::invalid_argument("p_same_state_q: need at least 2 states");
    if (m >= states.front().dim())
        throw std::out_of_range("p_same_state_q: basis index out of range");
    double product = 1.0;
    for (const PureState& s : states) product *= std::norm(s.amplitude(m));
    if (kind == ParticleKind::distinguishable) return product;
    const EnhancementResult e = beta_q(states);
    return e.beta * product;
}

}  // namespace bunchlab
