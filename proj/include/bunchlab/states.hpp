#pragma once

// Pure states over a finite basis, overlaps, unitaries and the two-mode
// (theta, mu) parametrization used by the bunching calculators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bunchlab/rng.hpp"

namespace bunchlab {

using Complex = std::complex<double>;

inline constexpr double norm_tolerance = 1e-12;     // on |<psi|psi> - 1|
inline constexpr double unitary_tolerance = 1e-9;   // entrywise on U^dag U - I
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace detail {

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite_angles(double theta, double mu) {
    if (!std::isfinite(theta) || !std::isfinite(mu))
        throw std::invalid_argument("two-mode parameters must be finite");
}

}  // namespace detail

// Normalized complex amplitude vector; element k is <k|psi>.
class PureState {
public:
    explicit PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
        if (amps_.empty())
            throw std::invalid_argument("PureState: dimension must be at least 1");
        double norm_sq = 0.0;
        for (Complex a : amps_) {
            if (!detail::is_finite(a))
                throw std::invalid_argument("PureState: non-finite amplitude");
            norm_sq += std::norm(a);
        }
        if (std::abs(norm_sq - 1.0) > norm_tolerance)
            throw std::invalid_argument("PureState: not normalized, |psi|^2 = " +
                                        std::to_string(norm_sq));
    }

    /// Basis vector |k> in a dim-dimensional space.
    static PureState basis(std::size_t dim, std::size_t k) {
        if (k >= dim) throw std::out_of_range("PureState::basis: index out of range");
        std::vector<Complex> amps(dim, Complex{0.0, 0.0});
        amps[k] = Complex{1.0, 0.0};
        return PureState(std::move(amps));
    }

    std::size_t dim() const { return amps_.size(); }

    Complex amplitude(std::size_t k) const {
        if (k >= amps_.size()) throw std::out_of_range("PureState: basis index out of range");
        return amps_[k];
    }

    const std::vector<Complex>& amplitudes() const { return amps_; }

private:
    std::vector<Complex> amps_;
};

// Angles of the two-mode superposition cos(theta) e^{i mu} |u> + sin(theta) e^{-i mu} |d>.
// |u> and |d> may be any orthogonal pair: splitter ports, spin up/down, or
// any other two-state degree of freedom.
struct TwoModeParams {
    double theta = 0.0;
    double mu = 0.0;
};

// Dense square complex matrix, row-major.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t dim, Complex fill = Complex{})
        : dim_(dim), data_(dim * dim, fill) {
        if (dim == 0) throw std::invalid_argument("SquareMatrix: dimension must be at least 1");
    }

    static SquareMatrix identity(std::size_t dim) {
        SquareMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = Complex{1.0, 0.0};
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

// Square matrix validated against U^dag U = I at construction.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(SquareMatrix entries, double tolerance = unitary_tolerance)
        : m_(std::move(entries)) {
        const std::size_t n = m_.dim();
        double max_dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Complex acc{};
                for (std::size_t k = 0; k < n; ++k) acc += std::conj(m_(k, i)) * m_(k, j);
                const Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                max_dev = std::max(max_dev, std::abs(acc - expected));
            }
        }
        if (!(max_dev <= tolerance))
            throw std::invalid_argument("UnitaryMatrix: not unitary, max |U^dag U - I| = " +
                                        std::to_string(max_dev));
    }

    std::size_t dim() const { return m_.dim(); }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const SquareMatrix& matrix() const { return m_; }

private:
    SquareMatrix m_;
};

/// Inner product <a|b> = sum_k conj(<k|a>) <k|b>.
inline Complex overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("overlap: dimension mismatch");
    Complex acc{};
    for (std::size_t k = 0; k < a.dim(); ++k)
        acc += std::conj(a.amplitude(k)) * b.amplitude(k);
    return acc;
}

/// The dim-2 state cos(theta) e^{i mu} |u> + sin(theta) e^{-i mu} |d>.
inline PureState two_mode_state(TwoModeParams p) {
    detail::require_finite_angles(p.theta, p.mu);
    const Complex phase{std::cos(p.mu), std::sin(p.mu)};
    return PureState({std::cos(p.theta) * phase, std::sin(p.theta) * std::conj(phase)});
}

// |<psi1|psi2>|^2 for two two-mode states in closed form:
//   cos^2(theta1 - theta2) - sin(2 theta1) sin(2 theta2) sin^2(mu1 - mu2),
// clamped to [0, 1].
inline double overlap_sq_two_mode(TwoModeParams p1, TwoModeParams p2) {
    detail::require_finite_angles(p1.theta, p1.mu);
    detail::require_finite_angles(p2.theta, p2.mu);
    const double c = std::cos(p1.theta - p2.theta);
    const double s = std::sin(p1.mu - p2.mu);
    const double value = c * c - std::sin(2.0 * p1.theta) * std::sin(2.0 * p2.theta) * s * s;
    return std::clamp(value, 0.0, 1.0);
}

/// U|s>, rescaled to unit norm to absorb rounding from the matrix product.
inline PureState apply_unitary(const UnitaryMatrix& u, const PureState& s) {
    if (u.dim() != s.dim())
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    const std::size_t n = s.dim();
    std::vector<Complex> out(n, Complex{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i] += u(i, j) * s.amplitude(j);
    double norm_sq = 0.0;
    for (Complex a : out) norm_sq += std::norm(a);
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (Complex& a : out) a *= scale;
    return PureState(std::move(out));
}

/// The 50:50 splitter (1/sqrt(2)) [[1, i], [i, 1]].
inline UnitaryMatrix beam_splitter() {
    const double r = 1.0 / std::numbers::sqrt2;
    SquareMatrix m(2);
    m(0, 0) = Complex{r, 0.0};
    m(0, 1) = Complex{0.0, r};
    m(1, 0) = Complex{0.0, r};
    m(1, 1) = Complex{r, 0.0};
    return UnitaryMatrix(std::move(m));
}

// Draws theta then mu, each uniform on [0, 2 pi). The draw order is part of
// the determinism contract.
inline TwoModeParams random_two_mode(RandomStream& rng) {
    const double theta = rng.uniform(0.0, two_pi);
    const double mu = rng.uniform(0.0, two_pi);
    return TwoModeParams{theta, mu};
}

}  // namespace bunchlab
