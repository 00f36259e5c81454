#pragma once

// One-dimensional Gaussian wavepacket pairs: closed-form overlaps, analytic
// free evolution, spatial bunching densities, and the constancy of
// beta = 2 / (1 + I^2) in space and time.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "bunchlab/quadrature.hpp"
#include "bunchlab/states.hpp"

namespace bunchlab {

// Gaussian packet
//   psi(x, 0) = (1/sqrt(sigma)) (2/pi)^{1/4} exp(-((x - x0)/sigma)^2 - i k x)
// evolved freely with scale alpha = hbar/m. With the e^{-ikx} phase
// convention, positive k moves the packet toward negative x at speed
// alpha * k.
class GaussianPacket {
public:
    GaussianPacket(double x0, double k, double sigma, double hbar_over_m = 1.0)
        : x0_(x0), k_(k), sigma_(sigma), hbar_over_m_(hbar_over_m) {
        if (!(sigma > 0.0))
            throw std::invalid_argument("GaussianPacket: sigma must be positive");
        if (!std::isfinite(x0) || !std::isfinite(k) || !std::isfinite(sigma) ||
            !std::isfinite(hbar_over_m))
            throw std::invalid_argument("GaussianPacket: fields must be finite");
    }

    double x0() const { return x0_; }
    double k() const { return k_; }
    double sigma() const { return sigma_; }
    double hbar_over_m() const { return hbar_over_m_; }

private:
    double x0_;
    double k_;
    double sigma_;
    double hbar_over_m_;
};

struct SpatialDensityPair {
    double p_boson_density = 0.0;
    double p_dist_density = 0.0;
};

/// Center of |psi(x,t)|^2.
inline double packet_center(const GaussianPacket& g, double t) {
    return g.x0() - g.hbar_over_m() * g.k() * t;
}

/// Width parameter sigma(t) of the spreading envelope; equals sigma at t = 0.
inline double packet_width(const GaussianPacket& g, double t) {
    const double s0 = 0.5 * g.sigma();
    const Complex a{s0 * s0, 0.5 * g.hbar_over_m() * t};
    return 2.0 * std::abs(a) / s0;
}

// psi(x, t) in closed form:
//   psi = C0 (s0 / sqrt(A)) exp(-(x - xc)^2 / (4A)) exp(-i k x - i alpha k^2 t / 2)
// with s0 = sigma/2, A = s0^2 + i alpha t / 2 and xc = x0 - alpha k t.
// Reduces to the defining expression at t = 0 and conserves the norm.
inline Complex amplitude_at(const GaussianPacket& g, double x, double t) {
    const double alpha = g.hbar_over_m();
    const double s0 = 0.5 * g.sigma();
    const Complex a{s0 * s0, 0.5 * alpha * t};
    const double xc = g.x0() - alpha * g.k() * t;
    const double c0 = std::pow(2.0 / (std::numbers::pi * g.sigma() * g.sigma()), 0.25);
    const double dx = x - xc;
    const Complex envelope = std::exp(-dx * dx / (4.0 * a));
    const Complex phase = std::exp(Complex{0.0, -g.k() * x - 0.5 * alpha * g.k() * g.k() * t});
    return c0 * (s0 / std::sqrt(a)) * envelope * phase;
}

// The counter-propagating preset: packets released at +x0 and -x0 with
// opposite wavenumbers, approaching each other for x0, k > 0. With x0 = 0
// the same preset describes packets released together and moving apart.
inline std::array<GaussianPacket, 2> counter_propagating_pair(double x0, double k, double sigma,
                                                              double hbar_over_m = 1.0) {
    return {GaussianPacket(x0, k, sigma, hbar_over_m),
            GaussianPacket(-x0, -k, sigma, hbar_over_m)};
}

namespace detail {

/// [-L, L] window that contains both packets out to 12 widths at time t.
inline double integration_bound(const GaussianPacket& g1, const GaussianPacket& g2, double t) {
    double bound = 0.0;
    for (const GaussianPacket* g : {&g1, &g2}) {
        const double reach = std::max(std::abs(g->x0()), std::abs(packet_center(*g, t)));
        bound = std::max(bound, reach + 12.0 * packet_width(*g, t));
    }
    return bound;
}

}  // namespace detail

/// Initial overlap of the counter-propagating preset, exp(-2 x0^2/sigma^2 - k^2 sigma^2 / 2).
inline double overlap_gaussian(double x0, double k, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("overlap_gaussian: sigma must be positive");
    return std::exp(-2.0 * x0 * x0 / (sigma * sigma) - 0.5 * k * k * sigma * sigma);
}

// I = integral of psi1(x,0) conj(psi2(x,0)) dx. Equal widths evaluate in
// closed form; unequal widths fall back to quadrature (no closed form is
// claimed for that extension).
inline Complex overlap_gaussian(const GaussianPacket& g1, const GaussianPacket& g2) {
    if (g1.sigma() == g2.sigma()) {
        const double s = g1.sigma();
        const double dx0 = g1.x0() - g2.x0();
        const double dk = g1.k() - g2.k();
        const double magnitude = -dx0 * dx0 / (2.0 * s * s) - dk * dk * s * s / 8.0;
        const double phase = -0.5 * dk * (g1.x0() + g2.x0());
        return std::exp(Complex{magnitude, phase});
    }
    const double bound = detail::integration_bound(g1, g2, 0.0);
    return integrate_complex(
        [&](double x) { return amplitude_at(g1, x, 0.0) * std::conj(amplitude_at(g2, x, 0.0)); },
        -bound, bound);
}

/// beta for the counter-propagating preset, 2 / (1 + exp(-4 x0^2/sigma^2 - k^2 sigma^2)).
inline double beta_gaussian(double x0, double k, double sigma) {
    const double i0 = overlap_gaussian(x0, k, sigma);
    return 2.0 / (1.0 + i0 * i0);
}

struct OptimalWidth {
    double sigma = 0.0;
    double beta = 0.0;
};

// Width sigma = sqrt(2 x0 / k) maximizes the overlap at fixed separation and
// wavenumber, where beta = 2 / (1 + exp(-4 k x0)).
inline OptimalWidth beta_optimal_width(double x0, double k) {
    if (!(x0 > 0.0) || !(k > 0.0))
        throw std::invalid_argument("beta_optimal_width: x0 and k must be positive");
    OptimalWidth result;
    result.sigma = std::sqrt(2.0 * x0 / k);
    result.beta = 2.0 / (1.0 + std::exp(-4.0 * k * x0));
    return result;
}

// Joint same-point densities at (x, t):
//   p_B(x,t) = 2 |psi1 psi2|^2 / (1 + |I|^2),   p_D(x,t) = |psi1 psi2|^2,
// with I the initial overlap. Their ratio is constant in x and t.
inline SpatialDensityPair spatial_densities(const GaussianPacket& g1, const GaussianPacket& g2,
                                            double x, double t, Complex initial_overlap) {
    const double joint = std::norm(amplitude_at(g1, x, t) * amplitude_at(g2, x, t));
    SpatialDensityPair d;
    d.p_dist_density = joint;
    d.p_boson_density = 2.0 * joint / (1.0 + std::norm(initial_overlap));
    return d;
}

inline SpatialDensityPair spatial_densities(const GaussianPacket& g1, const GaussianPacket& g2,
                                            double x, double t) {
    return spatial_densities(g1, g2, x, t, overlap_gaussian(g1, g2));
}

// |integral psi1(x,t) conj(psi2(x,t)) dx| by quadrature at time t. Free
// evolution leaves the overlap integral unchanged, so this must match the
// t = 0 value for any t.
inline double overlap_invariance_check(const GaussianPacket& g1, const GaussianPacket& g2,
                                       double t, double abs_tol = 1e-12) {
    const double bound = detail::integration_bound(g1, g2, t);
    const Complex value = integrate_complex(
        [&](double x) { return amplitude_at(g1, x, t) * std::conj(amplitude_at(g2, x, t)); },
        -bound, bound, abs_tol);
    return std::abs(value);
}

}  // namespace bunchlab
