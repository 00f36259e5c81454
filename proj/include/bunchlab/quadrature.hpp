#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace bunchlab {

// Adaptive Gauss-Kronrod integration on [a, b]. Throws when the error
// estimate misses abs_tol.
template <typename F>
double integrate_real(F&& f, double a, double b, double abs_tol = 1e-12) {
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        std::forward<F>(f), a, b, 15, 1e-14, &error);
    if (!(error <= abs_tol))
        throw std::runtime_error("integrate_real: quadrature did not converge, error estimate " +
                                 std::to_string(error));
    return value;
}

template <typename F>
std::complex<double> integrate_complex(F&& f, double a, double b, double abs_tol = 1e-12) {
    const double re = integrate_real([&](double x) { return f(x).real(); }, a, b, abs_tol);
    const double im = integrate_real([&](double x) { return f(x).imag(); }, a, b, abs_tol);
    return {re, im};
}

}  // namespace bunchlab
