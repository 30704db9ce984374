#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace layerdiff::detail {

/// M_j = int_0^d xi^j exp(i k xi) dxi for j = 0..J. Integration by parts
/// when k d is large enough for the recursion to be stable, 30-point
/// Gauss-Legendre otherwise (the integrand is then a low-degree entire function).
inline std::vector<std::complex<double>> exp_moments(int J, double k, double d) {
    std::vector<std::complex<double>> M(static_cast<std::size_t>(J + 1));
    if (k * d >= J + 1.0) {
        const std::complex<double> ik(0.0, k);
        const std::complex<double> e = std::polar(1.0, k * d);
        M[0] = (e - 1.0) / ik;
        double dj = 1.0;
        for (int j = 1; j <= J; ++j) {
            dj *= d;
            M[static_cast<std::size_t>(j)] = (dj * e - double(j) * M[static_cast<std::size_t>(j - 1)]) / ik;
        }
        return M;
    }
    using boost::math::quadrature::gauss;
    for (int j = 0; j <= J; ++j) {
        const double re = gauss<double, 30>::integrate([&](double x) { return std::pow(x, j) * std::cos(k * x); }, 0.0, d);
        const double im = gauss<double, 30>::integrate([&](double x) { return std::pow(x, j) * std::sin(k * x); }, 0.0, d);
        M[static_cast<std::size_t>(j)] = {re, im};
    }
    return M;
}

/// True when the smoothed pulse of `width` at `center` is negligible (below
/// e^{-100}) outside [a, b], so integrals over the layer equal integrals over R.
inline bool pulse_inside(double center, double width, double a, double b) {
    return center - 10.0 * width >= a && center + 10.0 * width <= b;
}

/// Adaptive Gauss-Kronrod with a bounded refinement depth. Once refinement
/// reaches round-off the summed |K - G| overstates the error, so a pessimistic
/// estimate is replaced by the disagreement with an independent 31-point rule.
inline double adaptive_integral(const std::function<double(double)>& f, double a, double b, double* err = nullptr) {
    using boost::math::quadrature::gauss_kronrod;
    double e = 0.0;
    const double v = gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13, &e);
    if (e > 1e-13 && err) {
        double e31 = 0.0;
        const double w = gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-13, &e31);
        e = std::min(e, std::max(std::abs(v - w), 1e-14 * std::abs(v)));
    }
    if (err) *err = e;
    return v;
}

}  // namespace layerdiff::detail
