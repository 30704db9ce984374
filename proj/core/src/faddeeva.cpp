#include <layerdiff/errors.hpp>
#include <layerdiff/laplace.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace layerdiff {

namespace {

using std::numbers::pi;

constexpr double kStep = 0.5;
constexpr int kTerms = 14;

// Trapezoid rule for w(z) = (i/pi) int exp(-t^2)/(z - t) dt with a pole
// correction for the lattice nodes. Valid for Im z >= 0.
cplx w_upper(cplx z) {
    const cplx I(0.0, 1.0);
    const double frac = std::fmod(std::abs(z.real()) / kStep, 1.0);
    // Keep Re z away from the lattice nodes.
    const bool shifted = frac < 0.25 || frac > 0.75;
    const cplx z2 = z * z;
    cplx s = 0.0;
    if (!shifted) {
        for (int n = kTerms; n >= 1; --n) {
            const double t = n * kStep;
            s += 2.0 * z * std::exp(-t * t) / (z2 - t * t);
        }
        s += 1.0 / z;
    } else {
        for (int n = kTerms; n >= 0; --n) {
            const double t = (n + 0.5) * kStep;
            s += 2.0 * z * std::exp(-t * t) / (z2 - t * t);
        }
    }
    s *= I * kStep / pi;
    if (z.imag() < pi / kStep) {
        const cplx e = std::exp(-2.0 * pi * I * z / kStep);
        s += 2.0 * std::exp(-z2) / (shifted ? 1.0 + e : 1.0 - e);
    }
    return s;
}

cplx erf_series(cplx z) {
    cplx sum = 0.0, term = z;
    const cplx z2 = z * z;
    for (int k = 0; k < 60; ++k) {
        const cplx add = term / double(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        term *= -z2 / double(k + 1);
    }
    return 2.0 / std::sqrt(pi) * sum;
}

}  // namespace

cplx faddeeva(cplx z) {
    if (z.imag() >= 0.0) return w_upper(z);
    const cplx z2 = z * z;
    if (-z2.real() > 700.0) throw NumericalError("faddeeva: exp(-z^2) overflows in the lower half-plane");
    return 2.0 * std::exp(-z2) - w_upper(-z);
}

cplx complex_erf(cplx z) {
    if (std::abs(z) < 0.5) return erf_series(z);
    if (z.real() < 0.0) return -complex_erf(-z);
    const cplx z2 = z * z;
    if (-z2.real() > 700.0)
        throw NumericalError("complex_erf: result overflows (|Im z| too large relative to Re z)");
    // erfc(z) = exp(-z^2) w(iz), and iz lies in the closed upper half-plane here.
    return 1.0 - std::exp(-z2) * w_upper(cplx(-z.imag(), z.real()));
}

cplx gaussian_transform(cplx s, double peak, double mu, double sigma) {
    if (!(sigma > 0.0)) throw NumericalError("gaussian_transform: sigma must be > 0");
    if (peak == 0.0) return 0.0;
    const cplx zeta = (2.0 * mu - s * sigma * sigma) / (2.0 * sigma);
    const double pref = sigma * std::sqrt(pi) * peak / 2.0;
    const double mu2 = (mu / sigma) * (mu / sigma);
    // 1 + erf(zeta) = erfc(-zeta) = exp(-zeta^2) w(-i zeta), and the
    // exp((s/4)(s sigma^2 - 4 mu)) factor combines with exp(-zeta^2) into exp(-mu^2/sigma^2).
    const cplx arg(zeta.imag(), -zeta.real());  // -i zeta
    if (arg.imag() >= 0.0) return pref * std::exp(-mu2) * w_upper(arg);
    // Lower half-plane: w(arg) = 2 exp(-arg^2) - w(-arg), with -arg^2 = zeta^2.
    const cplx ex = zeta * zeta - mu2;
    if (ex.real() > 700.0)
        throw NumericalError("gaussian_transform: exp overflow at s = (" + std::to_string(s.real()) + ", " +
                             std::to_string(s.imag()) + "); rescale the time unit so mu/sigma and s sigma are moderate");
    return pref * (2.0 * std::exp(ex) - std::exp(-mu2) * w_upper(-arg));
}

}  // namespace layerdiff
