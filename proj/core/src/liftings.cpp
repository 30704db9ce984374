#include <layerdiff/liftings.hpp>

#include "moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>

namespace layerdiff {

namespace {

// A + B x + C x^2 rewritten about `origin`.
Quadratic shifted(double origin, double A, double B, double C) {
    return Quadratic{origin, A + origin * (B + origin * C), B + 2.0 * C * origin, C};
}

Quadratic constant(double origin, double v) { return Quadratic{origin, v, 0.0, 0.0}; }

// p(x) = sum a_k x^k  ->  sum b_k (x - origin)^k
std::vector<double> taylor_shift(std::vector<double> a, double origin) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = n - 1; j > k; --j) a[j - 1] += origin * a[j];
    return a;
}

}  // namespace

std::vector<LiftingPair> build_liftings(const ValidatedProblem& p) {
    const int m = p.layers();
    std::vector<LiftingPair> out(static_cast<std::size_t>(m));
    const double aL = p.left().a, bL = p.left().b, aR = p.right().a, bR = p.right().b;

    if (m == 1) {
        const double l0 = p.l(0), l1 = p.l(1), d = l1 - l0;
        auto& L = out[0];
        const double det = aL * (aR * d + bR) + bL * aR;
        if (det > 0.0) {
            L.psi1 = Quadratic{l0, (aR * d + bR) / det, -aR / det, 0.0};
            L.psi2 = Quadratic{l0, bL / det, aL / det, 0.0};
        } else {
            // Neumann at both ends.
            L.psi1 = shifted(l0, 0.0, -2.0 * l1 / (2.0 * bL * d), 1.0 / (2.0 * bL * d));
            L.psi2 = shifted(l0, 0.0, -2.0 * l0 / (2.0 * bR * d), 1.0 / (2.0 * bR * d));
        }
        return out;
    }

    for (int i = 1; i <= m; ++i) {
        const double lo = p.l(i - 1), hi = p.l(i), d = hi - lo, g = p.gamma(i);
        auto& L = out[static_cast<std::size_t>(i - 1)];
        // Middle-layer forms x(2 l_i - x) / (2 g d) and x(x - 2 l_{i-1}) / (2 g d).
        L.psi1 = shifted(lo, 0.0, 2.0 * hi / (2.0 * g * d), -1.0 / (2.0 * g * d));
        L.psi2 = shifted(lo, 0.0, -2.0 * lo / (2.0 * g * d), 1.0 / (2.0 * g * d));
        if (i == 1) {
            if (aL == 0.0) {
                L.psi1 = shifted(lo, 0.0, -2.0 * hi / (2.0 * bL * d), 1.0 / (2.0 * bL * d));
            } else {
                L.psi1 = constant(lo, 1.0 / aL);
                L.psi2 = Quadratic{lo, bL / (g * aL), 1.0 / g, 0.0};
            }
        }
        if (i == m) {
            if (aR == 0.0) {
                L.psi2 = shifted(lo, 0.0, -2.0 * lo / (2.0 * bR * d), 1.0 / (2.0 * bR * d));
            } else {
                // (a_R (x - l_m) - b_R) / (g a_R) about l_{m-1}.
                L.psi1 = Quadratic{lo, (-aR * d - bR) / (g * aR), 1.0 / g, 0.0};
                L.psi2 = constant(lo, 1.0 / aR);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- projections

double project_function(const LayerBasis& lb, int n, const std::function<double(double)>& f, double a, double b,
                        double* error_estimate) {
    return detail::adaptive_integral([&](double x) { return f(x) * lb.value(n, x); }, a, b, error_estimate);
}

double project_polynomial(const LayerBasis& lb, int n, std::span<const double> c) {
    const auto k = static_cast<std::size_t>(n);
    const double lam = lb.lambda[k], al = lb.alpha[k], be = lb.beta[k], d = lb.width;
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 0) return 0.0;

    if (lam == 0.0) {
        double acc = 0.0, dk = d;
        for (int j = 0; j <= deg; ++j, dk *= d) acc += c[static_cast<std::size_t>(j)] * dk / (j + 1);
        return acc * std::sin(al) / lb.norm[k];
    }
    if (lam * d < deg + 1.0) {
        const auto M = detail::exp_moments(deg, lam, d);
        const std::complex<double> ea(std::cos(al), std::sin(al));
        double acc = 0.0;
        for (int j = 0; j <= deg; ++j) acc += c[static_cast<std::size_t>(j)] * (ea * M[static_cast<std::size_t>(j)]).imag();
        return acc / lb.norm[k];
    }
    // J_j = int_0^d xi^j e^{i(lam xi + al)} dxi by integration by parts; the
    // sine integral is Im J_j. At xi = d the phase is (n+1) pi - beta.
    const std::complex<double> I(0.0, 1.0);
    const double sgn = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
    const std::complex<double> Ed = sgn * std::complex<double>(std::cos(be), -std::sin(be));
    const std::complex<double> E0(std::cos(al), std::sin(al));
    std::complex<double> J = (Ed - E0) / (I * lam);
    double acc = c[0] * J.imag(), dj = 1.0;
    for (int j = 1; j <= deg; ++j) {
        dj *= d;
        J = (dj * Ed - double(j) * J) / (I * lam);
        acc += c[static_cast<std::size_t>(j)] * J.imag();
    }
    return acc / lb.norm[k];
}

BetaTable::BetaTable(int layers, int N)
    : m_(layers), N_(N), data_(static_cast<std::size_t>(layers) * 5 * static_cast<std::size_t>(N), 0.0) {}

void BetaTable::write_csv(std::ostream& os) const {
    const auto old = os.precision(17);
    os << "layer,n,beta1,beta2,beta3,beta4,beta5\n";
    for (int i = 1; i <= m_; ++i)
        for (int n = 0; n < N_; ++n) {
            os << i << ',' << n;
            for (int k = 1; k <= 5; ++k) os << ',' << (*this)(i, k, n);
            os << '\n';
        }
    os.precision(old);
}

BetaTable compute_betas(const ValidatedProblem& p, const EigenBasis& basis, const std::vector<LiftingPair>& lift) {
    const int m = p.layers(), N = basis.size();
    BetaTable B(m, N);
    for (int i = 1; i <= m; ++i) {
        const auto& lb = basis.layer(i);
        const auto& L = lift[static_cast<std::size_t>(i - 1)];
        const auto& f = p.initial(i);
        const double c1[3] = {L.psi1.c0, L.psi1.c1, L.psi1.c2};
        const double c2[3] = {L.psi2.c0, L.psi2.c1, L.psi2.c2};
        const double one[1] = {1.0};
        std::vector<double> fshift;
        if (f.kind() == InitialCondition::Kind::Polynomial) fshift = taylor_shift(f.coefficients(), lb.left);

        double lo = lb.left, hi = lb.left + lb.width;
        if (f.kind() == InitialCondition::Kind::DiracPulse) {
            lo = std::clamp(f.center() - 8.0 * f.width(), lb.left, hi);
            hi = std::clamp(f.center() + 8.0 * f.width(), lb.left, hi);
        }
        const bool f_zero = f.kind() == InitialCondition::Kind::Polynomial && fshift.size() == 1 && fshift[0] == 0.0;

        for (int n = 0; n < N; ++n) {
            B(i, 1, n) = project_polynomial(lb, n, c1);
            B(i, 2, n) = project_polynomial(lb, n, c2);
            const double mean = project_polynomial(lb, n, one);
            B(i, 3, n) = L.psi1.second_derivative() == 0.0 ? 0.0 : L.psi1.second_derivative() * mean;
            B(i, 4, n) = L.psi2.second_derivative() == 0.0 ? 0.0 : L.psi2.second_derivative() * mean;
            if (f_zero) {
                B(i, 5, n) = 0.0;
            } else if (f.kind() == InitialCondition::Kind::Polynomial) {
                B(i, 5, n) = project_polynomial(lb, n, fshift);
            } else if (f.kind() == InitialCondition::Kind::DiracPulse &&
                       detail::pulse_inside(f.center(), f.width(), lb.left, lb.left + lb.width)) {
                // int e^{-(x-c)^2/a^2}/(a sqrt(pi)) sin(lam xi + alpha) dx over R
                const double lam = lb.lambda[static_cast<std::size_t>(n)];
                B(i, 5, n) = std::exp(-0.25 * lam * lam * f.width() * f.width()) * lb.value(n, f.center());
            } else if (hi > lo) {
                double err = 0.0;
                B(i, 5, n) = project_function(lb, n, [&f](double x) { return f(x); }, lo, hi, &err);
                if (!(err <= 1e-12)) {
                    std::ostringstream os;
                    os << "initial-condition projection did not converge in layer " << i << ", n = " << n
                       << " (error estimate " << err << ")";
                    throw NumericalError(os.str());
                }
            }
        }
    }
    return B;
}

}  // namespace layerdiff
