#include <layerdiff/classical.hpp>

#include <Eigen/Dense>

#include "moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace layerdiff {

namespace {

void require_small(const ValidatedProblem& p) {
    if (p.layers() > kClassicalMaxLayers)
        throw UnsupportedError("classical solution is limited to m <= " + std::to_string(kClassicalMaxLayers) +
                               " layers (got " + std::to_string(p.layers()) + ")");
}

// sin(k xi)/k and cos(k xi), with the k -> 0 limit.
double sinc_term(double k, double xi) { return k == 0.0 ? xi : std::sin(k * xi) / k; }

Eigen::MatrixXd matching_matrix(const ValidatedProblem& p, double lambda) {
    const int m = p.layers();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    A(0, 0) = -p.left().b;
    A(0, 1) = p.left().a;
    for (int i = 1; i <= m; ++i) {
        const double k = lambda / std::sqrt(p.D(i));
        const double d = p.width(i);
        const double S = sinc_term(k, d), C = std::cos(k * d);
        const double dS = std::cos(k * d), dC = -k * std::sin(k * d);
        const int c = 2 * (i - 1);
        if (i < m) {
            const int r = 2 * i - 1;
            const double g = p.gamma(i), gn = p.gamma(i + 1);
            // flux continuity
            A(r, c) = g * dS;
            A(r, c + 1) = g * dC;
            A(r, c + 2) = -gn;
            // u_i + (gamma_i / H_i) u_i' - theta_i u_{i+1} = 0
            const double gh = g * p.H(i).inverse();
            A(r + 1, c) = S + gh * dS;
            A(r + 1, c + 1) = C + gh * dC;
            A(r + 1, c + 3) = -p.theta(i);
        } else {
            A(2 * m - 1, c) = p.right().a * S + p.right().b * dS;
            A(2 * m - 1, c + 1) = p.right().a * C + p.right().b * dC;
        }
    }
    return A;
}

bool both_neumann(const ValidatedProblem& p) { return p.left().a == 0.0 && p.right().a == 0.0; }

double layer_integral(const std::function<double(double)>& f, double a, double b) {
    return detail::adaptive_integral(f, a, b);
}

// int over layer i of phi_i^2 for phi = A sin(k xi)/k + B cos(k xi).
double layer_norm2(double A, double B, double k, double d) {
    if (k * d < 1.0) {
        using boost::math::quadrature::gauss;
        return gauss<double, 30>::integrate(
            [&](double s) {
                const double f = A * sinc_term(k, s) + B * std::cos(k * s);
                return f * f;
            },
            0.0, d);
    }
    const double s2 = std::sin(2.0 * k * d) / (4.0 * k);
    const double sk = std::sin(k * d);
    return A * A * (0.5 * d - s2) / (k * k) + A * B * sk * sk / (k * k) + B * B * (0.5 * d + s2);
}

// int_0^d q(xi) phi(xi) dxi for a polynomial q = sum c_j xi^j.
double layer_poly_projection(const std::vector<double>& c, double A, double B, double k, double d) {
    const int J = static_cast<int>(c.size()) - 1;
    const auto M = detail::exp_moments(J + 1, k, d);
    double acc = 0.0;
    for (int j = 0; j <= J; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double sin_part = k == 0.0 ? M[jj + 1].real() : M[jj].imag() / k;
        acc += c[jj] * (A * sin_part + B * M[jj].real());
    }
    return acc;
}

// p(x) = sum a_k x^k  ->  sum b_k (x - origin)^k
std::vector<double> taylor_shift(std::vector<double> a, double origin) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = n - 1; j > k; --j) a[j - 1] += origin * a[j];
    return a;
}

}  // namespace

double classical_weight(const ValidatedProblem& p, int layer) {
    double w = p.gamma(layer) / p.D(layer);
    for (int k = 1; k < layer; ++k) w *= p.theta(k);
    return w;
}

double classical_determinant(const ValidatedProblem& p, double lambda) {
    return matching_matrix(p, lambda).partialPivLu().determinant();
}

double classical_eigenfunction(const ValidatedProblem& p, const GlobalEigenpair& e, int i, double x) {
    const auto k = static_cast<std::size_t>(i - 1);
    const double kk = e.lambda / std::sqrt(p.D(i));
    const double s = x - p.l(i - 1);
    return e.zeta[k] * sinc_term(kk, s) + e.xi[k] * std::cos(kk * s);
}

SteadyState steady_state(const ValidatedProblem& p) {
    if (!p.left().g.constant_in_time() || !p.right().g.constant_in_time())
        throw UnsupportedError("the classical solution requires time-independent boundary data g_0, g_m");
    const int m = p.layers();
    SteadyState w;
    for (int i = 1; i <= m; ++i) w.origin.push_back(p.l(i - 1));
    const double g0 = p.left().g(0.0), gm = p.right().g(0.0);
    if (both_neumann(p)) {
        if (g0 != 0.0 || gm != 0.0)
            throw NumericalError(
                "steady state undetermined: Neumann data at both ends fixes fluxes only, leaving an arbitrary "
                "additive constant (and no steady state unless the fluxes balance)");
        w.P.assign(static_cast<std::size_t>(m), 0.0);
        w.Q.assign(static_cast<std::size_t>(m), 0.0);
        return w;
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * m);
    A(0, 0) = p.left().a;
    A(0, 1) = -p.left().b;
    b(0) = g0;
    for (int i = 1; i < m; ++i) {
        const int r = 2 * i - 1, c = 2 * (i - 1);
        A(r, c + 1) = p.gamma(i);
        A(r, c + 3) = -p.gamma(i + 1);
        A(r + 1, c) = 1.0;
        A(r + 1, c + 1) = p.width(i) + p.gamma(i) * p.H(i).inverse();
        A(r + 1, c + 2) = -p.theta(i);
    }
    A(2 * m - 1, 2 * m - 2) = p.right().a;
    A(2 * m - 1, 2 * m - 1) = p.right().a * p.width(m) + p.right().b;
    b(2 * m - 1) = gm;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw NumericalError("steady-state system is singular");
    const Eigen::VectorXd x = lu.solve(b);
    for (int i = 0; i < m; ++i) {
        w.P.push_back(x(2 * i));
        w.Q.push_back(x(2 * i + 1));
    }
    return w;
}

EigenSearch global_eigenvalues(const ValidatedProblem& p, int count) {
    require_small(p);
    const int m = p.layers();
    EigenSearch out;
    double spacing = 1e300, travel = 0.0;
    for (int i = 1; i <= m; ++i) {
        spacing = std::min(spacing, std::numbers::pi * std::sqrt(p.D(i)) / p.width(i));
        travel += p.width(i) / std::sqrt(p.D(i));
    }
    const double h = spacing / 20.0;
    const double mean_gap = std::numbers::pi / travel;
    auto det = [&](double lam) { return classical_determinant(p, lam); };

    std::vector<double> roots;
    double lo;
    if (both_neumann(p)) {
        roots.push_back(0.0);
        lo = 0.25 * h;
    } else {
        lo = 0.0;
    }
    double flo = det(lo);
    while (static_cast<int>(roots.size()) < count) {
        const double hi = lo + h;
        const double fhi = det(hi);
        if (fhi == 0.0) {
            roots.push_back(hi);
            lo = hi + 0.25 * h;
            flo = det(lo);
            continue;
        }
        if ((flo < 0.0) != (fhi < 0.0)) {
            double a = lo, b = hi, fa = flo;
            for (int it = 0; it < 300; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = det(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        lo = hi;
        flo = fhi;
        if (lo > 1e8) throw NumericalError("eigenvalue scan ran away without finding enough roots");
    }

    for (std::size_t n = 1; n < roots.size(); ++n) {
        const double gap = roots[n] - roots[n - 1];
        if (gap > 2.0 * mean_gap) {
            std::ostringstream os;
            os << "possible missed eigenvalue in (" << roots[n - 1] << ", " << roots[n] << "): gap " << gap
               << " exceeds twice the mean spacing " << mean_gap;
            out.warnings.push_back(os.str());
        }
    }

    for (double lam : roots) {
        const Eigen::MatrixXd A = matching_matrix(p, lam);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
        const Eigen::VectorXd v = svd.matrixV().col(2 * m - 1);
        GlobalEigenpair e;
        e.lambda = lam;
        for (int i = 0; i < m; ++i) {
            e.zeta.push_back(v(2 * i));
            e.xi.push_back(v(2 * i + 1));
        }
        double norm2 = 0.0;
        for (int i = 1; i <= m; ++i)
            norm2 += classical_weight(p, i) * layer_norm2(e.zeta[static_cast<std::size_t>(i - 1)],
                                                          e.xi[static_cast<std::size_t>(i - 1)],
                                                          lam / std::sqrt(p.D(i)), p.width(i));
        const double s = 1.0 / std::sqrt(norm2);
        // Fix the sign so the first non-negligible coefficient is positive.
        double lead = 0.0;
        for (int i = 0; i < m && lead == 0.0; ++i) lead = std::abs(e.xi[i]) > 1e-12 ? e.xi[i] : e.zeta[i];
        const double sgn = lead < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < m; ++i) {
            e.zeta[i] *= sgn * s;
            e.xi[i] *= sgn * s;
        }
        out.pairs.push_back(std::move(e));
    }
    return out;
}

void classical_coefficients(const ValidatedProblem& p, const SteadyState& w, std::vector<GlobalEigenpair>& pairs) {
    const int m = p.layers();
    for (auto& e : pairs) {
        double c = 0.0;
        for (int i = 1; i <= m; ++i) {
            const auto& f = p.initial(i);
            const auto k = static_cast<std::size_t>(i - 1);
            double a = p.l(i - 1), b = p.l(i), acc = 0.0;
            if (f.kind() == InitialCondition::Kind::Polynomial) {
                auto q = taylor_shift(f.coefficients(), a);
                if (q.size() < 2) q.resize(2, 0.0);
                q[0] -= w.P[k];
                q[1] -= w.Q[k];
                acc = layer_poly_projection(q, e.zeta[k], e.xi[k], e.lambda / std::sqrt(p.D(i)), b - a);
            } else {
                auto integrand = [&](double x) { return (f(x) - w(i, x)) * classical_eigenfunction(p, e, i, x); };
                if (f.kind() == InitialCondition::Kind::DiracPulse && detail::pulse_inside(f.center(), f.width(), a, b)) {
                    const double kk = e.lambda / std::sqrt(p.D(i));
                    acc = std::exp(-0.25 * kk * kk * f.width() * f.width()) * classical_eigenfunction(p, e, i, f.center()) -
                          layer_poly_projection({w.P[k], w.Q[k]}, e.zeta[k], e.xi[k], kk, b - a);
                } else if (f.kind() == InitialCondition::Kind::DiracPulse) {
                    // Integrate the pulse support separately so the quadrature sees it.
                    const double s0 = std::clamp(f.center() - 8.0 * f.width(), a, b);
                    const double s1 = std::clamp(f.center() + 8.0 * f.width(), a, b);
                    if (s0 > a) acc += layer_integral(integrand, a, s0);
                    if (s1 > s0) acc += layer_integral(integrand, s0, s1);
                    if (b > s1) acc += layer_integral(integrand, s1, b);
                } else {
                    acc = layer_integral(integrand, a, b);
                }
            }
            c += classical_weight(p, i) * acc;
        }
        e.c = c;
    }
}

SolutionField evaluate_classical(const ValidatedProblem& p, std::vector<GlobalEigenpair> pairs, const Grid& grid) {
    require_small(p);
    const int m = p.layers();
    const SteadyState w = steady_state(p);
    classical_coefficients(p, w, pairs);
    SolutionField out;
    out.grid = grid;
    out.settings.N = static_cast<int>(pairs.size());
    out.u.resize(grid.t.size());
    out.g.resize(grid.t.size());
    std::vector<double> terms(pairs.size());
    for (std::size_t k = 0; k < grid.t.size(); ++k) {
        const double t = grid.t[k];
        out.u[k].resize(static_cast<std::size_t>(m));
        out.g[k].assign(static_cast<std::size_t>(m + 1), 0.0);
        out.g[k][0] = p.left().g(t);
        out.g[k][static_cast<std::size_t>(m)] = p.right().g(t);
        for (int i = 1; i <= m; ++i) {
            for (double x : grid.x[static_cast<std::size_t>(i - 1)]) {
                double u;
                if (t == 0.0) {
                    u = p.initial(i)(x);
                } else {
                    for (std::size_t n = 0; n < pairs.size(); ++n)
                        terms[n] = pairs[n].c * std::exp(-pairs[n].lambda * pairs[n].lambda * t) *
                                   classical_eigenfunction(p, pairs[n], i, x);
                    u = w(i, x) + pairwise_sum(terms.data(), terms.size());
                }
                out.u[k][static_cast<std::size_t>(i - 1)].push_back(u);
            }
            // Interface flux gamma_i u_i'(l_i) from the series.
            if (i < m && t > 0.0) {
                double q = p.gamma(i) * w.Q[static_cast<std::size_t>(i - 1)];
                for (const auto& e : pairs) {
                    const double kk = e.lambda / std::sqrt(p.D(i));
                    const double d = p.width(i);
                    const double dphi = e.zeta[static_cast<std::size_t>(i - 1)] * std::cos(kk * d) -
                                        e.xi[static_cast<std::size_t>(i - 1)] * kk * std::sin(kk * d);
                    q += p.gamma(i) * e.c * std::exp(-e.lambda * e.lambda * t) * dphi;
                }
                out.g[k][static_cast<std::size_t>(i)] = q;
            }
        }
    }
    return out;
}

}  // namespace layerdiff
