#include <layerdiff/semianalytic.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace layerdiff {

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += v[k];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

SemiAnalyticSolver::SemiAnalyticSolver(ValidatedProblem problem, SolverSettings settings)
    : problem_(std::move(problem)),
      settings_(settings),
      basis_(build_basis(problem_, settings.N)),
      liftings_(build_liftings(problem_)),
      betas_(compute_betas(problem_, basis_, liftings_)),
      table_(InversionTable::build(settings.Np, settings.table_source)),
      assembler_(problem_, basis_, betas_, liftings_) {}

InterfaceValues SemiAnalyticSolver::interface_values_at(double t) const {
    if (!(t > 0.0)) throw ValidationError("t > 0 fails (interface values)", -1);
    const int m = problem_.layers();
    const auto nodes = table_.nodes(t);
    const auto K = nodes.size();
    InterfaceValues out;
    out.t = t;
    out.gbar.assign(static_cast<std::size_t>(m + 1), std::vector<cplx>(K));
    out.g.assign(static_cast<std::size_t>(m + 1), 0.0);
    const auto& g0 = problem_.left().g;
    const auto& gm = problem_.right().g;
    for (std::size_t k = 0; k < K; ++k) {
        const cplx s = nodes[k];
        const cplx a = g0.laplace(s), b = gm.laplace(s);
        out.gbar[0][k] = a;
        out.gbar[static_cast<std::size_t>(m)][k] = b;
        if (m > 1) {
            const auto x = solve(assembler_.assemble(s, a, b));
            for (int i = 1; i < m; ++i) out.gbar[static_cast<std::size_t>(i)][k] = x[static_cast<std::size_t>(i - 1)];
        }
    }
    out.g[0] = g0(t);
    out.g[static_cast<std::size_t>(m)] = gm(t);
    for (int i = 1; i < m; ++i) out.g[static_cast<std::size_t>(i)] = table_.invert(out.gbar[static_cast<std::size_t>(i)], t);
    return out;
}

double SemiAnalyticSolver::coefficient(int i, int n, const InterfaceValues& v) const {
    const double t = v.t;
    const double D = problem_.D(i);
    const double lam = basis_.lambda(i, n);
    const double lam2 = lam * lam;
    const double decay = D * lam2;
    const double b1 = betas_(i, 1, n), b2 = betas_(i, 2, n), b3 = betas_(i, 3, n), b4 = betas_(i, 4, n),
                 b5 = betas_(i, 5, n);
    const auto il = static_cast<std::size_t>(i - 1), ir = static_cast<std::size_t>(i);
    double c = -v.g[il] * b1 - v.g[ir] * b2;
    if (b5 != 0.0) c += b5 * std::exp(-t * decay);
    const double a2 = D * (b3 + lam2 * b1), a3 = D * (b4 + lam2 * b2);
    if (a2 != 0.0) c += a2 * table_.invert_filtered(v.gbar[il], decay, t);
    if (a3 != 0.0) c += a3 * table_.invert_filtered(v.gbar[ir], decay, t);
    return c;
}

std::vector<double> SemiAnalyticSolver::coefficients(int i, const InterfaceValues& v) const {
    std::vector<double> c(static_cast<std::size_t>(basis_.size()));
    for (int n = 0; n < basis_.size(); ++n) c[static_cast<std::size_t>(n)] = coefficient(i, n, v);
    return c;
}

double SemiAnalyticSolver::field(int i, double x, const InterfaceValues& v, const std::vector<double>& c) const {
    const auto& lb = basis_.layer(i);
    const auto& L = liftings_[static_cast<std::size_t>(i - 1)];
    thread_local std::vector<double> terms;
    terms.resize(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) terms[n] = c[n] * lb.value(static_cast<int>(n), x);
    return v.g[static_cast<std::size_t>(i - 1)] * L.psi1(x) + v.g[static_cast<std::size_t>(i)] * L.psi2(x) +
           pairwise_sum(terms.data(), terms.size());
}

double SemiAnalyticSolver::derivative(int i, double x, const InterfaceValues& v, const std::vector<double>& c) const {
    const auto& lb = basis_.layer(i);
    const auto& L = liftings_[static_cast<std::size_t>(i - 1)];
    thread_local std::vector<double> terms;
    terms.resize(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) terms[n] = c[n] * lb.derivative(static_cast<int>(n), x);
    return v.g[static_cast<std::size_t>(i - 1)] * L.psi1.derivative(x) +
           v.g[static_cast<std::size_t>(i)] * L.psi2.derivative(x) + pairwise_sum(terms.data(), terms.size());
}

double SemiAnalyticSolver::evaluate_point(double x, double t, int layer) const {
    const int i = layer > 0 ? layer : problem_.layer_of(x);
    if (t == 0.0) return problem_.initial(i)(x);
    const auto v = interface_values_at(t);
    return field(i, x, v, coefficients(i, v));
}

SolutionField SemiAnalyticSolver::evaluate(const Grid& grid) const {
    const int m = problem_.layers();
    if (static_cast<int>(grid.x.size()) != m) throw Error("grid must list points for every layer");
    SolutionField out;
    out.grid = grid;
    out.settings = settings_;
    out.u.resize(grid.t.size());
    out.g.resize(grid.t.size());
    for (std::size_t k = 0; k < grid.t.size(); ++k) {
        const double t = grid.t[k];
        auto& uk = out.u[k];
        uk.resize(static_cast<std::size_t>(m));
        if (t == 0.0) {
            out.g[k].assign(static_cast<std::size_t>(m + 1), std::numeric_limits<double>::quiet_NaN());
            out.g[k][0] = problem_.left().g(0.0);
            out.g[k][static_cast<std::size_t>(m)] = problem_.right().g(0.0);
            for (int i = 1; i <= m; ++i)
                for (double x : grid.x[static_cast<std::size_t>(i - 1)])
                    uk[static_cast<std::size_t>(i - 1)].push_back(problem_.initial(i)(x));
            continue;
        }
        if (!(t > 0.0)) throw Error("output times must be >= 0");
        const auto v = interface_values_at(t);
        out.g[k] = v.g;
        for (int i = 1; i <= m; ++i) {
            const auto c = coefficients(i, v);
            for (double x : grid.x[static_cast<std::size_t>(i - 1)]) {
                const double u = field(i, x, v, c);
                if (!std::isfinite(u)) {
                    std::ostringstream os;
                    os << "non-finite solution value at layer " << i << ", x = " << x << ", t = " << t;
                    throw NumericalError(os.str());
                }
                uk[static_cast<std::size_t>(i - 1)].push_back(u);
            }
        }
    }
    return out;
}

SolutionField evaluate(const ValidatedProblem& problem, const SolverSettings& settings, const Grid& grid) {
    return SemiAnalyticSolver(problem, settings).evaluate(grid);
}

}  // namespace layerdiff
