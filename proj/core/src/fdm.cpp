#include <layerdiff/fdm.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace layerdiff {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

FdmSolver::FdmSolver(ValidatedProblem problem, FdmSettings settings)
    : problem_(std::move(problem)), settings_(settings), M_(settings.cells_per_layer) {
    if (M_ < 2) throw ValidationError("cells_per_layer >= 2 fails", M_);
    if (!(settings_.dt > 0.0)) throw ValidationError("dt > 0 fails", 0);
    if (settings_.startup_half_steps < 0 || settings_.startup_half_steps % 2 != 0)
        throw ValidationError("startup_half_steps even and >= 0 fails", settings_.startup_half_steps);

    const auto& p = problem_;
    const int m = p.layers();
    const std::size_t n = static_cast<std::size_t>(m) * static_cast<std::size_t>(M_ + 1);
    mass_ = Band(n);
    K_ = Band(n);
    algebraic_.assign(n, 0);
    U_.assign(n, 0.0);
    b0_.assign(n, 0.0);
    b1_.assign(n, 0.0);
    rhs_.assign(n, 0.0);

    for (int i = 1; i <= m; ++i) {
        const double h = p.width(i) / M_, w = p.gamma(i) / p.D(i), c = p.gamma(i) / h;
        for (int j = 0; j <= M_; ++j) {
            const auto r = index(i, j);
            U_[r] = p.initial(i)(p.l(i - 1) + j * h);
            if (j > 0 && j < M_) {
                mass_.d[r] = w * h;
                K_.l1[r] = -c;
                K_.d[r] = 2.0 * c;
                K_.u1[r] = -c;
            }
        }
    }

    // external ends
    const auto& L = p.left();
    const auto r0 = index(1, 0);
    if (L.b == 0.0) {
        algebraic_[r0] = 1;
        K_.d[r0] = L.a;
    } else {
        const double h = p.width(1) / M_, c = p.gamma(1) / h;
        mass_.d[r0] = p.gamma(1) / p.D(1) * h / 2.0;
        K_.d[r0] = c + p.gamma(1) * L.a / L.b;
        K_.u1[r0] = -c;
    }
    const auto& R = p.right();
    const auto rm = index(m, M_);
    if (R.b == 0.0) {
        algebraic_[rm] = 1;
        K_.d[rm] = R.a;
    } else {
        const double h = p.width(m) / M_, c = p.gamma(m) / h;
        mass_.d[rm] = p.gamma(m) / p.D(m) * h / 2.0;
        K_.d[rm] = c + p.gamma(m) * R.a / R.b;
        K_.l1[rm] = -c;
    }

    // interfaces: lo = left limit, hi = right limit
    for (int i = 1; i < m; ++i) {
        const auto lo = index(i, M_), hi = index(i + 1, 0);
        const double h = p.width(i) / M_, c = p.gamma(i) / h, half = p.gamma(i) / p.D(i) * h / 2.0;
        const double h2 = p.width(i + 1) / M_, c2 = p.gamma(i + 1) / h2,
                     half2 = p.gamma(i + 1) / p.D(i + 1) * h2 / 2.0;
        const double th = p.theta(i);
        if (p.H(i).is_infinite()) {
            algebraic_[lo] = 1;
            K_.d[lo] = 1.0;
            K_.u1[lo] = -th;
            // both half cells summed so the interface flux cancels
            mass_.l1[hi] = half;
            mass_.d[hi] = half2;
            K_.l2[hi] = -c;
            K_.l1[hi] = c;
            K_.d[hi] = c2;
            K_.u1[hi] = -c2;
        } else {
            const double H = p.H(i).value();
            mass_.d[lo] = half;
            K_.l1[lo] = -c;
            K_.d[lo] = c + H;
            K_.u1[lo] = -H * th;
            mass_.d[hi] = half2;
            K_.l1[hi] = -H;
            K_.d[hi] = c2 + H * th;
            K_.u1[hi] = -c2;
        }
    }

    half_be_ = make_stepper(0.5 * settings_.dt, 1.0);
    cn_ = make_stepper(settings_.dt, 0.5);
}

std::size_t FdmSolver::index(int layer, int j) const {
    return static_cast<std::size_t>(layer - 1) * static_cast<std::size_t>(M_ + 1) + static_cast<std::size_t>(j);
}

FdmSolver::Stepper FdmSolver::make_stepper(double dt, double weight) const {
    const std::size_t n = U_.size();
    Stepper s;
    s.dt = dt;
    s.weight = weight;
    Band A(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double f = algebraic_[r] ? 1.0 : weight * dt;
        const double mf = algebraic_[r] ? 0.0 : 1.0;
        A.l2[r] = mf * mass_.l2[r] + f * K_.l2[r];
        A.l1[r] = mf * mass_.l1[r] + f * K_.l1[r];
        A.d[r] = mf * mass_.d[r] + f * K_.d[r];
        A.u1[r] = mf * mass_.u1[r] + f * K_.u1[r];
    }
    // LU without pivoting; the band keeps its shape (ku = 1).
    for (std::size_t k = 0; k < n; ++k) {
        if (!(std::abs(A.d[k]) > 1e-300)) {
            std::ostringstream os;
            os << "finite-difference step matrix is singular at row " << k;
            throw NumericalError(os.str());
        }
        if (k + 1 < n) {
            A.l1[k + 1] /= A.d[k];
            A.d[k + 1] -= A.l1[k + 1] * A.u1[k];
        }
        if (k + 2 < n) {
            A.l2[k + 2] /= A.d[k];
            A.l1[k + 2] -= A.l2[k + 2] * A.u1[k];
        }
    }
    s.lu = std::move(A);
    return s;
}

void FdmSolver::load(double t, std::vector<double>& b) const {
    const auto& p = problem_;
    const int m = p.layers();
    std::fill(b.begin(), b.end(), 0.0);
    const auto r0 = index(1, 0), rm = index(m, M_);
    const double g0 = p.left().g(t), gm = p.right().g(t);
    b[r0] = p.left().b == 0.0 ? g0 : p.gamma(1) * g0 / p.left().b;
    b[rm] = p.right().b == 0.0 ? gm : p.gamma(m) * gm / p.right().b;
}

// (K U)_r written as (row sum) U_r + sum_k K_rk (U_k - U_r); neighbour
// differences keep the rounding proportional to the local variation of U.
double FdmSolver::apply_stiffness(std::size_t r) const {
    const std::size_t n = U_.size();
    const double u = U_[r];
    double v = 0.0, sum = K_.d[r];
    if (r >= 1) {
        v += K_.l1[r] * (U_[r - 1] - u);
        sum += K_.l1[r];
    }
    if (r >= 2) {
        v += K_.l2[r] * (U_[r - 2] - u);
        sum += K_.l2[r];
    }
    if (r + 1 < n) {
        v += K_.u1[r] * (U_[r + 1] - u);
        sum += K_.u1[r];
    }
    return v + sum * u;
}

// Increment form: (mass + w dt K) dU = dt (load - K U^n), and for algebraic
// rows K dU = load(t1) - K U^n.
void FdmSolver::step(const Stepper& s) {
    const std::size_t n = U_.size();
    const double t0 = t_, t1 = t_ + s.dt;
    load(t1, b1_);
    if (s.weight < 1.0) load(t0, b0_);
    for (std::size_t r = 0; r < n; ++r) {
        const double ku = apply_stiffness(r);
        if (algebraic_[r])
            rhs_[r] = b1_[r] - ku;
        else
            rhs_[r] = s.dt * (s.weight * b1_[r] + (1.0 - s.weight) * b0_[r] - ku);
    }
    const Band& A = s.lu;
    for (std::size_t r = 1; r < n; ++r) {
        rhs_[r] -= A.l1[r] * rhs_[r - 1];
        if (r >= 2) rhs_[r] -= A.l2[r] * rhs_[r - 2];
    }
    rhs_[n - 1] /= A.d[n - 1];
    for (std::size_t r = n - 1; r-- > 0;) rhs_[r] = (rhs_[r] - A.u1[r] * rhs_[r + 1]) / A.d[r];
    for (std::size_t r = 0; r < n; ++r) U_[r] += rhs_[r];
    t_ = t1;
}

void FdmSolver::advance_to(double t) {
    const double dt = settings_.dt;
    const double target = std::round(t / dt);
    if (std::abs(target * dt - t) > 1e-9 * std::max(1.0, t) || target < static_cast<double>(steps_)) {
        std::ostringstream os;
        os << "finite-difference output time " << t << " is not a step multiple at or after t = " << t_
           << " (dt = " << dt << ")";
        throw Error(os.str());
    }
    const long n = static_cast<long>(target);
    const long startup = settings_.startup_half_steps / 2;
    while (steps_ < n) {
        if (steps_ < startup) {
            step(half_be_);
            step(half_be_);
        } else {
            step(cn_);
        }
        ++steps_;
        t_ = static_cast<double>(steps_) * dt;
    }
}

std::vector<double> FdmSolver::layer_values(int layer) const {
    const auto a = index(layer, 0);
    return {U_.begin() + static_cast<std::ptrdiff_t>(a), U_.begin() + static_cast<std::ptrdiff_t>(a + M_ + 1)};
}

double FdmSolver::value(int layer, double x) const {
    const double a = problem_.l(layer - 1), h = problem_.width(layer) / M_;
    const double s = (x - a) / h;
    const double nearest = std::round(s);
    if (std::abs(s - nearest) < 1e-12 && nearest >= 0 && nearest <= M_)
        return U_[index(layer, static_cast<int>(nearest))];
    const int j0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, M_ - 3 < 0 ? 0 : M_ - 3);
    const int np = std::min(4, M_ + 1);
    double acc = 0.0;
    for (int k = 0; k < np; ++k) {
        double w = 1.0;
        for (int q = 0; q < np; ++q)
            if (q != k) w *= (s - (j0 + q)) / double(k - q);
        acc += w * U_[index(layer, j0 + k)];
    }
    return acc;
}

double FdmSolver::flux(int i) const {
    const auto& p = problem_;
    if (i == 0) return p.left().g(t_);
    if (i == p.layers()) return p.right().g(t_);
    const auto lo = index(i, M_), hi = index(i + 1, 0);
    if (!p.H(i).is_infinite()) return p.H(i).value() * (p.theta(i) * U_[hi] - U_[lo]);
    const double h = p.width(i) / M_;
    return p.gamma(i) * (3.0 * U_[lo] - 4.0 * U_[lo - 1] + U_[lo - 2]) / (2.0 * h);
}

double FdmSolver::mass() const {
    const auto& p = problem_;
    double total = 0.0;
    for (int i = 1; i <= p.layers(); ++i) {
        const double h = p.width(i) / M_;
        double s = 0.5 * (U_[index(i, 0)] + U_[index(i, M_)]);
        for (int j = 1; j < M_; ++j) s += U_[index(i, j)];
        total += p.gamma(i) / p.D(i) * h * s;
    }
    return total;
}

SolutionField solve_fdm(const ValidatedProblem& p, const FdmSettings& settings, const Grid& grid) {
    const int m = p.layers();
    if (static_cast<int>(grid.x.size()) != m) throw Error("solve_fdm: grid has the wrong number of layers");
    SolutionField out;
    out.grid = grid;
    out.u.resize(grid.t.size());
    out.g.resize(grid.t.size());

    std::vector<std::size_t> order(grid.t.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return grid.t[a] < grid.t[b]; });

    FdmSolver solver(p, settings);
    for (auto k : order) {
        const double t = grid.t[k];
        if (t < 0.0) throw ValidationError("t >= 0 fails", static_cast<int>(k));
        auto& u = out.u[k];
        u.resize(static_cast<std::size_t>(m));
        if (t == 0.0) {
            for (int i = 1; i <= m; ++i)
                for (double x : grid.x[static_cast<std::size_t>(i - 1)])
                    u[static_cast<std::size_t>(i - 1)].push_back(p.initial(i)(x));
            out.g[k].assign(static_cast<std::size_t>(m + 1), kNaN);
            out.g[k].front() = p.left().g(0.0);
            out.g[k].back() = p.right().g(0.0);
            continue;
        }
        solver.advance_to(t);
        for (int i = 1; i <= m; ++i)
            for (double x : grid.x[static_cast<std::size_t>(i - 1)])
                u[static_cast<std::size_t>(i - 1)].push_back(solver.value(i, x));
        for (int i = 0; i <= m; ++i) out.g[k].push_back(solver.flux(i));
    }
    return out;
}

std::vector<double> richardson_error_estimate(const SolutionField& coarse, const SolutionField& fine) {
    if (!coarse.grid.same_shape(fine.grid)) throw Error("richardson_error_estimate: grids do not match");
    std::vector<double> est(fine.grid.t.size(), 0.0);
    for (std::size_t k = 0; k < est.size(); ++k)
        for (std::size_t i = 0; i < fine.u[k].size(); ++i)
            for (std::size_t j = 0; j < fine.u[k][i].size(); ++j)
                est[k] = std::max(est[k], std::abs(fine.u[k][i][j] - coarse.u[k][i][j]) / 3.0);
    return est;
}

SolutionField richardson_extrapolate(const SolutionField& coarse, const SolutionField& fine) {
    if (!coarse.grid.same_shape(fine.grid)) throw Error("richardson_extrapolate: grids do not match");
    SolutionField out = fine;
    for (std::size_t k = 0; k < out.u.size(); ++k) {
        for (std::size_t i = 0; i < out.u[k].size(); ++i)
            for (std::size_t j = 0; j < out.u[k][i].size(); ++j)
                out.u[k][i][j] = (4.0 * fine.u[k][i][j] - coarse.u[k][i][j]) / 3.0;
        for (std::size_t i = 0; i < out.g[k].size(); ++i)
            out.g[k][i] = (4.0 * fine.g[k][i] - coarse.g[k][i]) / 3.0;
    }
    return out;
}

}  // namespace layerdiff
