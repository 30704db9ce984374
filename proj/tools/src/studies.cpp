#include "studies.hpp"

#include <layerdiff/classical.hpp>
#include <layerdiff/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace layerdiff::tools {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_classical(const ValidatedProblem& p) {
    if (!p.left().g.constant_in_time() || !p.right().g.constant_in_time())
        throw UnsupportedError(
            "classical reference refused: it expands about a steady state, which needs time-independent "
            "boundary data g_0 and g_m; use --reference fdm instead");
    if (p.layers() > kClassicalMaxLayers)
        throw UnsupportedError("classical reference refused: the determinant scan supports at most " +
                               std::to_string(kClassicalMaxLayers) + " layers; use --reference fdm instead");
}

}  // namespace

double loglog_slope(std::span<const int> N, std::span<const double> eps) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < N.size() && k < eps.size(); ++k) {
        if (!(eps[k] > 0.0) || N[k] <= 0) continue;
        const double x = std::log(static_cast<double>(N[k])), y = std::log(eps[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double den = n * sxx - sx * sx;
    if (n < 2 || den <= 0.0) return kNaN;
    return -(n * sxy - sx * sy) / den;
}

ConvergenceReport convergence_study(const ValidatedProblem& p, const Grid& grid, const SolverSettings& base,
                                    const ConvergenceOptions& opt) {
    if (opt.N.empty()) throw ValidationError("at least one N is required", -1);
    for (int n : opt.N)
        if (n < 1) throw ValidationError("N >= 1 fails", n);
    ConvergenceReport rep;

    const int Nmax = *std::max_element(opt.N.begin(), opt.N.end());
    std::vector<GlobalEigenpair> pairs;
    if (opt.method == Method::Classical || opt.reference == Reference::Classical) {
        require_classical(p);
        const int count = std::max(opt.reference == Reference::Classical ? opt.reference_eigenvalues : 0,
                                   opt.method == Method::Classical ? Nmax : 0);
        auto search = global_eigenvalues(p, count);
        rep.warnings = std::move(search.warnings);
        pairs = std::move(search.pairs);
    }

    SolutionField ref;
    if (opt.reference == Reference::Classical) {
        ref = evaluate_classical(p, {pairs.begin(), pairs.begin() + opt.reference_eigenvalues}, grid);
    } else {
        ref = richardson_extrapolate(solve_fdm(p, opt.fdm, grid), solve_fdm(p, opt.fdm.refined(), grid));
    }

    // eps[n][k]
    std::vector<std::vector<double>> eps;
    for (int n : opt.N) {
        SolutionField approx;
        if (opt.method == Method::Classical) {
            approx = evaluate_classical(p, {pairs.begin(), pairs.begin() + n}, grid);
        } else {
            SolverSettings s = base;
            s.N = n;
            approx = evaluate(p, s, grid);
        }
        eps.push_back(relative_error(ref, approx));
    }

    rep.has_slope = opt.N.size() > 1;
    const auto window = static_cast<std::size_t>(std::max(2, opt.slope_window));
    for (std::size_t k = 0; k < grid.t.size(); ++k)
        for (std::size_t j = 0; j < opt.N.size(); ++j) {
            ConvergenceRow row{grid.t[k], opt.N[j], eps[j][k], kNaN};
            if (rep.has_slope && j > 0) {
                const std::size_t lo = j + 1 >= window ? j + 1 - window : 0;
                std::vector<double> e;
                for (std::size_t q = lo; q <= j; ++q) e.push_back(eps[q][k]);
                row.slope = loglog_slope(std::span(opt.N).subspan(lo, j - lo + 1), e);
            }
            rep.rows.push_back(row);
        }
    return rep;
}

bool no_flux_ends(const ValidatedProblem& p) {
    auto zero_flux = [](const ExternalBoundary& b) {
        // A damped zero (reaction wrap) is still zero.
        return b.a == 0.0 && b.g.kind() == BoundaryFunction::Kind::Constant && b.g.parameters().at(0) == 0.0;
    };
    return zero_flux(p.left()) && zero_flux(p.right());
}

bool CompareReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CompareRow& r) { return r.pass; });
}

CompareReport compare_study(const ValidatedProblem& p, const Grid& grid, const SolverSettings& semi,
                            const FdmSettings& fdm) {
    const auto sa = evaluate(p, semi, grid);
    const auto coarse = solve_fdm(p, fdm, grid);
    const auto fine = solve_fdm(p, fdm.refined(), grid);
    const auto diff = relative_error(fine, sa);
    const auto est = richardson_error_estimate(coarse, fine);

    CompareReport rep;
    rep.conservation = no_flux_ends(p);
    std::vector<double> mass;
    double mass0 = kNaN;
    if (rep.conservation) {
        mass = total_mass(p, sa);
        for (std::size_t k = 0; k < mass.size(); ++k)
            if (grid.t[k] > 0.0) {
                mass0 = mass[k];
                break;
            }
    }
    for (std::size_t k = 0; k < grid.t.size(); ++k) {
        double scale = 0.0;
        for (const auto& layer : fine.u[k])
            for (double v : layer) scale = std::max(scale, std::abs(v));
        CompareRow row;
        row.t = grid.t[k];
        row.max_rel_diff = diff[k];
        row.richardson = scale > 0.0 ? est[k] / scale : est[k];
        row.tolerance = std::max(kAgreementFloor, 3.0 * row.richardson);
        row.pass = row.max_rel_diff < row.tolerance;
        if (rep.conservation) {
            row.mass = mass[k];
            if (grid.t[k] > 0.0) row.mass_drift = std::abs(mass[k] - mass0) / std::abs(mass0);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace layerdiff::tools
