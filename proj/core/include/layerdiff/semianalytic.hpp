#pragma once

// Semi-analytical solution
//
//   u_i(x,t) = g_{i-1}(t) psi_{i,1}(x) + g_i(t) psi_{i,2}(x) + sum_{n<N} c_{i,n}(t) phihat_{i,n}(x)
//
// with the interior interface functions g_1..g_{m-1} recovered from the
// Laplace-domain interface system at the inversion nodes.

#include <layerdiff/eigenbasis.hpp>
#include <layerdiff/interface_system.hpp>
#include <layerdiff/laplace.hpp>
#include <layerdiff/liftings.hpp>
#include <layerdiff/problem.hpp>

#include <vector>

namespace layerdiff {

struct SolverSettings {
    int N = 50;
    int Np = 14;
    InversionTable::Source table_source = InversionTable::Source::Tabulated;
};

/// Evaluation points per layer plus output times.
struct Grid {
    std::vector<std::vector<double>> x;  // x[i-1] holds the points of layer i
    std::vector<double> t;

    /// `points` equally spaced points per layer including both layer ends.
    static Grid uniform(const ValidatedProblem& problem, int points, std::vector<double> times);
    bool same_shape(const Grid& other) const;
};

struct SolutionField {
    Grid grid;
    std::vector<std::vector<std::vector<double>>> u;  // u[k][i-1][j]
    std::vector<std::vector<double>> g;               // g[k][0..m]
    SolverSettings settings;

    double at(std::size_t k, int layer, std::size_t j) const {
        return u[k][static_cast<std::size_t>(layer - 1)][j];
    }
};

/// Transforms of g_0..g_m at the inversion nodes of one time, and the
/// time-domain values g_0(t)..g_m(t).
struct InterfaceValues {
    double t = 0.0;
    std::vector<std::vector<cplx>> gbar;  // gbar[i][k], i = 0..m, k = node
    std::vector<double> g;                // g[i], i = 0..m
};

class SemiAnalyticSolver {
public:
    SemiAnalyticSolver(ValidatedProblem problem, SolverSettings settings = {});

    const ValidatedProblem& problem() const noexcept { return problem_; }
    const SolverSettings& settings() const noexcept { return settings_; }
    const EigenBasis& basis() const noexcept { return basis_; }
    const BetaTable& betas() const noexcept { return betas_; }
    const std::vector<LiftingPair>& liftings() const noexcept { return liftings_; }
    const InversionTable& table() const noexcept { return table_; }
    const InterfaceAssembler& assembler() const noexcept { return assembler_; }

    /// Solves the Np/2 interface systems at s = z_k / t. Requires t > 0.
    InterfaceValues interface_values_at(double t) const;

    /// c_{i,n}(t) for one mode.
    double coefficient(int i, int n, const InterfaceValues& values) const;
    /// c_{i,0..N-1}(t).
    std::vector<double> coefficients(int i, const InterfaceValues& values) const;

    /// u_i(x, t) from precomputed coefficients.
    double field(int i, double x, const InterfaceValues& values, const std::vector<double>& c) const;
    double derivative(int i, double x, const InterfaceValues& values, const std::vector<double>& c) const;

    /// u at a single point; for a breakpoint the left layer is used unless `layer` is given.
    double evaluate_point(double x, double t, int layer = 0) const;

    /// Full field on a grid. t = 0 rows return the initial data verbatim.
    /// Throws NumericalError naming the point if any value is non-finite.
    SolutionField evaluate(const Grid& grid) const;

private:
    ValidatedProblem problem_;
    SolverSettings settings_;
    EigenBasis basis_;
    std::vector<LiftingPair> liftings_;
    BetaTable betas_;
    InversionTable table_;
    InterfaceAssembler assembler_;
};

SolutionField evaluate(const ValidatedProblem& problem, const SolverSettings& settings, const Grid& grid);

/// eps(t_k) = max_{i,j} |ref - approx| / max_{i,j} |ref| per time.
/// Throws Error on grid mismatch.
std::vector<double> relative_error(const SolutionField& reference, const SolutionField& approximate);

/// sum_i (gamma_i / D_i) int u_i dx per time, trapezoid rule on the grid points.
/// Conserved when both external ends are no-flux.
std::vector<double> total_mass(const ValidatedProblem& problem, const SolutionField& field);

/// Sum in a fixed binary-tree order.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace layerdiff
