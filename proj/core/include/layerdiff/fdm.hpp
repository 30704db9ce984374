#pragma once

// Crank-Nicolson finite-volume reference solver. Each layer carries its own
// end nodes, so an interface holds two unknowns (left and right limits) and
// jump or partition discontinuities are represented exactly.

#include <layerdiff/problem.hpp>
#include <layerdiff/semianalytic.hpp>

#include <vector>

namespace layerdiff {

struct FdmSettings {
    int cells_per_layer = 400;
    double dt = 1e-3;
    /// Backward-Euler half steps used in place of the first Crank-Nicolson
    /// steps; damps the start-up oscillation from incompatible data.
    int startup_half_steps = 4;

    FdmSettings refined() const { return {2 * cells_per_layer, 0.5 * dt, startup_half_steps}; }
};

class FdmSolver {
public:
    FdmSolver(ValidatedProblem problem, FdmSettings settings);

    const ValidatedProblem& problem() const noexcept { return problem_; }
    const FdmSettings& settings() const noexcept { return settings_; }

    double time() const noexcept { return t_; }
    /// Advances to `t`, which must be a whole number of steps past time().
    void advance_to(double t);

    /// Nodal values of layer i (cells_per_layer + 1 entries, both ends included).
    std::vector<double> layer_values(int layer) const;
    /// Fourth-order Lagrange interpolation within layer i.
    double value(int layer, double x) const;
    /// Interface function g_i = gamma_i du_i/dx at l_i, i = 0..m.
    double flux(int interface) const;
    /// sum_i (gamma_i / D_i) int u_i dx under the discrete (trapezoid) measure.
    double mass() const;

private:
    // Banded rows with two sub-diagonals and one super-diagonal.
    struct Band {
        std::vector<double> l2, l1, d, u1;
        explicit Band(std::size_t n = 0) : l2(n, 0.0), l1(n, 0.0), d(n, 0.0), u1(n, 0.0) {}
    };
    struct Stepper {
        double dt = 0.0, weight = 0.5;  // weight 1 is backward Euler
        Band lu;
    };

    std::size_t index(int layer, int j) const;
    Stepper make_stepper(double dt, double weight) const;
    void load(double t, std::vector<double>& b) const;
    double apply_stiffness(std::size_t row) const;
    void step(const Stepper& s);

    ValidatedProblem problem_;
    FdmSettings settings_;
    int M_;
    double t_ = 0.0;
    long steps_ = 0;
    std::vector<double> U_;
    std::vector<double> b0_, b1_, rhs_;
    Band mass_, K_;  // mass dU/dt = -K U + load(t); algebraic rows have no mass
    std::vector<char> algebraic_;
    Stepper half_be_, cn_;
};

/// Field on `grid` (every time a whole number of steps). t = 0 returns the
/// initial data.
SolutionField solve_fdm(const ValidatedProblem& problem, const FdmSettings& settings, const Grid& grid);

/// Per-time two-grid estimate max |U_fine - U_coarse| / 3 of the fine-grid error.
std::vector<double> richardson_error_estimate(const SolutionField& coarse, const SolutionField& fine);

/// (4 U_fine - U_coarse) / 3 pointwise.
SolutionField richardson_extrapolate(const SolutionField& coarse, const SolutionField& fine);

}  // namespace layerdiff
