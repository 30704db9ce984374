#pragma once

// Separation-of-variables solution for time-independent g_0, g_m:
//
//   u_i(x,t) = w_i(x) + sum_n c_n exp(-lambda_n^2 t) phi_{i,n}(x)
//
// with global eigenvalues lambda_n (roots of det A(lambda) = 0) and
// eigenfunctions orthogonal under p_i = gamma_i / D_i prod_{k<i} theta_k.
// Intended as a reference for small m only.

#include <layerdiff/problem.hpp>
#include <layerdiff/semianalytic.hpp>

#include <string>
#include <vector>

namespace layerdiff {

/// w_i(x) = P_i + Q_i (x - l_{i-1})
struct SteadyState {
    std::vector<double> origin, P, Q;
    double operator()(int layer, double x) const {
        const auto k = static_cast<std::size_t>(layer - 1);
        return P[k] + Q[k] * (x - origin[k]);
    }
};

/// Throws UnsupportedError for time-dependent boundary data and
/// NumericalError when both ends are Neumann with non-zero flux data.
SteadyState steady_state(const ValidatedProblem& problem);

struct GlobalEigenpair {
    double lambda = 0.0;
    // phi_i(x) = zeta_i sin(k xi)/k + xi_i cos(k xi), k = lambda / sqrt(D_i), xi = x - l_{i-1};
    // scaled so that sum_i int p_i phi_i^2 = 1.
    std::vector<double> zeta;
    std::vector<double> xi;
    double c = 0.0;  // series coefficient, filled by classical_coefficients
};

struct EigenSearch {
    std::vector<GlobalEigenpair> pairs;
    std::vector<std::string> warnings;  // suspected missed roots
};

constexpr int kClassicalMaxLayers = 6;

/// det A(lambda) of the 2m x 2m matching system.
double classical_determinant(const ValidatedProblem& problem, double lambda);

/// First `count` eigenpairs in increasing order. Throws UnsupportedError for m > 6.
EigenSearch global_eigenvalues(const ValidatedProblem& problem, int count);

/// Orthogonality weight p_i.
double classical_weight(const ValidatedProblem& problem, int layer);

double classical_eigenfunction(const ValidatedProblem& problem, const GlobalEigenpair& pair, int layer, double x);

/// Fills c_n = sum_i int p_i (f_i - w_i) phi_{i,n} for each pair.
void classical_coefficients(const ValidatedProblem& problem, const SteadyState& w, std::vector<GlobalEigenpair>& pairs);

/// Field on a grid; computes the steady state and coefficients itself.
SolutionField evaluate_classical(const ValidatedProblem& problem, std::vector<GlobalEigenpair> pairs, const Grid& grid);

}  // namespace layerdiff
