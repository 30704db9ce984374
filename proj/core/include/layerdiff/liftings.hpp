#pragma once

// Boundary liftings psi_{i,1}, psi_{i,2} and the projections
//
//   beta_{i,1,n} = <psi_{i,1}, phihat_{i,n}>     beta_{i,2,n} = <psi_{i,2}, phihat_{i,n}>
//   beta_{i,3,n} = <psi_{i,1}'', phihat_{i,n}>   beta_{i,4,n} = <psi_{i,2}'', phihat_{i,n}>
//   beta_{i,5,n} = <f_i, phihat_{i,n}>

#include <layerdiff/eigenbasis.hpp>
#include <layerdiff/problem.hpp>

#include <iosfwd>
#include <span>
#include <vector>

namespace layerdiff {

/// c0 + c1 (x - origin) + c2 (x - origin)^2
struct Quadratic {
    double origin = 0.0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    double operator()(double x) const {
        const double xi = x - origin;
        return c0 + xi * (c1 + xi * c2);
    }
    double derivative(double x) const { return c1 + 2.0 * c2 * (x - origin); }
    double second_derivative() const { return 2.0 * c2; }
};

struct LiftingPair {
    Quadratic psi1;  // carries g_{i-1}
    Quadratic psi2;  // carries g_i
};

/// One pair per layer (index 0 is layer 1).
std::vector<LiftingPair> build_liftings(const ValidatedProblem& problem);

class BetaTable {
public:
    BetaTable() = default;
    BetaTable(int layers, int N);

    int layers() const noexcept { return m_; }
    int size() const noexcept { return N_; }

    /// i = 1..m, k = 1..5, n = 0..N-1.
    double operator()(int i, int k, int n) const { return data_[offset(i, k) + static_cast<std::size_t>(n)]; }
    double& operator()(int i, int k, int n) { return data_[offset(i, k) + static_cast<std::size_t>(n)]; }
    std::span<const double> row(int i, int k) const { return {data_.data() + offset(i, k), static_cast<std::size_t>(N_)}; }

    void write_csv(std::ostream& os) const;

private:
    std::size_t offset(int i, int k) const {
        return (static_cast<std::size_t>(i - 1) * 5 + static_cast<std::size_t>(k - 1)) * static_cast<std::size_t>(N_);
    }
    int m_ = 0;
    int N_ = 0;
    std::vector<double> data_;
};

/// Throws NumericalError (naming layer and n) if a quadrature for a
/// non-polynomial initial condition misses 1e-12 absolute.
BetaTable compute_betas(const ValidatedProblem& problem, const EigenBasis& basis,
                        const std::vector<LiftingPair>& liftings);

/// <p, phihat_n> over the layer for a polynomial p given in powers of
/// (x - l_{i-1}); closed form with a quadrature fallback at low lambda Delta.
double project_polynomial(const LayerBasis& layer, int n, std::span<const double> shifted_coefficients);

/// <f, phihat_n> over the layer by adaptive Gauss-Kronrod quadrature on [a, b].
double project_function(const LayerBasis& layer, int n, const std::function<double(double)>& f, double a,
                        double b, double* error_estimate = nullptr);

}  // namespace layerdiff
