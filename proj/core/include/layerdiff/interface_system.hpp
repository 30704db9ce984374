#pragma once

// Laplace-domain interface system. Substituting the truncated series into
//
//   ubar_i(l_i, s) - theta_i ubar_{i+1}(l_i, s) + gbar_i(s) / H_i = 0,   i = 1..m-1
//
// gives a tridiagonal system A(s) x = b(s) in x = (gbar_1, ..., gbar_{m-1}).

#include <layerdiff/eigenbasis.hpp>
#include <layerdiff/liftings.hpp>
#include <layerdiff/problem.hpp>

#include <complex>
#include <vector>

namespace layerdiff {

/// cbar_{i,n}(s) = c1 + c2 gbar_{i-1}(s) + c3 gbar_i(s)
struct SplitCoefficients {
    cplx c1, c2, c3;
};

/// beta points at beta_{i,1..5,n}.
SplitCoefficients split_coefficients(double D, double lambda, const double beta[5], cplx s);
SplitCoefficients split_coefficients(const ValidatedProblem& problem, const EigenBasis& basis,
                                     const BetaTable& betas, int i, int n, cplx s);

struct InterfaceSystem {
    cplx s;
    std::vector<cplx> sub;    // sub[r] = a_{r,r-1}, sub[0] unused
    std::vector<cplx> diag;   // a_{r,r}
    std::vector<cplx> super;  // super[r] = a_{r,r+1}, last unused
    std::vector<cplx> rhs;

    int order() const noexcept { return static_cast<int>(diag.size()); }
    /// ||A x - b||_inf / ||b||_inf (absolute when b = 0).
    double relative_residual(const std::vector<cplx>& x) const;
};

/// Precomputes everything in A(s), b(s) that does not depend on s so each
/// assembly costs one pass over (layer, n).
class InterfaceAssembler {
public:
    InterfaceAssembler(const ValidatedProblem& problem, const EigenBasis& basis, const BetaTable& betas,
                       const std::vector<LiftingPair>& liftings);

    int order() const noexcept { return m_ - 1; }
    /// m = 1 yields an empty system.
    InterfaceSystem assemble(cplx s, cplx g0bar, cplx gmbar) const;

    /// Per-layer endpoint sums at s: sum_n c^{(k)}_{i,n}(s) phihat_{i,n}(end).
    struct EndSums {
        cplx S1, S2, S3;
    };
    void end_sums(int layer, cplx s, EndSums& left, EndSums& right) const;

private:
    struct Mode {
        double decay;   // D lambda^2
        double a2, a3;  // D (beta3 + lambda^2 beta1), D (beta4 + lambda^2 beta2)
        double b5;
        double eL, eR;  // phihat at l_{i-1}, l_i
    };
    int m_ = 0;
    std::vector<std::vector<Mode>> modes_;
    std::vector<double> b1L_, b1R_, b2L_, b2R_;      // sum beta_{1,2} * endpoint value
    std::vector<double> psi1L_, psi1R_, psi2L_, psi2R_;
    std::vector<double> theta_, invH_;
};

/// Free-function form of InterfaceAssembler::assemble.
InterfaceSystem assemble(cplx s, const ValidatedProblem& problem, const EigenBasis& basis, const BetaTable& betas,
                         const std::vector<LiftingPair>& liftings, cplx g0bar, cplx gmbar);

/// Thomas elimination without pivoting, checked by the residual; falls back to
/// a pivoted dense LU when the residual exceeds 1e-10. Throws NumericalError
/// naming the interface and s if both fail.
std::vector<cplx> solve(const InterfaceSystem& system);

}  // namespace layerdiff
