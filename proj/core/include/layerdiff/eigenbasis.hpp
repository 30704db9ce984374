#pragma once

// Local eigenbases: for each layer the homogeneous Sturm-Liouville problem
// -phi'' = lambda^2 phi with the external condition at an outer end and
// phi' = 0 at every interior interface.
//
// Every eigenfunction is written as phi(xi) = sin(lambda xi + alpha) with
// xi = x - l_{i-1}. The phases alpha = atan2(b_L lambda, a_L) and
// beta = atan2(b_R lambda, a_R) satisfy lambda Delta + alpha + beta = (n+1) pi,
// which covers the Dirichlet (phase 0), Neumann (phase pi/2) and Robin cases
// with one formula.

#include <layerdiff/problem.hpp>

#include <iosfwd>
#include <vector>

namespace layerdiff {

enum class EndCondition { Dirichlet, Neumann, Robin };

struct LayerBasis {
    int layer = 0;                  // 1-based
    double left = 0.0;              // l_{i-1}
    double width = 0.0;             // l_i - l_{i-1}
    EndCondition left_end = EndCondition::Neumann;
    EndCondition right_end = EndCondition::Neumann;
    double a_left = 0.0, b_left = 1.0;    // a phi - b phi' = 0 at the left end
    double a_right = 0.0, b_right = 1.0;  // a phi + b phi' = 0 at the right end

    std::vector<double> lambda;    // strictly increasing
    std::vector<double> alpha;     // left phase per n
    std::vector<double> beta;      // right phase per n
    std::vector<double> norm;      // ||phi_n||_2 of the unnormalised sine
    std::vector<double> at_left;   // phihat_n(l_{i-1})
    std::vector<double> at_right;  // phihat_n(l_i)
    std::vector<double> dat_left;  // phihat_n'(l_{i-1})
    std::vector<double> dat_right; // phihat_n'(l_i)

    double value(int n, double x) const;
    double derivative(int n, double x) const;
};

class EigenBasis {
public:
    int size() const noexcept { return N_; }
    int layers() const noexcept { return static_cast<int>(layers_.size()); }
    /// 1-based layer index.
    const LayerBasis& layer(int i) const { return layers_.at(static_cast<std::size_t>(i - 1)); }

    double lambda(int i, int n) const { return layer(i).lambda[static_cast<std::size_t>(n)]; }

    /// Normalised eigenfunction phihat_{i,n}(x); throws Error when x lies outside layer i.
    double eval(int i, int n, double x) const;
    double eval_derivative(int i, int n, double x) const;

    /// Debug dump: layer,n,lambda,norm.
    void write_csv(std::ostream& os) const;

private:
    friend EigenBasis build_basis(const ValidatedProblem&, int);
    int N_ = 0;
    std::vector<LayerBasis> layers_;
};

/// Throws ValidationError for N < 1 and NumericalError if a Robin root
/// cannot be located in its bracket.
EigenBasis build_basis(const ValidatedProblem& problem, int N);

/// Builds the basis of a single layer with arbitrary end coefficients.
LayerBasis build_layer_basis(int layer, double left, double width, double a_left, double b_left,
                             double a_right, double b_right, int N);

}  // namespace layerdiff
