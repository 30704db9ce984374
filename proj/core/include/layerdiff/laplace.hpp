#pragma once

// Numerical inverse Laplace transform by the best (Np, Np) rational
// approximation to e^z on the negative real axis:
//
//   f(t) ~ -2 Re sum_{k=1}^{Np/2} c_k F(z_k / t) / t
//
// Only the poles with Im z > 0 are stored; their conjugates contribute the
// complex-conjugate terms, hence the factor 2 Re.

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace layerdiff {

using cplx = std::complex<double>;

class InversionTable {
public:
    /// Tabulated: constants computed offline in 40-digit arithmetic and embedded.
    /// Computed: the Caratheodory-Fejer construction run in double precision.
    enum class Source { Tabulated, Computed };

    /// Throws UnsupportedError for orders outside supported_orders(), and
    /// NumericalError if the 1/s self-test misses 1e-11 at t = 0.1, 1, 10.
    static InversionTable build(int order = 14, Source source = Source::Tabulated);
    static std::vector<int> supported_orders();

    int order() const noexcept { return order_; }
    Source source() const noexcept { return source_; }
    std::span<const cplx> poles() const noexcept { return poles_; }
    std::span<const cplx> residues() const noexcept { return residues_; }

    /// The Np/2 evaluation points z_k / t.
    void nodes(double t, std::span<cplx> out) const;
    std::vector<cplx> nodes(double t) const;

    double invert(const std::function<cplx(cplx)>& F, double t) const;

    /// Inverse transform of gbar(s) / (s + D lambda^2), i.e. the convolution
    /// int_0^t g(tau) exp(-D lambda^2 (t - tau)) dtau.
    double invert_filtered(const std::function<cplx(cplx)>& gbar, double D, double lambda,
                           double t) const;

    /// Same as invert_filtered with gbar already evaluated at nodes(t) and
    /// decay = D lambda^2.
    double invert_filtered(std::span<const cplx> gbar_at_nodes, double decay, double t) const;
    /// Same as invert with F already evaluated at nodes(t).
    double invert(std::span<const cplx> F_at_nodes, double t) const;

private:
    InversionTable() = default;
    void self_test() const;

    int order_ = 0;
    Source source_ = Source::Tabulated;
    std::vector<cplx> poles_;
    std::vector<cplx> residues_;
};

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
cplx faddeeva(cplx z);

/// erf for complex argument; relative accuracy ~1e-13 for |z| <= 10.
/// Throws NumericalError when the result overflows (large |Im z|).
cplx complex_erf(cplx z);

/// Laplace transform of peak * exp(-(t - mu)^2 / sigma^2) over t in [0, inf).
/// Throws NumericalError on overflow, which usually means the time unit is
/// too small relative to sigma.
cplx gaussian_transform(cplx s, double peak, double mu, double sigma);

}  // namespace layerdiff
