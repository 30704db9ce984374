#pragma once

// Problem description for one-dimensional diffusion through m layers
// l_0 < l_1 < ... < l_m, with
//
//   du_i/dt = D_i d2u_i/dx2                                on (l_{i-1}, l_i)
//   a_L u_1(l_0) - b_L u_1'(l_0) = g_0(t)
//   a_R u_m(l_m) + b_R u_m'(l_m) = g_m(t)
//   gamma_i u_i'(l_i) = H_i (theta_i u_{i+1}(l_i) - u_i(l_i))
//   gamma_i u_i'(l_i) = gamma_{i+1} u_{i+1}'(l_i)
//
// Units are up to the caller: lengths, times and D must be consistent
// (D in length^2/time). Nothing here converts units.

#include <layerdiff/errors.hpp>

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace layerdiff {

using cplx = std::complex<double>;

/// Time-dependent external boundary data g(t) together with its Laplace
/// transform. The transform must be evaluable for complex s with Re(s) > 0;
/// the inversion nodes lie off the real axis.
class BoundaryFunction {
public:
    enum class Kind { Constant, Linear, ExpRise, Gaussian, Custom };

    BoundaryFunction();  // g = 0

    static BoundaryFunction constant(double value);
    /// g(t) = intercept + slope t
    static BoundaryFunction linear(double intercept, double slope);
    /// g(t) = amplitude (1 - exp(-rate t))
    static BoundaryFunction exp_rise(double amplitude, double rate);
    /// g(t) = peak exp(-(t - mu)^2 / sigma^2)
    static BoundaryFunction gaussian(double peak, double mu, double sigma);
    static BoundaryFunction custom(std::function<double(double)> time_domain,
                                   std::function<cplx(cplx)> laplace_domain,
                                   bool constant_in_time = false);

    double operator()(double t) const;
    cplx laplace(cplx s) const;

    bool constant_in_time() const noexcept;
    Kind kind() const noexcept { return kind_; }
    /// Named parameters in declaration order (value | intercept,slope | amplitude,rate | peak,mu,sigma).
    const std::vector<double>& parameters() const noexcept { return params_; }
    /// e^{-rate t} g(t); transform becomes gbar(s + rate).
    BoundaryFunction damped(double rate) const;
    double damping() const noexcept { return damping_; }

private:
    Kind kind_ = Kind::Constant;
    std::vector<double> params_;
    double damping_ = 0.0;
    std::shared_ptr<const std::function<double(double)>> custom_time_;
    std::shared_ptr<const std::function<cplx(cplx)>> custom_laplace_;
    bool custom_constant_ = false;
};

/// Initial data f_i on one layer.
class InitialCondition {
public:
    enum class Kind { Polynomial, DiracPulse, Custom };

    InitialCondition();  // f = 0

    static InitialCondition constant(double value);
    /// f(x) = sum_k coefficients[k] x^k (global coordinate x)
    static InitialCondition polynomial(std::vector<double> coefficients);
    /// Smoothed point source exp(-(x - center)^2 / width^2) / (width sqrt(pi)).
    static InitialCondition dirac_pulse(double center, double width);
    static InitialCondition custom(std::function<double(double)> f);

    double operator()(double x) const;

    Kind kind() const noexcept { return kind_; }
    bool is_constant() const noexcept;
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }

private:
    Kind kind_ = Kind::Polynomial;
    std::vector<double> coeffs_;
    double center_ = 0.0;
    double width_ = 0.0;
    std::shared_ptr<const std::function<double(double)>> custom_;
};

/// Contact transfer coefficient H_i: a positive number or exactly infinite.
/// Infinite drops the 1/H term instead of dividing by a large float.
class ContactTransfer {
public:
    constexpr ContactTransfer() = default;  // infinite
    static constexpr ContactTransfer infinite() { return {}; }
    static ContactTransfer finite(double h);

    bool is_infinite() const noexcept { return infinite_; }
    double value() const;             // throws for infinite
    double inverse() const noexcept;  // 1/H, exactly 0 for infinite

    friend bool operator==(const ContactTransfer&, const ContactTransfer&) = default;

private:
    bool infinite_ = true;
    double value_ = 0.0;
};

enum class InterfaceKind { Implicit, PerfectContact, Jump, Partition, General };

std::string to_string(InterfaceKind kind);
std::optional<InterfaceKind> interface_kind_from_string(std::string_view name);

/// One interface in whichever family the user wrote it in.
struct InterfaceDescription {
    InterfaceKind kind = InterfaceKind::PerfectContact;
    std::optional<double> H;      // Jump, General (absent = infinite)
    std::optional<double> theta;  // Partition, General (absent = 1)
};

/// The general-form parameters of a single interface.
struct GeneralInterface {
    double gamma_left = 1.0;
    double gamma_right = 1.0;
    ContactTransfer H;
    double theta = 1.0;

    friend bool operator==(const GeneralInterface&, const GeneralInterface&) = default;
};

/// Maps any interface family onto the general form. `interface_index` only
/// labels diagnostics. Throws ValidationError on non-positive H or theta.
GeneralInterface normalize_interface(const InterfaceDescription& description,
                                     double D_left, double D_right,
                                     double gamma_left, double gamma_right,
                                     int interface_index = 1);

struct ExternalBoundary {
    double a = 0.0;
    double b = 0.0;
    BoundaryFunction g;
};

struct ProblemSpec {
    std::vector<double> breakpoints;       // l_0 .. l_m
    std::vector<double> diffusivity;       // D_1 .. D_m
    std::vector<double> gamma;             // gamma_1 .. gamma_m
    std::vector<ContactTransfer> contact;  // H_1 .. H_{m-1}
    std::vector<double> partition;         // theta_1 .. theta_{m-1}
    ExternalBoundary left;                 // a_L, b_L, g_0
    ExternalBoundary right;                // a_R, b_R, g_m
    std::vector<InitialCondition> initial; // f_1 .. f_m

    int layer_count() const noexcept { return static_cast<int>(diffusivity.size()); }

    /// Fills gamma/contact/partition from interface descriptions. Implicit
    /// interfaces force gamma = D on both neighbours. `gamma` must already
    /// hold per-layer values (or be empty, meaning gamma = D).
    void apply_interfaces(const std::vector<InterfaceDescription>& interfaces);
};

/// Every violated invariant; empty when the spec is valid.
std::vector<Violation> check(const ProblemSpec& spec);

/// Immutable, validated problem. Cheap to copy and safe to share between threads.
class ValidatedProblem {
public:
    const ProblemSpec& spec() const noexcept { return *spec_; }

    int layers() const noexcept { return spec_->layer_count(); }
    int interfaces() const noexcept { return layers() - 1; }

    /// Breakpoint l_i, i = 0..m.
    double l(int i) const { return spec_->breakpoints[static_cast<std::size_t>(i)]; }
    /// Layer quantities are 1-based as in the model equations.
    double D(int layer) const { return spec_->diffusivity[idx(layer)]; }
    double gamma(int layer) const { return spec_->gamma[idx(layer)]; }
    double width(int layer) const { return l(layer) - l(layer - 1); }
    const InitialCondition& initial(int layer) const { return spec_->initial[idx(layer)]; }
    /// Interface quantities, 1-based (interface i sits at l_i).
    const ContactTransfer& H(int iface) const { return spec_->contact[idx(iface)]; }
    double theta(int iface) const { return spec_->partition[idx(iface)]; }

    const ExternalBoundary& left() const noexcept { return spec_->left; }
    const ExternalBoundary& right() const noexcept { return spec_->right; }

    /// Layer containing x (interior points of a breakpoint resolve to the left layer).
    int layer_of(double x) const;

private:
    friend ValidatedProblem validate(ProblemSpec spec);
    explicit ValidatedProblem(std::shared_ptr<const ProblemSpec> spec) : spec_(std::move(spec)) {}
    static std::size_t idx(int one_based) { return static_cast<std::size_t>(one_based - 1); }

    std::shared_ptr<const ProblemSpec> spec_;
};

/// Throws ValidationError listing every violation.
ValidatedProblem validate(ProblemSpec spec);

/// du/dt = D d2u/dx2 + rate u on every layer.
struct ReactionDiffusionSpec {
    ProblemSpec diffusion;
    std::vector<double> reaction_rate;  // per layer
};

/// Diffusion-only problem for u plus the rule c(x,t) = e^{rate t} u(x,t).
struct ReactionWrap {
    ProblemSpec problem;
    double rate = 0.0;
    double scale(double t) const;
};

/// Only a uniform rate of 0 or 1 is supported; anything else throws UnsupportedError.
ReactionWrap reaction_substitution_wrap(const ReactionDiffusionSpec& raw);

}  // namespace layerdiff
