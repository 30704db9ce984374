#include <layerdiff/problem.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <layerdiff/laplace.hpp>

namespace layerdiff {

namespace {

std::string join_violations(const std::vector<Violation>& v) {
    std::ostringstream os;
    os << "invalid problem:";
    for (const auto& x : v) {
        os << "\n  - " << x.constraint;
        if (x.index >= 0) os << " (index " << x.index << ")";
    }
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ValidationError::ValidationError(const std::string& constraint, int index)
    : ValidationError(std::vector<Violation>{{constraint, index}}) {}

ConfigError::ConfigError(std::string key_path, const std::string& what)
    : Error("config error at '" + key_path + "': " + what), key_path_(std::move(key_path)) {}

// ---------------------------------------------------------------- boundary functions

BoundaryFunction::BoundaryFunction() : kind_(Kind::Constant), params_{0.0} {}

BoundaryFunction BoundaryFunction::constant(double value) {
    BoundaryFunction g;
    g.params_ = {value};
    return g;
}

BoundaryFunction BoundaryFunction::linear(double intercept, double slope) {
    BoundaryFunction g;
    g.kind_ = Kind::Linear;
    g.params_ = {intercept, slope};
    return g;
}

BoundaryFunction BoundaryFunction::exp_rise(double amplitude, double rate) {
    BoundaryFunction g;
    g.kind_ = Kind::ExpRise;
    g.params_ = {amplitude, rate};
    return g;
}

BoundaryFunction BoundaryFunction::gaussian(double peak, double mu, double sigma) {
    if (!(sigma > 0.0)) throw ValidationError("gaussian boundary function needs sigma > 0", -1);
    BoundaryFunction g;
    g.kind_ = Kind::Gaussian;
    g.params_ = {peak, mu, sigma};
    return g;
}

BoundaryFunction BoundaryFunction::custom(std::function<double(double)> time_domain,
                                          std::function<cplx(cplx)> laplace_domain,
                                          bool constant_in_time) {
    BoundaryFunction g;
    g.kind_ = Kind::Custom;
    g.params_.clear();
    g.custom_time_ = std::make_shared<const std::function<double(double)>>(std::move(time_domain));
    g.custom_laplace_ = std::make_shared<const std::function<cplx(cplx)>>(std::move(laplace_domain));
    g.custom_constant_ = constant_in_time;
    return g;
}

double BoundaryFunction::operator()(double t) const {
    double v = 0.0;
    switch (kind_) {
        case Kind::Constant: v = params_[0]; break;
        case Kind::Linear: v = params_[0] + params_[1] * t; break;
        case Kind::ExpRise: v = params_[0] * -std::expm1(-params_[1] * t); break;
        case Kind::Gaussian: {
            const double z = (t - params_[1]) / params_[2];
            v = params_[0] * std::exp(-z * z);
            break;
        }
        case Kind::Custom: v = (*custom_time_)(t); break;
    }
    return damping_ == 0.0 ? v : v * std::exp(-damping_ * t);
}

cplx BoundaryFunction::laplace(cplx s) const {
    s += damping_;
    switch (kind_) {
        case Kind::Constant: return params_[0] / s;
        case Kind::Linear: return params_[0] / s + params_[1] / (s * s);
        case Kind::ExpRise: return params_[0] * params_[1] / (s * (s + params_[1]));
        case Kind::Gaussian: return gaussian_transform(s, params_[0], params_[1], params_[2]);
        case Kind::Custom: return (*custom_laplace_)(s);
    }
    return {};
}

bool BoundaryFunction::constant_in_time() const noexcept {
    if (damping_ != 0.0) return false;
    switch (kind_) {
        case Kind::Constant: return true;
        case Kind::Linear: return params_[1] == 0.0;
        case Kind::ExpRise: return params_[0] == 0.0 || params_[1] == 0.0;
        case Kind::Gaussian: return params_[0] == 0.0;
        case Kind::Custom: return custom_constant_;
    }
    return false;
}

BoundaryFunction BoundaryFunction::damped(double rate) const {
    BoundaryFunction g = *this;
    g.damping_ += rate;
    return g;
}

// ---------------------------------------------------------------- initial conditions

InitialCondition::InitialCondition() : coeffs_{0.0} {}

InitialCondition InitialCondition::constant(double value) { return polynomial({value}); }

InitialCondition InitialCondition::polynomial(std::vector<double> coefficients) {
    InitialCondition f;
    if (coefficients.empty()) coefficients.push_back(0.0);
    while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
    f.coeffs_ = std::move(coefficients);
    return f;
}

InitialCondition InitialCondition::dirac_pulse(double center, double width) {
    if (!(width > 0.0)) throw ValidationError("dirac pulse width must be > 0", -1);
    InitialCondition f;
    f.kind_ = Kind::DiracPulse;
    f.coeffs_.clear();
    f.center_ = center;
    f.width_ = width;
    return f;
}

InitialCondition InitialCondition::custom(std::function<double(double)> fn) {
    InitialCondition f;
    f.kind_ = Kind::Custom;
    f.coeffs_.clear();
    f.custom_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
    return f;
}

double InitialCondition::operator()(double x) const {
    switch (kind_) {
        case Kind::Polynomial: {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
            return acc;
        }
        case Kind::DiracPulse: {
            const double z = (x - center_) / width_;
            return std::exp(-z * z) / (width_ * std::sqrt(std::numbers::pi));
        }
        case Kind::Custom: return (*custom_)(x);
    }
    return 0.0;
}

bool InitialCondition::is_constant() const noexcept {
    return kind_ == Kind::Polynomial && coeffs_.size() == 1;
}

// ---------------------------------------------------------------- interfaces

ContactTransfer ContactTransfer::finite(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw ValidationError("H must be positive and finite (use infinite() for perfect transfer)", -1);
    ContactTransfer c;
    c.infinite_ = false;
    c.value_ = h;
    return c;
}

double ContactTransfer::value() const {
    if (infinite_) throw Error("ContactTransfer::value() on infinite H");
    return value_;
}

double ContactTransfer::inverse() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

std::string to_string(InterfaceKind kind) {
    switch (kind) {
        case InterfaceKind::Implicit: return "implicit";
        case InterfaceKind::PerfectContact: return "perfect";
        case InterfaceKind::Jump: return "jump";
        case InterfaceKind::Partition: return "partition";
        case InterfaceKind::General: return "general";
    }
    return "?";
}

std::optional<InterfaceKind> interface_kind_from_string(std::string_view name) {
    for (auto k : {InterfaceKind::Implicit, InterfaceKind::PerfectContact, InterfaceKind::Jump,
                   InterfaceKind::Partition, InterfaceKind::General})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

GeneralInterface normalize_interface(const InterfaceDescription& d, double D_left, double D_right,
                                     double gamma_left, double gamma_right, int interface_index) {
    std::vector<Violation> bad;
    const std::string tag = "interface " + std::to_string(interface_index) + ": ";
    GeneralInterface out;
    out.gamma_left = gamma_left;
    out.gamma_right = gamma_right;

    auto read_H = [&] {
        if (!d.H) return ContactTransfer::infinite();
        if (std::isinf(*d.H) && *d.H > 0) return ContactTransfer::infinite();
        if (!(*d.H > 0.0)) {
            bad.push_back({tag + "H > 0 fails (H = " + fmt(*d.H) + ")", interface_index});
            return ContactTransfer::infinite();
        }
        return ContactTransfer::finite(*d.H);
    };
    auto read_theta = [&] {
        if (!d.theta) return 1.0;
        if (!(*d.theta > 0.0) || !std::isfinite(*d.theta))
            bad.push_back({tag + "theta > 0 fails (theta = " + fmt(*d.theta) + ")", interface_index});
        return *d.theta;
    };

    switch (d.kind) {
        case InterfaceKind::Implicit:
            out.gamma_left = D_left;
            out.gamma_right = D_right;
            break;
        case InterfaceKind::PerfectContact: break;
        case InterfaceKind::Jump:
            if (!d.H) bad.push_back({tag + "jump interface needs H", interface_index});
            out.H = read_H();
            break;
        case InterfaceKind::Partition:
            if (!d.theta) bad.push_back({tag + "partition interface needs theta", interface_index});
            out.theta = read_theta();
            break;
        case InterfaceKind::General:
            out.H = read_H();
            out.theta = read_theta();
            break;
    }
    if (!(out.gamma_left > 0.0)) bad.push_back({tag + "gamma_left > 0 fails", interface_index});
    if (!(out.gamma_right > 0.0)) bad.push_back({tag + "gamma_right > 0 fails", interface_index});
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return out;
}

void ProblemSpec::apply_interfaces(const std::vector<InterfaceDescription>& interfaces) {
    const std::size_t m = diffusivity.size();
    if (interfaces.size() + 1 != m)
        throw ValidationError("need exactly m-1 = " + std::to_string(m == 0 ? 0 : m - 1) +
                                  " interfaces, got " + std::to_string(interfaces.size()),
                              -1);
    if (gamma.empty()) gamma = diffusivity;
    if (gamma.size() != m) throw ValidationError("gamma must have one entry per layer", -1);

    contact.assign(m - 1, ContactTransfer::infinite());
    partition.assign(m - 1, 1.0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const GeneralInterface g = normalize_interface(interfaces[i], diffusivity[i], diffusivity[i + 1],
                                                       gamma[i], gamma[i + 1], static_cast<int>(i) + 1);
        gamma[i] = g.gamma_left;
        gamma[i + 1] = g.gamma_right;
        contact[i] = g.H;
        partition[i] = g.theta;
    }
}

// ---------------------------------------------------------------- validation

std::vector<Violation> check(const ProblemSpec& s) {
    std::vector<Violation> v;
    const int m = s.layer_count();
    if (m == 0) {
        v.push_back({"m >= 1 fails (no layers)", -1});
        return v;
    }
    if (static_cast<int>(s.breakpoints.size()) != m + 1)
        v.push_back({"breakpoints must have m+1 = " + std::to_string(m + 1) + " entries", -1});
    if (static_cast<int>(s.gamma.size()) != m) v.push_back({"gamma must have m entries", -1});
    if (static_cast<int>(s.initial.size()) != m) v.push_back({"initial must have m entries", -1});
    if (static_cast<int>(s.contact.size()) != m - 1) v.push_back({"contact must have m-1 entries", -1});
    if (static_cast<int>(s.partition.size()) != m - 1) v.push_back({"partition must have m-1 entries", -1});

    for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
        if (!std::isfinite(s.breakpoints[i]))
            v.push_back({"l_" + std::to_string(i) + " is not finite", static_cast<int>(i)});
        if (i > 0 && !(s.breakpoints[i - 1] < s.breakpoints[i]))
            v.push_back({"l_" + std::to_string(i - 1) + " < l_" + std::to_string(i) + " fails",
                         static_cast<int>(i)});
    }
    for (int i = 0; i < m; ++i) {
        const double D = s.diffusivity[static_cast<std::size_t>(i)];
        if (!(D > 0.0) || !std::isfinite(D))
            v.push_back({"D_" + std::to_string(i + 1) + " > 0 fails", i + 1});
        if (i < static_cast<int>(s.gamma.size())) {
            const double g = s.gamma[static_cast<std::size_t>(i)];
            if (!(g > 0.0) || !std::isfinite(g))
                v.push_back({"gamma_" + std::to_string(i + 1) + " > 0 fails", i + 1});
        }
    }
    for (std::size_t i = 0; i < s.partition.size(); ++i)
        if (!(s.partition[i] > 0.0) || !std::isfinite(s.partition[i]))
            v.push_back({"theta_" + std::to_string(i + 1) + " > 0 fails", static_cast<int>(i) + 1});
    for (std::size_t i = 0; i < s.contact.size(); ++i)
        if (!s.contact[i].is_infinite() && !(s.contact[i].inverse() > 0.0))
            v.push_back({"H_" + std::to_string(i + 1) + " > 0 fails", static_cast<int>(i) + 1});

    auto check_bc = [&](const ExternalBoundary& b, const char* a, const char* bn, int idx) {
        if (!(b.a >= 0.0) || !std::isfinite(b.a)) v.push_back({std::string(a) + " >= 0 fails", idx});
        if (!(b.b >= 0.0) || !std::isfinite(b.b)) v.push_back({std::string(bn) + " >= 0 fails", idx});
        if (!(b.a + b.b > 0.0)) v.push_back({std::string(a) + " + " + bn + " > 0 fails", idx});
    };
    check_bc(s.left, "a_L", "b_L", 0);
    check_bc(s.right, "a_R", "b_R", m);
    return v;
}

ValidatedProblem validate(ProblemSpec spec) {
    auto v = check(spec);
    if (!v.empty()) throw ValidationError(std::move(v));
    return ValidatedProblem(std::make_shared<const ProblemSpec>(std::move(spec)));
}

int ValidatedProblem::layer_of(double x) const {
    const int m = layers();
    if (x < l(0) || x > l(m)) throw Error("x = " + fmt(x) + " outside the domain");
    for (int i = 1; i < m; ++i)
        if (x <= l(i)) return i;
    return m;
}

// ---------------------------------------------------------------- reaction term

double ReactionWrap::scale(double t) const { return rate == 0.0 ? 1.0 : std::exp(rate * t); }

ReactionWrap reaction_substitution_wrap(const ReactionDiffusionSpec& raw) {
    const auto m = raw.diffusion.diffusivity.size();
    double rate = 0.0;
    if (!raw.reaction_rate.empty()) {
        if (raw.reaction_rate.size() != m)
            throw ValidationError("reaction_rate must have one entry per layer", -1);
        rate = raw.reaction_rate.front();
        for (double r : raw.reaction_rate)
            if (r != rate) throw UnsupportedError("spatially varying reaction rate is not supported");
        if (rate != 0.0 && rate != 1.0)
            throw UnsupportedError("reaction rate " + fmt(rate) +
                                   " is not supported; only 0 or the unit rate 1");
    }
    ReactionWrap w{raw.diffusion, rate};
    if (rate != 0.0) {
        // c = e^{rate t} u: u sees boundary data e^{-rate t} g(t), and the
        // initial data is unchanged.
        w.problem.left.g = w.problem.left.g.damped(rate);
        w.problem.right.g = w.problem.right.g.damped(rate);
    }
    return w;
}

}  // namespace layerdiff
