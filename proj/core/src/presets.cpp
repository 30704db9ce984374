#include <layerdiff/presets.hpp>

#include <functional>

namespace layerdiff {

namespace {

ExternalBoundary dirichlet(double value) { return {1.0, 0.0, BoundaryFunction::constant(value)}; }
ExternalBoundary no_flux() { return {0.0, 1.0, BoundaryFunction::constant(0.0)}; }

RunConfig two_layer_case(std::string name, InterfaceDescription iface, double gamma1, double gamma2) {
    RunConfig c;
    c.name = std::move(name);
    auto& P = c.problem;
    P.breakpoints = {0.0, 0.5, 1.0};
    P.diffusivity = {1.0, 0.1};
    P.gamma = {gamma1, gamma2};
    P.initial = {InitialCondition::constant(0.0), InitialCondition::constant(0.0)};
    P.left = dirichlet(1.0);
    P.right = no_flux();
    c.interfaces = {iface};
    P.apply_interfaces(c.interfaces);
    c.times = {0.01, 0.2, 5.0};
    return c;
}

RunConfig eight_layer() {
    RunConfig c;
    c.name = "eight-layer";
    auto& P = c.problem;
    const int m = 8;
    for (int i = 0; i <= m; ++i) P.breakpoints.push_back(static_cast<double>(i) / m);
    for (int i = 1; i <= m; ++i) {
        P.diffusivity.push_back(i % 2 == 1 ? 1.0 : 0.1);
        P.initial.push_back(InitialCondition::constant(0.0));
    }
    P.gamma = P.diffusivity;
    P.left = dirichlet(1.0);
    P.right = no_flux();
    c.interfaces.assign(m - 1, {InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    P.apply_interfaces(c.interfaces);
    c.times = {0.01, 0.2, 3.0};
    c.fdm = {200, 5e-5};
    return c;
}

// R C_t = D C_xx with eps D-weighted flux continuity; Gaussian inlet, closed base.
// Lengths in m, time in years.
RunConfig liu_contaminant() {
    RunConfig c;
    c.name = "liu-contaminant";
    auto& P = c.problem;
    const double R[2] = {42.42, 1.67};
    const double D[2] = {1.6e-10 * kSecondsPerYear, 2.13e-10 * kSecondsPerYear};
    const double eps = 0.54, rho_b = 1.4;
    P.breakpoints = {0.0, 0.05, 0.2};
    for (int i = 0; i < 2; ++i) {
        P.diffusivity.push_back(D[i] / R[i]);
        P.gamma.push_back(eps * D[i]);
        P.initial.push_back(InitialCondition::constant(0.0));
    }
    P.left = {1.0, 0.0, BoundaryFunction::gaussian(1.0, 2.15, 1.0)};
    P.right = no_flux();
    c.interfaces = {{InterfaceKind::PerfectContact, std::nullopt, std::nullopt}};
    P.apply_interfaces(c.interfaces);
    c.times = {1.0, 2.15, 4.0, 8.0, 16.0};
    c.fdm = {200, 0.01};
    c.solver.Np = 16;  // the inlet pulse is narrow relative to t; order 14 leaves ~1e-4 near the peak
    c.postprocess = Postprocess{"total-concentration", {eps * R[0] / rho_b, eps * R[1] / rho_b}};
    return c;
}

// rho c_p T_t = k T_xx, perfect thermal contact. cm, hours, degrees C.
RunConfig heat_composite() {
    RunConfig c;
    c.name = "heat-composite";
    auto& P = c.problem;
    const double k[3] = {297.64, 1741.18, 565.51};
    const double rho[3] = {11.08, 2.71, 7.4};
    const double cp[3] = {0.031, 0.181, 0.054};
    P.breakpoints = {0.0, 2.0, 4.0, 6.0};
    for (int i = 0; i < 3; ++i) {
        P.diffusivity.push_back(k[i] / (rho[i] * cp[i]));
        P.gamma.push_back(k[i]);
        P.initial.push_back(InitialCondition::constant(0.0));
    }
    P.left = dirichlet(400.0);
    P.right = dirichlet(0.0);
    c.interfaces.assign(2, {InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    P.apply_interfaces(c.interfaces);
    c.times = {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 1.0};
    c.fdm = {200, 1e-4};
    return c;
}

// C_t = D/(1 + sigma) C_xx, C_1 = alpha C_2 at the interface, sigma = 0.
RunConfig trefry_analyte() {
    RunConfig c;
    c.name = "trefry-analyte";
    auto& P = c.problem;
    P.breakpoints = {0.0, 1.0, 2.0};
    P.diffusivity = {5.0, 0.05};
    P.gamma = P.diffusivity;
    P.initial = {InitialCondition::constant(1.0), InitialCondition::constant(0.0)};
    P.left = no_flux();
    P.right = dirichlet(0.0);
    c.interfaces = {{InterfaceKind::Partition, std::nullopt, 2.0}};
    P.apply_interfaces(c.interfaces);
    c.times = {0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0};
    c.fdm = {200, 1e-3};
    return c;
}

// c_t = D c_xx + c with smoothed point sources; solved for u = e^{-t} c.
RunConfig brain_tumour() {
    RunConfig c;
    c.name = "brain-tumour";
    auto& P = c.problem;
    P.breakpoints = {-5.0, -1.0, 1.0, 5.0};
    P.diffusivity = {0.2, 1.0, 0.2};
    P.gamma = P.diffusivity;
    P.initial = {InitialCondition::dirac_pulse(-4.0, 0.1), InitialCondition::constant(0.0),
                 InitialCondition::dirac_pulse(2.0, 0.1)};
    P.left = no_flux();
    P.right = no_flux();
    c.interfaces.assign(2, {InterfaceKind::Implicit, std::nullopt, std::nullopt});
    P.apply_interfaces(c.interfaces);
    for (int k = 1; k <= 20; ++k) c.times.push_back(0.2 * k);
    c.reaction_rate = 1.0;
    c.fdm = {400, 1e-3};
    return c;
}

struct Entry {
    const char* name;
    const char* summary;
    std::function<RunConfig()> make;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"case-a", "two layers, perfect contact, gamma = D",
         [] { return two_layer_case("case-a", {InterfaceKind::PerfectContact, std::nullopt, std::nullopt}, 1.0, 0.1); }},
        {"case-b", "two layers, jump condition H = 0.5",
         [] { return two_layer_case("case-b", {InterfaceKind::Jump, 0.5, std::nullopt}, 1.0, 0.1); }},
        {"case-c", "two layers, partition theta = 1.2",
         [] { return two_layer_case("case-c", {InterfaceKind::Partition, std::nullopt, 1.2}, 1.0, 0.1); }},
        {"case-d", "two layers, perfect contact with gamma_1 = gamma_2 = 2",
         [] { return two_layer_case("case-d", {InterfaceKind::PerfectContact, std::nullopt, std::nullopt}, 2.0, 2.0); }},
        {"eight-layer", "eight alternating layers on [0, 1], D = 1, 0.1", eight_layer},
        {"liu-contaminant", "aquitard contaminant transport with a Gaussian inlet (m, yr)", liu_contaminant},
        {"heat-composite", "three-layer composite slab, 400 C / 0 C ends (cm, h)", heat_composite},
        {"trefry-analyte", "analyte transport with partition coefficient 2", trefry_analyte},
        {"brain-tumour", "reaction-diffusion tumour model with two point sources", brain_tumour},
    };
    return r;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
    std::vector<PresetInfo> out;
    for (const auto& e : registry()) out.push_back({e.name, e.summary});
    return out;
}

RunConfig preset(std::string_view name) {
    for (const auto& e : registry())
        if (name == e.name) return e.make();
    std::string known;
    for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + std::string(e.name);
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace layerdiff
