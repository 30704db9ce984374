#pragma once

#include <layerdiff/config.hpp>
#include <layerdiff/presets.hpp>
#include <layerdiff/semianalytic.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <limits>

namespace layerdiff::test {

inline ValidatedProblem preset_problem(const char* name) { return preset(name).diffusion_problem(); }

/// Two-layer [0, 0.5, 1] problem with Dirichlet 1 on the left and no flux on the right.
inline ProblemSpec two_layer_spec(InterfaceDescription iface, double D1 = 1.0, double D2 = 0.1,
                                  double gamma1 = -1.0, double gamma2 = -1.0) {
    ProblemSpec P;
    P.breakpoints = {0.0, 0.5, 1.0};
    P.diffusivity = {D1, D2};
    P.gamma = {gamma1 > 0 ? gamma1 : D1, gamma2 > 0 ? gamma2 : D2};
    P.initial = {InitialCondition::constant(0.0), InitialCondition::constant(0.0)};
    P.left = {1.0, 0.0, BoundaryFunction::constant(1.0)};
    P.right = {0.0, 1.0, BoundaryFunction::constant(0.0)};
    P.apply_interfaces({iface});
    return P;
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-13, &err);
}

/// Second-order one-sided derivative of f at x, stepping into the layer in direction `dir` (+1 or -1).
inline double one_sided_derivative(const std::function<double(double)>& f, double x, double h, int dir) {
    return dir * (-3.0 * f(x) + 4.0 * f(x + dir * h) - f(x + 2.0 * dir * h)) / (2.0 * h);
}

inline double max_abs(const SolutionField& f, std::size_t k) {
    double m = 0.0;
    for (const auto& layer : f.u[k])
        for (double v : layer) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace layerdiff::test
