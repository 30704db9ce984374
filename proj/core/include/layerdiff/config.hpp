#pragma once

// JSON run configuration.
//
//   {
//     "name": "case-b",
//     "layers": [ {"left": 0, "right": 0.5, "diffusivity": 1, "gamma": 1, "initial": 0}, ... ],
//     "interfaces": [ {"kind": "jump", "H": 0.5} ],
//     "boundary_left":  {"aL": 1, "bL": 0, "g": 1},
//     "boundary_right": {"aR": 0, "bR": 1, "g": {"kind": "constant", "value": 0}},
//     "solver": {"N": 50, "Np": 14},
//     "fdm": {"cells_per_layer": 400, "dt": 0.001},
//     "times": [0.01, 0.2, 5],
//     "points_per_layer": 101,
//     "reaction": {"rate": 1},
//     "postprocess": {"kind": "total-concentration", "factor": [16.36, 0.644]}
//   }
//
// `initial` is a number, {"kind": "polynomial", "coefficients": [...]} or
// {"kind": "dirac", "center": c, "width": a}. `g` is a number or one of
// constant{value}, linear{intercept, slope}, exp-rise{amplitude, rate},
// gaussian{peak, mu, sigma}. Interface kinds are implicit, perfect, jump{H},
// partition{theta} and general{H, theta}; H may be "infinite".
// Doubles are written with 17 significant digits and read back exactly.

#include <layerdiff/fdm.hpp>
#include <layerdiff/problem.hpp>
#include <layerdiff/semianalytic.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace layerdiff {

struct Postprocess {
    std::string kind;            // "total-concentration"
    std::vector<double> factor;  // per-layer multiplier
};

struct RunConfig {
    std::string name;
    ProblemSpec problem;                         // general form, before any reaction wrap
    std::vector<InterfaceDescription> interfaces;  // as written
    SolverSettings solver;
    FdmSettings fdm;  // coarse grid of the finite-difference oracle
    std::vector<double> times;
    int points_per_layer = 101;
    std::optional<double> reaction_rate;
    std::optional<Postprocess> postprocess;

    /// Diffusion-only problem to hand to the solvers (reaction substitution applied).
    ValidatedProblem diffusion_problem() const;
    /// e^{rate t}, or 1 without a reaction term.
    double output_scale(double t) const;
};

/// Throws ConfigError carrying the offending key path, or ValidationError
/// when the problem itself is inconsistent.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

std::string to_json(const RunConfig& config);

}  // namespace layerdiff
