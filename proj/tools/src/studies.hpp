#pragma once

// Convergence and cross-method studies shared by the command-line driver and
// the acceptance tests.

#include <layerdiff/config.hpp>
#include <layerdiff/fdm.hpp>
#include <layerdiff/semianalytic.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace layerdiff::tools {

enum class Method { SemiAnalytic, Classical };
enum class Reference { Classical, Fdm };

/// Least-squares p in eps ~ C N^{-p}. NaN when fewer than two usable points
/// (an exactly zero error has no logarithm).
double loglog_slope(std::span<const int> N, std::span<const double> eps);

struct ConvergenceOptions {
    std::vector<int> N;
    Method method = Method::SemiAnalytic;
    Reference reference = Reference::Classical;
    int reference_eigenvalues = 80;  // classical reference only
    FdmSettings fdm;                 // fdm reference: coarse grid, refined once and extrapolated
    int slope_window = 3;
};

struct ConvergenceRow {
    double t = 0.0;
    int N = 0;
    double epsilon = 0.0;
    double slope = 0.0;  // NaN for the first row of each time
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  // t outer, N inner
    bool has_slope = false;            // false when only one N was requested
    std::vector<std::string> warnings;
};

/// Throws UnsupportedError when a classical field is requested for a problem
/// outside the classical premise (time-dependent boundary data, m > 6).
ConvergenceReport convergence_study(const ValidatedProblem& problem, const Grid& grid, const SolverSettings& base,
                                    const ConvergenceOptions& options);

struct CompareRow {
    double t = 0.0;
    double max_rel_diff = 0.0;
    double richardson = 0.0;  // relative two-grid estimate of the fine FDM error
    double tolerance = 0.0;   // max(1e-4, 3 richardson)
    bool pass = false;
    std::optional<double> mass;        // semi-analytical total mass, no-flux problems only
    std::optional<double> mass_drift;  // |mass - mass at the first positive time| / |that mass|
};

struct CompareReport {
    std::vector<CompareRow> rows;
    bool conservation = false;
    bool all_pass() const;
};

inline constexpr double kAgreementFloor = 1e-4;

/// Semi-analytical field against the fine of two FDM grids, on the
/// diffusion-only field (before any reaction rescale).
CompareReport compare_study(const ValidatedProblem& problem, const Grid& grid, const SolverSettings& semi,
                            const FdmSettings& fdm);

/// True when both external ends carry zero-flux data.
bool no_flux_ends(const ValidatedProblem& problem);

}  // namespace layerdiff::tools
