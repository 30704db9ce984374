#include <layerdiff/semianalytic.hpp>

#include <algorithm>
#include <cmath>

namespace layerdiff {

Grid Grid::uniform(const ValidatedProblem& p, int points, std::vector<double> times) {
    if (points < 2) throw ValidationError("points per layer >= 2 fails", points);
    Grid g;
    g.t = std::move(times);
    for (int i = 1; i <= p.layers(); ++i) {
        std::vector<double> xs(static_cast<std::size_t>(points));
        const double a = p.l(i - 1), b = p.l(i);
        for (int j = 0; j < points; ++j) xs[static_cast<std::size_t>(j)] = a + (b - a) * j / (points - 1);
        xs.back() = b;
        g.x.push_back(std::move(xs));
    }
    return g;
}

bool Grid::same_shape(const Grid& o) const {
    if (o.t != t || o.x.size() != x.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != o.x[i]) return false;
    return true;
}

std::vector<double> relative_error(const SolutionField& ref, const SolutionField& approx) {
    if (!ref.grid.same_shape(approx.grid)) throw Error("relative_error: grids do not match");
    std::vector<double> eps(ref.grid.t.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        double dmax = 0.0, rmax = 0.0;
        for (std::size_t i = 0; i < ref.u[k].size(); ++i)
            for (std::size_t j = 0; j < ref.u[k][i].size(); ++j) {
                dmax = std::max(dmax, std::abs(ref.u[k][i][j] - approx.u[k][i][j]));
                rmax = std::max(rmax, std::abs(ref.u[k][i][j]));
            }
        eps[k] = rmax > 0.0 ? dmax / rmax : dmax;
    }
    return eps;
}

std::vector<double> total_mass(const ValidatedProblem& p, const SolutionField& field) {
    std::vector<double> mass(field.grid.t.size(), 0.0);
    for (std::size_t k = 0; k < mass.size(); ++k)
        for (int i = 1; i <= p.layers(); ++i) {
            const auto& xs = field.grid.x[static_cast<std::size_t>(i - 1)];
            const auto& us = field.u[k][static_cast<std::size_t>(i - 1)];
            double acc = 0.0;
            for (std::size_t j = 1; j < xs.size(); ++j) acc += 0.5 * (xs[j] - xs[j - 1]) * (us[j] + us[j - 1]);
            mass[k] += p.gamma(i) / p.D(i) * acc;
        }
    return mass;
}

}  // namespace layerdiff
