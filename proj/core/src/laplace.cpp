#include <layerdiff/errors.hpp>
#include <layerdiff/laplace.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace layerdiff {

namespace {

struct TableRow {
    int order;
    double z[2];
    double c[2];
};

constexpr TableRow kTable[] = {
#include "cf_table_data.inc"
};

constexpr int kSupported[] = {12, 14, 16};
// Beyond 14 the relevant Hankel singular value sits at the round-off level.
constexpr int kMaxComputedOrder = 14;

// Caratheodory-Fejer approximation of exp on (-inf, 0] mapped to the unit
// circle by z = scale (q - 1)^2 / (q + 1)^2. Returns poles and residues for
// all `order` poles.
void caratheodory_fejer(int order, std::vector<cplx>& poles, std::vector<cplx>& residues) {
    using std::numbers::pi;
    constexpr int K = 75;
    constexpr int nf = 1024;
    constexpr double scale = 9.0;
    const int n = order;

    std::vector<cplx> w(nf);
    std::vector<double> F(nf);
    for (int j = 0; j < nf; ++j) {
        w[j] = std::polar(1.0, 2.0 * pi * j / nf);
        const double t = w[j].real();
        F[j] = std::exp(scale * (t - 1.0) / (t + 1.0 + 1e-16));
    }
    // Chebyshev coefficients via the DFT on the circle.
    auto dft_coeff = [&](const auto& vals, int k) {
        cplx acc = 0.0;
        for (int j = 0; j < nf; ++j) acc += vals[j] * std::conj(std::pow(w[j], k));
        return acc;
    };
    std::vector<double> c(K + 1);
    for (int k = 0; k <= K; ++k) c[k] = dft_coeff(F, k).real() / nf;

    auto polyval_desc = [](const std::vector<cplx>& p, cplx x) {
        cplx acc = 0.0;
        for (const auto& a : p) acc = acc * x + a;
        return acc;
    };

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; i + j + 1 <= K && j < K; ++j) H(i, j) = c[i + j + 1];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double sv = svd.singularValues()(n);
    Eigen::VectorXd u(K), v = svd.matrixV().col(n);
    for (int i = 0; i < K; ++i) u(i) = svd.matrixU()(K - 1 - i, n);

    // r~ on the circle: f - s w^K u(w^-1)/v(w^-1) in DFT form.
    std::vector<cplx> rt(nf);
    for (int j = 0; j < nf; ++j) {
        cplx fu = 0.0, fv = 0.0, f = 0.0;
        const cplx wc = std::conj(w[j]);
        cplx p = 1.0;
        for (int k = 0; k < K; ++k) {
            fu += u(k) * p;
            fv += v(k) * p;
            p *= wc;
        }
        p = 1.0;
        for (int k = 0; k <= K; ++k) {
            f += c[k] * p;
            p *= w[j];
        }
        rt[j] = f - sv * std::pow(w[j], K) * fu / fv;
    }

    // Roots of v (highest power first) via its companion matrix.
    int lead = 0;
    while (lead < K && std::abs(v(lead)) < 1e-300) ++lead;
    const int deg = K - 1 - lead;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) C(0, i) = -v(lead + 1 + i) / v(lead);
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    // The CF denominator has exactly `order` roots outside the unit disk;
    // round-off can push a few near-unit roots across, so keep the largest.
    std::vector<cplx> q(es.eigenvalues().data(), es.eigenvalues().data() + deg);
    std::sort(q.begin(), q.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    if (static_cast<int>(q.size()) < n || std::abs(q[static_cast<std::size_t>(n - 1)]) <= 1.0)
        throw NumericalError("Caratheodory-Fejer: fewer than " + std::to_string(n) + " exterior roots");
    q.resize(static_cast<std::size_t>(n));

    auto poly_from_roots = [](const std::vector<cplx>& roots) {
        std::vector<cplx> p{1.0};
        for (const auto& r : roots) {
            p.push_back(0.0);
            for (std::size_t i = p.size() - 1; i > 0; --i) p[i] -= r * p[i - 1];
        }
        return p;
    };
    const auto qc = poly_from_roots(q);
    std::vector<cplx> pt(nf);
    for (int j = 0; j < nf; ++j) pt[j] = rt[j] * polyval_desc(qc, w[j]);
    std::vector<cplx> ptc(n + 1);
    for (int k = 0; k <= n; ++k) ptc[n - k] = dft_coeff(pt, k).real() / nf;

    poles.clear();
    residues.clear();
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> others = q;
        others.erase(others.begin() + k);
        const cplx ck = polyval_desc(ptc, q[k]) / polyval_desc(poly_from_roots(others), q[k]);
        const cplx zk = scale * (q[k] - 1.0) * (q[k] - 1.0) / ((q[k] + 1.0) * (q[k] + 1.0));
        poles.push_back(zk);
        residues.push_back(4.0 * ck * zk / (q[k] * q[k] - 1.0));
    }
}

void check_finite(cplx v, std::size_t k, cplx node) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "Laplace inversion: non-finite transform value at node " << k << " (s = " << node << ")";
        throw NumericalError(os.str());
    }
}

}  // namespace

std::vector<int> InversionTable::supported_orders() { return {std::begin(kSupported), std::end(kSupported)}; }

InversionTable InversionTable::build(int order, Source source) {
    if (std::find(std::begin(kSupported), std::end(kSupported), order) == std::end(kSupported)) {
        std::ostringstream os;
        os << "inversion order " << order << " is not supported; supported orders:";
        for (int o : kSupported) os << ' ' << o;
        throw UnsupportedError(os.str());
    }
    InversionTable tab;
    tab.order_ = order;
    tab.source_ = source;
    if (source == Source::Tabulated) {
        for (const auto& row : kTable)
            if (row.order == order) {
                tab.poles_.emplace_back(row.z[0], row.z[1]);
                tab.residues_.emplace_back(row.c[0], row.c[1]);
            }
    } else {
        if (order > kMaxComputedOrder)
            throw UnsupportedError("inversion order " + std::to_string(order) +
                                   " is only available from the tabulated source; the double-precision "
                                   "construction supports orders up to " + std::to_string(kMaxComputedOrder));
        std::vector<cplx> z, c;
        caratheodory_fejer(order, z, c);
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < z.size(); ++k)
            if (z[k].imag() > 0.0) idx.push_back(k);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return z[a].imag() < z[b].imag(); });
        for (auto k : idx) {
            tab.poles_.push_back(z[k]);
            tab.residues_.push_back(c[k]);
        }
    }
    if (static_cast<int>(tab.poles_.size()) != order / 2)
        throw NumericalError("inversion table of order " + std::to_string(order) + " has " +
                             std::to_string(tab.poles_.size()) + " upper half-plane poles");
    tab.self_test();
    return tab;
}

void InversionTable::self_test() const {
    for (double t : {0.1, 1.0, 10.0}) {
        const double v = invert([](cplx s) { return 1.0 / s; }, t);
        if (!(std::abs(v - 1.0) < 1e-11))
            throw NumericalError("inversion table self-test failed: 1/s at t = " + std::to_string(t) +
                                 " gave error " + std::to_string(std::abs(v - 1.0)));
    }
}

void InversionTable::nodes(double t, std::span<cplx> out) const {
    for (std::size_t k = 0; k < poles_.size(); ++k) out[k] = poles_[k] / t;
}

std::vector<cplx> InversionTable::nodes(double t) const {
    std::vector<cplx> out(poles_.size());
    nodes(t, out);
    return out;
}

double InversionTable::invert(const std::function<cplx(cplx)>& F, double t) const {
    if (!(t > 0.0)) throw ValidationError("t > 0 fails (inversion)", -1);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < poles_.size(); ++k) {
        const cplx s = poles_[k] / t;
        const cplx v = F(s);
        check_finite(v, k, s);
        acc += residues_[k] * v;
    }
    return -2.0 * acc.real() / t;
}

double InversionTable::invert(std::span<const cplx> F_at_nodes, double t) const {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < poles_.size(); ++k) acc += residues_[k] * F_at_nodes[k];
    return -2.0 * acc.real() / t;
}

double InversionTable::invert_filtered(const std::function<cplx(cplx)>& gbar, double D, double lambda,
                                       double t) const {
    if (!(t > 0.0)) throw ValidationError("t > 0 fails (inversion)", -1);
    const double decay = D * lambda * lambda;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < poles_.size(); ++k) {
        const cplx s = poles_[k] / t;
        const cplx v = gbar(s);
        check_finite(v, k, s);
        acc += residues_[k] * v / (poles_[k] + decay * t);
    }
    return -2.0 * acc.real();
}

double InversionTable::invert_filtered(std::span<const cplx> gbar_at_nodes, double decay, double t) const {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < poles_.size(); ++k) acc += residues_[k] * gbar_at_nodes[k] / (poles_[k] + decay * t);
    return -2.0 * acc.real();
}

}  // namespace layerdiff
