#include <layerdiff/eigenbasis.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace layerdiff {

namespace {

using std::numbers::pi;

EndCondition classify(double a, double b) {
    if (b == 0.0) return EndCondition::Dirichlet;
    if (a == 0.0) return EndCondition::Neumann;
    return EndCondition::Robin;
}

double phase(double a, double b, double lambda) { return std::atan2(b * lambda, a); }

// Root of lambda*width + alpha(lambda) + beta(lambda) = (n+1) pi in [n pi/width, (n+1) pi/width].
double robin_root(const LayerBasis& lb, int n) {
    const double target = (n + 1) * pi;
    auto Phi = [&](double lam) {
        return lam * lb.width + phase(lb.a_left, lb.b_left, lam) + phase(lb.a_right, lb.b_right, lam) - target;
    };
    double lo = n * pi / lb.width, hi = (n + 1) * pi / lb.width;
    double flo = Phi(lo), fhi = Phi(hi);
    if (!(flo <= 0.0 && fhi >= 0.0)) {
        std::ostringstream os;
        os << "eigenvalue bracket failure in layer " << lb.layer << ", n = " << n << ", bracket [" << lo << ", " << hi
           << "]";
        throw NumericalError(os.str());
    }
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = Phi(mid);
        if (fm == 0.0) return mid;
        (fm < 0.0 ? lo : hi) = mid;
    }
    double lam = 0.5 * (lo + hi);
    auto dphase = [lam](double a, double b) { return a * b / (a * a + b * b * lam * lam); };
    const double d = lb.width + dphase(lb.a_left, lb.b_left) + dphase(lb.a_right, lb.b_right);
    const double step = lam - Phi(lam) / d;
    if (step >= lo && step <= hi) lam = step;
    return lam;
}

}  // namespace

LayerBasis build_layer_basis(int layer, double left, double width, double a_left, double b_left, double a_right,
                             double b_right, int N) {
    LayerBasis lb;
    lb.layer = layer;
    lb.left = left;
    lb.width = width;
    lb.a_left = a_left;
    lb.b_left = b_left;
    lb.a_right = a_right;
    lb.b_right = b_right;
    lb.left_end = classify(a_left, b_left);
    lb.right_end = classify(a_right, b_right);

    const auto n_sz = static_cast<std::size_t>(N);
    for (auto* v : {&lb.lambda, &lb.alpha, &lb.beta, &lb.norm, &lb.at_left, &lb.at_right, &lb.dat_left, &lb.dat_right})
        v->resize(n_sz);

    const bool robin = lb.left_end == EndCondition::Robin || lb.right_end == EndCondition::Robin;
    auto fixed_phase = [](EndCondition e) { return e == EndCondition::Dirichlet ? 0.0 : pi / 2; };

    for (int n = 0; n < N; ++n) {
        double lam, al, be;
        if (!robin) {
            al = fixed_phase(lb.left_end);
            be = fixed_phase(lb.right_end);
            // Integer and half-integer multiples of pi, computed without phase round-off.
            const int quarter = (lb.left_end == EndCondition::Neumann) + (lb.right_end == EndCondition::Neumann);
            lam = ((n + 1) - 0.5 * quarter) * pi / width;
        } else {
            lam = robin_root(lb, n);
            al = phase(a_left, b_left, lam);
            be = phase(a_right, b_right, lam);
        }
        const auto k = static_cast<std::size_t>(n);
        lb.lambda[k] = lam;
        lb.alpha[k] = al;
        lb.beta[k] = be;
        double n2;
        if (lam == 0.0) {
            n2 = width * std::sin(al) * std::sin(al);
        } else {
            // int_0^width sin^2(lam xi + al) = width/2 - (sin(2(lam width + al)) - sin(2 al)) / (4 lam),
            // and lam width + al = (n+1) pi - be.
            n2 = 0.5 * width + (std::sin(2.0 * be) + std::sin(2.0 * al)) / (4.0 * lam);
        }
        lb.norm[k] = std::sqrt(n2);
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        lb.at_left[k] = std::sin(al) / lb.norm[k];
        lb.at_right[k] = sgn * std::sin(be) / lb.norm[k];
        lb.dat_left[k] = lam * std::cos(al) / lb.norm[k];
        lb.dat_right[k] = -sgn * lam * std::cos(be) / lb.norm[k];
    }
    return lb;
}

double LayerBasis::value(int n, double x) const {
    const auto k = static_cast<std::size_t>(n);
    const double xi = x - left;
    if (xi <= 0.5 * width) return std::sin(lambda[k] * xi + alpha[k]) / norm[k];
    // Reflected form about the right end keeps full accuracy near l_i.
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::sin(beta[k] + lambda[k] * (width - xi)) / norm[k];
}

double LayerBasis::derivative(int n, double x) const {
    const auto k = static_cast<std::size_t>(n);
    const double xi = x - left;
    if (xi <= 0.5 * width) return lambda[k] * std::cos(lambda[k] * xi + alpha[k]) / norm[k];
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return -sgn * lambda[k] * std::cos(beta[k] + lambda[k] * (width - xi)) / norm[k];
}

namespace {
void check_in_layer(const LayerBasis& lb, double x) {
    const double tol = 1e-12 * (std::abs(lb.left) + lb.width);
    if (x < lb.left - tol || x > lb.left + lb.width + tol) {
        std::ostringstream os;
        os << "x = " << x << " lies outside layer " << lb.layer << " [" << lb.left << ", " << lb.left + lb.width << "]";
        throw Error(os.str());
    }
}
}  // namespace

double EigenBasis::eval(int i, int n, double x) const {
    const auto& lb = layer(i);
    check_in_layer(lb, x);
    return lb.value(n, x);
}

double EigenBasis::eval_derivative(int i, int n, double x) const {
    const auto& lb = layer(i);
    check_in_layer(lb, x);
    return lb.derivative(n, x);
}

void EigenBasis::write_csv(std::ostream& os) const {
    const auto old = os.precision(17);
    os << "layer,n,lambda,norm\n";
    for (const auto& lb : layers_)
        for (int n = 0; n < N_; ++n)
            os << lb.layer << ',' << n << ',' << lb.lambda[static_cast<std::size_t>(n)] << ','
               << lb.norm[static_cast<std::size_t>(n)] << '\n';
    os.precision(old);
}

EigenBasis build_basis(const ValidatedProblem& p, int N) {
    if (N < 1) throw ValidationError("N >= 1 fails", N);
    EigenBasis basis;
    basis.N_ = N;
    const int m = p.layers();
    for (int i = 1; i <= m; ++i) {
        double aL = 0.0, bL = 1.0, aR = 0.0, bR = 1.0;
        if (i == 1) {
            aL = p.left().a;
            bL = p.left().b;
        }
        if (i == m) {
            aR = p.right().a;
            bR = p.right().b;
        }
        basis.layers_.push_back(build_layer_basis(i, p.l(i - 1), p.width(i), aL, bL, aR, bR, N));
    }
    return basis;
}

}  // namespace layerdiff
