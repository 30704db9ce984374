#include <layerdiff/interface_system.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace layerdiff {

SplitCoefficients split_coefficients(double D, double lambda, const double beta[5], cplx s) {
    const double decay = D * lambda * lambda;
    const cplx inv = 1.0 / (s + decay);
    return {beta[4] * inv, D * (beta[2] + lambda * lambda * beta[0]) * inv - beta[0],
            D * (beta[3] + lambda * lambda * beta[1]) * inv - beta[1]};
}

SplitCoefficients split_coefficients(const ValidatedProblem& p, const EigenBasis& basis, const BetaTable& B, int i,
                                     int n, cplx s) {
    const double beta[5] = {B(i, 1, n), B(i, 2, n), B(i, 3, n), B(i, 4, n), B(i, 5, n)};
    return split_coefficients(p.D(i), basis.lambda(i, n), beta, s);
}

InterfaceAssembler::InterfaceAssembler(const ValidatedProblem& p, const EigenBasis& basis, const BetaTable& B,
                                       const std::vector<LiftingPair>& lift)
    : m_(p.layers()) {
    const int N = basis.size();
    const auto m = static_cast<std::size_t>(m_);
    modes_.resize(m);
    for (auto* v : {&b1L_, &b1R_, &b2L_, &b2R_, &psi1L_, &psi1R_, &psi2L_, &psi2R_}) v->assign(m, 0.0);
    for (int i = 1; i <= m_; ++i) {
        const auto ii = static_cast<std::size_t>(i - 1);
        const auto& lb = basis.layer(i);
        const double D = p.D(i);
        auto& md = modes_[ii];
        md.resize(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n) {
            const auto k = static_cast<std::size_t>(n);
            const double lam2 = lb.lambda[k] * lb.lambda[k];
            md[k] = {D * lam2,
                     D * (B(i, 3, n) + lam2 * B(i, 1, n)),
                     D * (B(i, 4, n) + lam2 * B(i, 2, n)),
                     B(i, 5, n),
                     lb.at_left[k],
                     lb.at_right[k]};
            b1L_[ii] += B(i, 1, n) * lb.at_left[k];
            b1R_[ii] += B(i, 1, n) * lb.at_right[k];
            b2L_[ii] += B(i, 2, n) * lb.at_left[k];
            b2R_[ii] += B(i, 2, n) * lb.at_right[k];
        }
        const auto& L = lift[ii];
        psi1L_[ii] = L.psi1(p.l(i - 1));
        psi1R_[ii] = L.psi1(p.l(i));
        psi2L_[ii] = L.psi2(p.l(i - 1));
        psi2R_[ii] = L.psi2(p.l(i));
    }
    for (int i = 1; i < m_; ++i) {
        theta_.push_back(p.theta(i));
        invH_.push_back(p.H(i).inverse());
    }
}

void InterfaceAssembler::end_sums(int layer, cplx s, EndSums& left, EndSums& right) const {
    const auto ii = static_cast<std::size_t>(layer - 1);
    cplx l1 = 0.0, l2 = 0.0, l3 = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0;
    for (const auto& md : modes_[ii]) {
        const cplx inv = 1.0 / (s + md.decay);
        const cplx c1 = md.b5 * inv, c2 = md.a2 * inv, c3 = md.a3 * inv;
        l1 += c1 * md.eL;
        l2 += c2 * md.eL;
        l3 += c3 * md.eL;
        r1 += c1 * md.eR;
        r2 += c2 * md.eR;
        r3 += c3 * md.eR;
    }
    left = {l1, l2 - b1L_[ii], l3 - b2L_[ii]};
    right = {r1, r2 - b1R_[ii], r3 - b2R_[ii]};
}

InterfaceSystem InterfaceAssembler::assemble(cplx s, cplx g0bar, cplx gmbar) const {
    InterfaceSystem sys;
    sys.s = s;
    const int n = m_ - 1;
    if (n <= 0) return sys;
    const auto un = static_cast<std::size_t>(n);
    sys.sub.assign(un, 0.0);
    sys.diag.assign(un, 0.0);
    sys.super.assign(un, 0.0);
    sys.rhs.assign(un, 0.0);

    std::vector<EndSums> L(static_cast<std::size_t>(m_)), R(static_cast<std::size_t>(m_));
    for (int i = 1; i <= m_; ++i) end_sums(i, s, L[static_cast<std::size_t>(i - 1)], R[static_cast<std::size_t>(i - 1)]);

    for (int i = 1; i <= n; ++i) {
        const auto r = static_cast<std::size_t>(i - 1);  // row, also layer i
        const auto nx = r + 1;                           // layer i+1
        const double th = theta_[r];
        const cplx lower = psi1R_[r] + R[r].S2;
        sys.diag[r] = psi2R_[r] + R[r].S3 - th * (psi1L_[nx] + L[nx].S2) + invH_[r];
        const cplx upper = -th * (psi2L_[nx] + L[nx].S3);
        sys.rhs[r] = th * L[nx].S1 - R[r].S1;
        if (i > 1)
            sys.sub[r] = lower;
        else
            sys.rhs[r] -= lower * g0bar;
        if (i < n)
            sys.super[r] = upper;
        else
            sys.rhs[r] -= upper * gmbar;
    }
    return sys;
}

InterfaceSystem assemble(cplx s, const ValidatedProblem& p, const EigenBasis& basis, const BetaTable& B,
                         const std::vector<LiftingPair>& lift, cplx g0bar, cplx gmbar) {
    return InterfaceAssembler(p, basis, B, lift).assemble(s, g0bar, gmbar);
}

double InterfaceSystem::relative_residual(const std::vector<cplx>& x) const {
    const int n = order();
    double rmax = 0.0, bmax = 0.0;
    for (int r = 0; r < n; ++r) {
        const auto k = static_cast<std::size_t>(r);
        cplx ax = diag[k] * x[k];
        if (r > 0) ax += sub[k] * x[k - 1];
        if (r + 1 < n) ax += super[k] * x[k + 1];
        rmax = std::max(rmax, std::abs(ax - rhs[k]));
        bmax = std::max(bmax, std::abs(rhs[k]));
    }
    return bmax > 0.0 ? rmax / bmax : rmax;
}

namespace {

bool finite(const std::vector<cplx>& x) {
    for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

std::vector<cplx> thomas(const InterfaceSystem& A, int& failed_row) {
    const int n = A.order();
    std::vector<cplx> c(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n)), x(static_cast<std::size_t>(n));
    failed_row = -1;
    cplx piv = A.diag[0];
    for (int r = 0; r < n; ++r) {
        const auto k = static_cast<std::size_t>(r);
        if (r > 0) piv = A.diag[k] - A.sub[k] * c[k - 1];
        if (piv == 0.0) {
            failed_row = r;
            return {};
        }
        c[k] = (r + 1 < n) ? A.super[k] / piv : 0.0;
        d[k] = (A.rhs[k] - (r > 0 ? A.sub[k] * d[k - 1] : 0.0)) / piv;
    }
    x[static_cast<std::size_t>(n - 1)] = d[static_cast<std::size_t>(n - 1)];
    for (int r = n - 2; r >= 0; --r) {
        const auto k = static_cast<std::size_t>(r);
        x[k] = d[k] - c[k] * x[k + 1];
    }
    return x;
}

}  // namespace

std::vector<cplx> solve(const InterfaceSystem& A) {
    const int n = A.order();
    if (n == 0) return {};
    int bad = -1;
    auto x = thomas(A, bad);
    if (bad < 0 && finite(x) && A.relative_residual(x) < 1e-10) return x;

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd b(n);
    for (int r = 0; r < n; ++r) {
        const auto k = static_cast<std::size_t>(r);
        M(r, r) = A.diag[k];
        if (r > 0) M(r, r - 1) = A.sub[k];
        if (r + 1 < n) M(r, r + 1) = A.super[k];
        b(r) = A.rhs[k];
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    Eigen::VectorXcd y = lu.solve(b);
    x.assign(y.data(), y.data() + n);
    if (finite(x) && A.relative_residual(x) < 1e-10) return x;

    std::ostringstream os;
    os << "interface system is singular or ill-conditioned";
    if (bad >= 0) os << " (zero pivot at interface " << bad + 1 << ")";
    os << " at s = " << A.s;
    throw NumericalError(os.str());
}

}  // namespace layerdiff
