#include "polyterm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyterm/errors.hpp"
#include "polyterm/quadrature.hpp"

namespace polyterm {

namespace {

// Sentinel exponent for endpoints where the density decays faster than any
// power (boundary order A >= 1).
constexpr double kFlatExponent = 1e3;

}  // namespace

InvariantDensity::InvariantDensity(const GeneralParams& g) : params_(g) {
    const std::string defect = diffusion_defect(g);
    if (!defect.empty()) throw Error("bad_params", defect);

    left_ = boundary_orders(g.a, g.b, g.interval.lo, Side::Left);
    right_ = boundary_orders(g.a, g.b, g.interval.hi, Side::Right);

    // Integrability of C/a * exp(int 2b/a) requires strictly inward leading
    // drift of order zero at both endpoints.
    for (const BoundaryOrders* o : {&left_, &right_}) {
        if (o->vanishing_b || o->B > 0 || o->beta <= 0.0)
            throw Error("infeasible",
                        "invariant density does not exist: drift is not strictly "
                        "inward at an endpoint");
    }

    const EndpointTest t = endpoint_test_values(g);
    const double tie =
        kBoundaryTieTol * std::max({g.a.max_abs_coeff(), g.b.max_abs_coeff(), 1.0});
    boundary_case_ = !(t.left_value > tie && t.right_value < -tie);

    // f ~ t^{2 beta/alpha - 1} at a simple root, exponentially flat otherwise.
    p_lo_ = left_.A == 0 ? 2.0 * left_.beta / left_.alpha - 1.0 : kFlatExponent;
    p_hi_ = right_.A == 0 ? 2.0 * right_.beta / right_.alpha - 1.0 : kFlatExponent;

    mid_ = g.interval.midpoint();
    log_norm_ = 0.0;
    const double mass = integrate_against([](double) { return 1.0; }, 1e-12, 1.0);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw Error("quadrature_failure", "invariant density normalization failed");
    log_norm_ = std::log(mass);
}

double InvariantDensity::log_unnormalized(double z) const {
    const auto& g = params_;
    const double exponent_tol = 1e-11;
    const auto ratio = [&g](double s) { return 2.0 * g.b(s) / g.a(s); };
    const QuadratureResult exponent =
        integrate_adaptive(ratio, mid_, z, exponent_tol);
    return exponent.value - std::log(g.a(z)) - log_norm_;
}

double InvariantDensity::log_density(double z) const {
    if (!params_.interval.contains(z)) return -std::numeric_limits<double>::infinity();
    return log_unnormalized(z);
}

double InvariantDensity::operator()(double z) const {
    if (!params_.interval.contains(z)) return 0.0;
    const double lf = log_unnormalized(z);
    return lf < -745.0 ? 0.0 : std::exp(lf);
}

double InvariantDensity::integrate_against(const std::function<double(double)>& fn,
                                           double abs_tol, double scale) const {
    const auto integrand = [this, &fn](double z) {
        const double lf = log_unnormalized(z);
        return lf < -745.0 ? 0.0 : std::exp(lf) * fn(z);
    };
    const QuadratureResult r = integrate_endpoint_singular(
        integrand, params_.interval.lo, params_.interval.hi, p_lo_, p_hi_,
        abs_tol * std::max(scale, 1e-300));
    if (!r.converged)
        throw Error("quadrature_failure",
                    "density quadrature did not reach the requested tolerance");
    return r.value;
}

Eigen::MatrixXd moment_matrix(const InvariantDensity& f, int n) {
    if (n < 1) throw Error("invalid_argument", "moment matrix needs n >= 1");
    const Interval I = f.params().interval;
    const double zmax = std::max(std::abs(I.lo), std::abs(I.hi));

    std::vector<double> moments(2 * n + 1);
    for (int k = 0; k <= 2 * n; ++k) {
        const double scale = std::pow(zmax, k);
        moments[k] = f.integrate_against(
            [k](double z) { return std::pow(z, k); }, 1e-13, scale);
    }

    Eigen::MatrixXd M(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) M(i, j) = moments[i + j];

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw Error("quadrature_failure",
                    "moment matrix is not positive definite (quadrature failure)");
    return M;
}

SpectralData eigendecompose(const CompanionMatrix& S, const Eigen::MatrixXd& M) {
    if (M.rows() != S.entries.rows() || M.cols() != S.entries.cols())
        throw Error("invalid_argument", "moment matrix dimension mismatch");

    {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> check(M);
        if (check.info() != Eigen::Success || check.eigenvalues().minCoeff() <= 0.0)
            throw Error("ill_conditioned", "moment matrix is not positive definite");
        const double cond =
            check.eigenvalues().maxCoeff() / check.eigenvalues().minCoeff();
        if (cond > 1e12)
            throw Error("ill_conditioned",
                        "moment matrix condition number exceeds 1e12");
    }

    // S is self-adjoint in the M inner product (S^T M = M S), so M S is
    // symmetric and the pencil (M S, M) has real spectrum. Symmetrize to
    // absorb quadrature roundoff.
    const Eigen::MatrixXd A =
        0.5 * (M * S.entries + S.entries.transpose() * M);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(A, M);
    if (ges.info() != Eigen::Success)
        throw Error("ill_conditioned", "generalized eigensolve failed");

    const int m = static_cast<int>(M.rows());
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return ges.eigenvalues()(i) > ges.eigenvalues()(j);
    });

    SpectralData sd;
    sd.lambdas.resize(m);
    sd.U.resize(m, m);
    sd.M = M;
    for (int i = 0; i < m; ++i) {
        sd.lambdas(i) = ges.eigenvalues()(order[i]);
        Eigen::VectorXd u = ges.eigenvectors().col(order[i]);
        // Deterministic sign: first component above noise level is positive.
        const double noise = 1e-12 * u.cwiseAbs().maxCoeff();
        for (int k = 0; k < m; ++k) {
            if (std::abs(u(k)) > noise) {
                if (u(k) < 0.0) u = -u;
                break;
            }
        }
        sd.U.col(i) = u;
    }
    sd.V = sd.U.transpose() * M;
    sd.Q = weight_polynomials(sd);
    return sd;
}

std::vector<Polynomial> weight_polynomials(const SpectralData& sd) {
    const int m = static_cast<int>(sd.lambdas.size());
    std::vector<Polynomial> Q;
    Q.reserve(m);
    for (int i = 0; i < m; ++i) {
        // int uhat_i f dz = sum_k u_{ik} m_k = (u_i^T M)_0 = V(i, 0).
        const double weight = sd.V(i, 0);
        std::vector<double> coeffs(m);
        for (int k = 0; k < m; ++k) coeffs[k] = weight * sd.U(k, i);
        Q.emplace_back(std::move(coeffs));
    }
    return Q;
}

double long_rate(const SpectralData& sd) {
    return -sd.lambdas.maxCoeff();
}

SpectralData analyze_spectrum(const GeneralParams& g) {
    const InvariantDensity f(g);
    const Eigen::MatrixXd M = moment_matrix(f, g.n);
    SpectralData sd = eigendecompose(companion_matrix(g), M);

    // The long-rate formula fails silently if the weight attached to the top
    // eigenvalue vanishes identically; flag that case.
    double top_max = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double z = g.interval.lo + g.interval.width() * i / 100.0;
        top_max = std::max(top_max, std::abs(sd.Q.front()(z)));
    }
    sd.top_weight_degenerate = top_max <= 1e-10;
    return sd;
}

}  // namespace polyterm
