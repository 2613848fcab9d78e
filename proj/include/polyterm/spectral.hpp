#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "polyterm/feller.hpp"
#include "polyterm/model.hpp"
#include "polyterm/pricing.hpp"

namespace polyterm {

/// Stationary density of the factor diffusion,
///   f(z) = C / a(z) * exp(int_mid^z 2 b / a),
/// normalized to integrate to one. Exists whenever the drift points strictly
/// into the interval at both endpoints (order-zero positive inward leading
/// drift coefficient); construction fails otherwise. boundary_case() is set
/// when the parameters are not strictly inside the feasible region, i.e. an
/// endpoint test value sits at or beyond the tie tolerance; the density is
/// still well defined there.
class InvariantDensity {
public:
    explicit InvariantDensity(const GeneralParams& g);

    /// Normalized density; zero outside the open interval.
    double operator()(double z) const;

    /// log f(z); -inf outside.
    double log_density(double z) const;

    /// Integral of fn against the density, with endpoint-singularity-aware
    /// quadrature (absolute tolerance measured against scale).
    double integrate_against(const std::function<double(double)>& fn,
                             double abs_tol = 1e-12, double scale = 1.0) const;

    const GeneralParams& params() const { return params_; }
    const BoundaryOrders& left_orders() const { return left_; }
    const BoundaryOrders& right_orders() const { return right_; }
    bool boundary_case() const { return boundary_case_; }

    /// Leading power-law exponents of f at the endpoints (large sentinel when
    /// the density is exponentially flat there).
    double left_exponent() const { return p_lo_; }
    double right_exponent() const { return p_hi_; }

private:
    GeneralParams params_;
    BoundaryOrders left_, right_;
    bool boundary_case_ = false;
    double mid_ = 0.0;
    double p_lo_ = 0.0, p_hi_ = 0.0;
    double log_norm_ = 0.0;

    double log_unnormalized(double z) const;
};

/// Moment matrix M_ij = int z^{i+j} f(z) dz, i, j = 0..n. Checks symmetric
/// positive definiteness and conditioning (limit 1e12).
Eigen::MatrixXd moment_matrix(const InvariantDensity& f, int n);

/// Eigen-decomposition of S in the M-weighted inner product.
struct SpectralData {
    Eigen::VectorXd lambdas;        // real eigenvalues, sorted descending
    Eigen::MatrixXd U;              // column i = right eigenvector u_i, u_i^T M u_i = 1
    Eigen::MatrixXd V;              // row i = left eigenvector v_i = u_i^T M
    Eigen::MatrixXd M;              // moment matrix used for the similarity
    std::vector<Polynomial> Q;      // weight polynomials Q_i(z)
    bool top_weight_degenerate = false;  // max |Q_0| below 1e-10 on the interval
};

/// Solve the generalized symmetric problem (M S) u = lambda M u, which is
/// equivalent to S u = lambda u but guarantees a real spectrum. Eigenvalues
/// are sorted descending; each eigenvector's first nonzero component is made
/// positive. Fails when M is not positive definite or has condition number
/// above 1e12.
SpectralData eigendecompose(const CompanionMatrix& S, const Eigen::MatrixXd& M);

/// Q_i(z) = uhat_i(z) * int uhat_i f dz; the integral reduces to (M u_i)_0,
/// built from the quadrature moments in M. Satisfies sum_i Q_i(z) = 1 and
/// H(x, z) = sum_i Q_i(z) e^{lambda_i x} in the diagonalizable case.
std::vector<Polynomial> weight_polynomials(const SpectralData& sd);

/// Asymptotic yield -max_i lambda_i.
double long_rate(const SpectralData& sd);

/// Convenience: density, moments, and eigen-decomposition in one call.
SpectralData analyze_spectrum(const GeneralParams& g);

}  // namespace polyterm
