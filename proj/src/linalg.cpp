#include "polyterm/linalg.hpp"

#include <cmath>

#include "polyterm/errors.hpp"

namespace polyterm {

namespace {

using Eigen::MatrixXd;

double one_norm(const MatrixXd& A) {
    return A.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator coefficients for degrees 3..13 (denominator uses the same
// coefficients with alternating signs).
constexpr double kPade3[] = {120., 60., 12., 1.};
constexpr double kPade5[] = {30240., 15120., 3360., 420., 30., 1.};
constexpr double kPade7[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
constexpr double kPade9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                             2162160., 110880., 3960., 90., 1.};
constexpr double kPade13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                              1187353796428800.,  129060195264000.,   10559470521600.,
                              670442572800.,      33522128640.,       1323241920.,
                              40840800.,          960960.,            16380.,
                              182.,               1.};

// theta_m from Higham: largest 1-norm for which degree-m Pade meets double
// precision.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

MatrixXd pade_solve(const MatrixXd& U, const MatrixXd& V) {
    // r = (V - U)^{-1} (V + U)
    return (V - U).partialPivLu().solve(V + U);
}

MatrixXd pade_low_order(const MatrixXd& A, const double* b, int m) {
    const auto n = A.rows();
    const MatrixXd A2 = A * A;
    MatrixXd even = b[0] * MatrixXd::Identity(n, n);
    MatrixXd odd = b[1] * MatrixXd::Identity(n, n);
    MatrixXd power = MatrixXd::Identity(n, n);
    for (int k = 2; k <= m; k += 2) {
        power = power * A2;
        even += b[k] * power;
        if (k + 1 <= m) odd += b[k + 1] * power;
    }
    const MatrixXd U = A * odd;
    return pade_solve(U, even);
}

MatrixXd pade13(const MatrixXd& A) {
    const auto n = A.rows();
    const double* b = kPade13;
    const MatrixXd A2 = A * A;
    const MatrixXd A4 = A2 * A2;
    const MatrixXd A6 = A4 * A2;
    const MatrixXd U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
             b[3] * A2 + b[1] * MatrixXd::Identity(n, n));
    const MatrixXd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                       b[4] * A4 + b[2] * A2 + b[0] * MatrixXd::Identity(n, n);
    return pade_solve(U, V);
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols())
        throw Error("invalid_argument", "expm: matrix must be square");
    if (!A.allFinite())
        throw Error("invalid_argument", "expm: matrix has non-finite entries");
    const auto n = A.rows();
    if (n == 0) return A;

    const double norm = one_norm(A);
    if (norm <= kTheta3) return pade_low_order(A, kPade3, 3);
    if (norm <= kTheta5) return pade_low_order(A, kPade5, 5);
    if (norm <= kTheta7) return pade_low_order(A, kPade7, 7);
    if (norm <= kTheta9) return pade_low_order(A, kPade9, 9);

    int squarings = 0;
    MatrixXd scaled = A;
    if (norm > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
        scaled = A / std::ldexp(1.0, squarings);
    }
    MatrixXd result = pade13(scaled);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

}  // namespace polyterm
