#pragma once

#include <Eigen/Dense>

namespace polyterm {

/// Matrix exponential by Pade approximation with scaling and squaring
/// (Higham 2005 degree selection). Works for any square real matrix; no
/// diagonalizability assumption.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

}  // namespace polyterm
