#pragma once

// Brute-force cross-check for the analytic eigensystem: a self-contained
// implicit QL eigensolver for real symmetric tridiagonal matrices. It shares
// no code with the Hahn-polynomial path.

#include <stdexcept>
#include <string>

#include "hahnchain/chain.hpp"

namespace hahnchain {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues ascending; eigenvectors(:, j) pairs with eigenvalues(j).
struct OracleEigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Implicit QL with Wilkinson-type shifts on (diagonal, off_diagonal), then
/// Sturm-count bisection on each eigenvalue. Throws ConvergenceError if any
/// eigenvalue needs more than max_iterations QL sweeps.
OracleEigenSystem tridiag_eigen(const Eigen::VectorXd& diagonal,
                                const Eigen::VectorXd& off_diagonal,
                                int max_iterations = 50);

OracleEigenSystem tridiag_eigen(const TridiagonalMatrix<double>& M, int max_iterations = 50);

/// max |A - B|; throws std::invalid_argument on shape mismatch.
template <class DerivedA, class DerivedB>
double max_abs_residual(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("max_abs_residual: shape mismatch (" + std::to_string(A.rows()) +
                                "x" + std::to_string(A.cols()) + " vs " +
                                std::to_string(B.rows()) + "x" + std::to_string(B.cols()) + ")");
  if (A.size() == 0) return 0.0;
  return (A - B).cwiseAbs().maxCoeff();
}

/// Per-index comparison of an analytic eigensystem with the oracle.
/// overlap_deviation(j) = 1 - |<u_j, v_j>|, insensitive to eigenvector sign.
struct OracleMatch {
  Eigen::VectorXd eigenvalue_rel_diff;
  Eigen::VectorXd overlap_deviation;

  double max_eigenvalue_rel_diff() const;
  double max_overlap_deviation() const;
};

OracleMatch match_eigensystems(const EigenSystem<double>& analytic, const OracleEigenSystem& oracle);

}  // namespace hahnchain
