#include "hahnchain/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace hahnchain {

namespace {

// Number of eigenvalues below x from the signs of the LDL^T pivots of T - x.
int sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e2, double x) {
  constexpr double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double pivot = 1.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    pivot = (d(i) - x) - (i > 0 ? e2(i - 1) / pivot : 0.0);
    if (pivot == 0.0) pivot = -tiny;
    if (pivot < 0.0) ++count;
  }
  return count;
}

// Bisection on the Sturm count for eigenvalue j, starting next to the QL value.
// With a zero diagonal the count is relatively accurate, so small eigenvalues
// come out to full relative precision instead of eps * ||T||.
double bisect_eigenvalue(const Eigen::VectorXd& d, const Eigen::VectorXd& e2, int j, double guess,
                         double width) {
  double lo = guess - width;
  double hi = guess + width;
  for (int i = 0; i < 64 && sturm_count(d, e2, lo) > j; ++i) lo -= (width *= 2);
  for (int i = 0; i < 64 && sturm_count(d, e2, hi) <= j; ++i) hi += (width *= 2);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 256; ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi || hi - lo <= eps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(d, e2, mid) > j)
      hi = mid;
    else
      lo = mid;
  }
  return lo + (hi - lo) / 2;
}

}  // namespace

OracleEigenSystem tridiag_eigen(const Eigen::VectorXd& diagonal,
                                const Eigen::VectorXd& off_diagonal, int max_iterations) {
  const Eigen::Index n = diagonal.size();
  if (n < 1) throw std::invalid_argument("tridiag_eigen: dimension must be >= 1");
  if (off_diagonal.size() != n - 1)
    throw std::invalid_argument("tridiag_eigen: off-diagonal length must be dimension - 1");

  Eigen::VectorXd d = diagonal;
  // e(i) couples rows i and i+1; e(n-1) is padding.
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e.head(n - 1) = off_diagonal;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int iterations = 0;
    for (;;) {
      Eigen::Index m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (iterations++ == max_iterations)
        throw ConvergenceError("tridiag_eigen: no convergence for eigenvalue " + std::to_string(l) +
                               " after " + std::to_string(max_iterations) + " iterations");

      // Shift from the eigenvalue of the leading 2x2 block closer to d(l).
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      Eigen::Index i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        const double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(m) = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double zf = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * zf;
          z(k, i) = c * z(k, i) - s * zf;
        }
      }
      if (underflow) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0.0;
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });
  OracleEigenSystem out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  const Eigen::VectorXd e2 = off_diagonal.array().square();
  const double norm = diagonal.cwiseAbs().maxCoeff() +
                      (n > 1 ? 2 * off_diagonal.cwiseAbs().maxCoeff() : 0.0);
  const double width = 4 * double(n) * eps * norm + std::numeric_limits<double>::min();
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = bisect_eigenvalue(diagonal, e2, int(j), d(order[j]), width);
    if (j > 0) out.eigenvalues(j) = std::max(out.eigenvalues(j), out.eigenvalues(j - 1));
    out.eigenvectors.col(j) = z.col(order[j]);
  }
  return out;
}

OracleEigenSystem tridiag_eigen(const TridiagonalMatrix<double>& M, int max_iterations) {
  return tridiag_eigen(Eigen::VectorXd::Zero(M.dimension()), M.off_diagonal.values, max_iterations);
}

double OracleMatch::max_eigenvalue_rel_diff() const {
  return eigenvalue_rel_diff.size() ? eigenvalue_rel_diff.maxCoeff() : 0.0;
}

double OracleMatch::max_overlap_deviation() const {
  return overlap_deviation.size() ? overlap_deviation.maxCoeff() : 0.0;
}

OracleMatch match_eigensystems(const EigenSystem<double>& analytic, const OracleEigenSystem& oracle) {
  const Eigen::Index n = analytic.eigenvalues.size();
  if (oracle.eigenvalues.size() != n || analytic.U.cols() != n || oracle.eigenvectors.cols() != n ||
      analytic.U.rows() != oracle.eigenvectors.rows())
    throw std::invalid_argument("match_eigensystems: dimension mismatch");
  OracleMatch out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = analytic.eigenvalues(j);
    const double diff = std::abs(a - oracle.eigenvalues(j));
    out.eigenvalue_rel_diff(j) = a == 0.0 ? diff : diff / std::abs(a);
    const double overlap = std::abs(analytic.U.col(j).dot(oracle.eigenvectors.col(j)));
    out.overlap_deviation(j) = std::abs(1.0 - overlap);
  }
  return out;
}

}  // namespace hahnchain
