#pragma once

// Coupling arrays, the tridiagonal single-excitation matrix and its analytic
// eigensystem for the two-parameter chain and its q-deformation.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "hahnchain/hahn.hpp"
#include "hahnchain/precision.hpp"
#include "hahnchain/q_hahn.hpp"

namespace hahnchain {

/// Chain of N+1 = 2m+2 sites. Without q: alpha > -1, beta > 0. With q:
/// 0 < q < 1, 0 < alpha < 1/q, 0 < beta < 1.
struct ChainSpec {
  int m = 0;
  double alpha = 0.0;
  double beta = 1.0;
  std::optional<double> q;

  int N() const { return 2 * m + 1; }
  int sites() const { return 2 * m + 2; }
  bool is_q() const { return q.has_value(); }

  /// Throws std::domain_error when the parameters leave the allowed region.
  void validate() const;
};

/// J_0..J_{N-1}.
template <class Scalar = double>
struct CouplingArray {
  Vector<Scalar> values;
};

/// Symmetric tridiagonal matrix with zero diagonal.
template <class Scalar = double>
struct TridiagonalMatrix {
  CouplingArray<Scalar> off_diagonal;

  Eigen::Index dimension() const { return off_diagonal.values.size() + 1; }

  Matrix<Scalar> dense() const {
    const Eigen::Index n = dimension();
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
    out.diagonal(1) = off_diagonal.values;
    out.diagonal(-1) = off_diagonal.values;
    return out;
  }
};

/// Columns of U are eigenvectors; eigenvalues ascending, eigenvalues(j) pairs
/// with column j.
template <class Scalar = double>
struct EigenSystem {
  Matrix<Scalar> U;
  Vector<Scalar> eigenvalues;
};

template <class Scalar = double>
CouplingArray<Scalar> build_couplings(const ChainSpec& spec) {
  using std::sqrt;
  spec.validate();
  const int m = spec.m;
  CouplingArray<Scalar> J{Vector<Scalar>(spec.N())};
  const Scalar alpha(spec.alpha);
  const Scalar beta(spec.beta);
  if (!spec.is_q()) {
    for (int k = 0; k < spec.N(); ++k) {
      if (k % 2)
        J.values(k) = sqrt(Scalar((k + 1) * (2 * m + 1 - k)));
      else
        J.values(k) = sqrt((alpha * 2 + (k + 2)) * (beta * 2 + (2 * m - k)));
    }
    return J;
  }
  const Scalar q(*spec.q);
  const Scalar one(1);
  for (int k = 0; k <= m; ++k)
    J.values(2 * k) = 2 * sqrt((one - alpha * int_power(q, k + 1)) *
                               (one - beta * int_power(q, m - k)) * int_power(q, k));
  // J_{2k+1} only exists for k < m in a (2m+2)-site chain.
  for (int k = 0; k < m; ++k)
    J.values(2 * k + 1) = 2 * sqrt((one - int_power(q, k + 1)) * (one - int_power(q, m - k)) *
                                   int_power(q, k + 1) * alpha);
  return J;
}

template <class Scalar>
TridiagonalMatrix<Scalar> interaction_matrix(const CouplingArray<Scalar>& J) {
  return {J};
}

/// Magnitudes 2 sqrt((alpha+k+1)(beta+k)) (classical) or
/// 2 sqrt((1 - alpha q^{k+1})(1 - beta q^k) q^{m-k}) (q-case), k = 0..m.
template <class Scalar = double>
Vector<Scalar> eigenvalue_magnitudes(const ChainSpec& spec) {
  using std::sqrt;
  spec.validate();
  Vector<Scalar> out(spec.m + 1);
  const Scalar alpha(spec.alpha);
  const Scalar beta(spec.beta);
  for (int k = 0; k <= spec.m; ++k) {
    if (!spec.is_q()) {
      out(k) = 2 * sqrt((alpha + (k + 1)) * (beta + k));
    } else {
      const Scalar q(*spec.q);
      out(k) = 2 * sqrt((Scalar(1) - alpha * int_power(q, k + 1)) *
                        (Scalar(1) - beta * int_power(q, k)) * int_power(q, spec.m - k));
    }
  }
  return out;
}

/// eps_{m-k} = -E_k, eps_{m+k+1} = +E_k, which is already ascending.
template <class Scalar = double>
Vector<Scalar> analytic_eigenvalues(const ChainSpec& spec) {
  const Vector<Scalar> mag = eigenvalue_magnitudes<Scalar>(spec);
  const int m = spec.m;
  Vector<Scalar> eps(spec.sites());
  for (int k = 0; k <= m; ++k) {
    eps(m - k) = -mag(k);
    eps(m + k + 1) = mag(k);
  }
  return eps;
}

/// Orthonormal function tables, rows j (degree), columns i (lattice point),
/// for the even-site family and the odd-site (shifted) family.
template <class Scalar>
std::pair<Matrix<Scalar>, Matrix<Scalar>> orthonormal_families(const ChainSpec& spec) {
  spec.validate();
  if (!spec.is_q()) {
    const HahnParams<Scalar> p{Scalar(spec.alpha), Scalar(spec.beta), spec.m};
    return {hahn_orthonormal_matrix(p), hahn_orthonormal_matrix(p.shifted())};
  }
  const QHahnParams<Scalar> p{Scalar(spec.alpha), Scalar(spec.beta), Scalar(*spec.q), spec.m};
  return {q_hahn_orthonormal_matrix(p), q_hahn_orthonormal_matrix(p.shifted())};
}

/// U and D evaluated entirely in Scalar:
///   U_{2i,m-j}   = U_{2i,m+j+1}   =  (-1)^i / sqrt 2 * even(j, i)
///   U_{2i+1,m-j} = -U_{2i+1,m+j+1} = -(-1)^i / sqrt 2 * odd(j, i)
/// In double the orthonormal functions lose about 0.48 m digits (more in the
/// q-case); the non-template overload picks a safe precision.
template <class Scalar>
EigenSystem<Scalar> analytic_eigensystem(const ChainSpec& spec) {
  using std::sqrt;
  const auto [even, odd] = orthonormal_families<Scalar>(spec);
  const int m = spec.m;
  const Scalar inv_sqrt2 = Scalar(1) / sqrt(Scalar(2));
  EigenSystem<Scalar> es;
  es.U.resize(spec.sites(), spec.sites());
  for (int i = 0; i <= m; ++i) {
    const Scalar sign = (i % 2) ? -inv_sqrt2 : inv_sqrt2;
    for (int j = 0; j <= m; ++j) {
      es.U(2 * i, m - j) = sign * even(j, i);
      es.U(2 * i, m + j + 1) = sign * even(j, i);
      es.U(2 * i + 1, m - j) = -sign * odd(j, i);
      es.U(2 * i + 1, m + j + 1) = sign * odd(j, i);
    }
  }
  es.eigenvalues = analytic_eigenvalues<Scalar>(spec);
  return es;
}

/// Analytic eigensystem rounded to double from a working precision chosen by
/// required_digits().
EigenSystem<double> analytic_eigensystem(const ChainSpec& spec);

template <class Scalar>
Scalar residual_MU_UD(const ChainSpec& spec, const EigenSystem<Scalar>& es) {
  const Matrix<Scalar> M = interaction_matrix(build_couplings<Scalar>(spec)).dense();
  const Matrix<Scalar> diff = M * es.U - es.U * es.eigenvalues.asDiagonal();
  return diff.cwiseAbs().maxCoeff();
}

template <class Scalar>
Scalar residual_MU_UD(const ChainSpec& spec) {
  return residual_MU_UD(spec, analytic_eigensystem<Scalar>(spec));
}

/// max |M U - U D| for the double eigensystem returned by analytic_eigensystem(spec).
double residual_MU_UD(const ChainSpec& spec);

/// max |U^T U - I|.
template <class Scalar>
Scalar orthogonality_residual(const EigenSystem<Scalar>& es) {
  const Eigen::Index n = es.U.cols();
  return (es.U.transpose() * es.U - Matrix<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace hahnchain
