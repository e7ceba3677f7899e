#pragma once

// Hahn polynomials Q_n(x; alpha, beta, m) on the lattice x = 0..m, their
// weight, norm and orthonormal functions, and the two contiguous relations
// linking the (alpha, beta) family to the (alpha+1, beta-1) family.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hahnchain/precision.hpp"
#include "hahnchain/special_functions.hpp"

namespace hahnchain {

/// Parameters of one Hahn family. Evaluation accepts alpha, beta > -1; the
/// chain construction additionally needs beta > 0 so the shifted family stays
/// in range.
template <class Scalar>
struct HahnParams {
  Scalar alpha;
  Scalar beta;
  int m = 0;

  /// The (alpha+1, beta-1) family of the odd chain sites.
  HahnParams shifted() const { return {alpha + 1, beta - 1, m}; }

  template <class Other>
  HahnParams<Other> cast() const {
    return {Other(alpha), Other(beta), m};
  }
};

/// Signed residual of an identity together with the magnitude of its largest
/// term, so callers can judge it relative to the cancellation involved.
template <class Scalar>
struct Residual {
  Scalar value;
  Scalar scale;

  Scalar relative() const {
    using std::abs;
    return scale == 0 ? abs(value) : abs(value) / scale;
  }
};

namespace detail {

template <class Scalar>
void check_hahn_domain(const HahnParams<Scalar>& p) {
  if (p.m < 0) throw std::invalid_argument("Hahn: m must be nonnegative");
  if (!(p.alpha > -1) || !(p.beta > -1))
    throw std::domain_error("Hahn: weight requires alpha > -1 and beta > -1");
}

inline void check_index(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi)
    throw std::invalid_argument(std::string(what) + " = " + std::to_string(v) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
}

}  // namespace detail

/// 3F2(-n, n+alpha+beta+1, -x; alpha+1, -m; 1). x = m+1 is accepted because
/// the contiguous relations evaluate Q_n(x+1) at x = m.
template <class Scalar>
Scalar hahn_Q(int n, int x, const HahnParams<Scalar>& p) {
  detail::check_index(n, 0, p.m, "hahn_Q: n");
  detail::check_index(x, 0, p.m + 1, "hahn_Q: x");
  HypSeriesSpec<Scalar> spec;
  spec.numerator_params = {Scalar(-n), Scalar(n + 1) + p.alpha + p.beta, Scalar(-x)};
  spec.denominator_params = {p.alpha + 1, Scalar(-p.m)};
  spec.argument = Scalar(1);
  spec.term_count = std::min(n, x) + 1;
  return hyp_terminating(spec);
}

template <class Scalar>
Scalar hahn_log_weight(int x, const HahnParams<Scalar>& p) {
  detail::check_hahn_domain(p);
  detail::check_index(x, 0, p.m, "hahn_weight: x");
  const Scalar one(1);
  return log_pochhammer(p.alpha + 1, x) - log_pochhammer(one, x) +
         log_pochhammer(p.beta + 1, p.m - x) - log_pochhammer(one, p.m - x);
}

/// w(x) = binom(alpha+x, x) binom(m+beta-x, m-x).
template <class Scalar>
Scalar hahn_weight(int x, const HahnParams<Scalar>& p) {
  using std::exp;
  return exp(hahn_log_weight(x, p));
}

namespace detail {

// (-1)^n (-m)_n is folded into m!/(m-n)! so every factor but
// (n+alpha+beta+1)_{m+1} and (2n+alpha+beta+1) is positive.
template <class Scalar>
ProductAccumulator<Scalar> hahn_norm_product(int n, const HahnParams<Scalar>& p) {
  check_hahn_domain(p);
  check_index(n, 0, p.m, "hahn_norm: n");
  const Scalar ab1 = p.alpha + p.beta + 1;
  ProductAccumulator<Scalar> acc;
  for (int i = 0; i <= p.m; ++i) acc.multiply(ab1 + (n + i));
  for (int i = 0; i < n; ++i) {
    acc.multiply(p.beta + (1 + i));
    acc.multiply(Scalar(i + 1));
    acc.divide(p.alpha + (1 + i));
    acc.divide(Scalar(p.m - i));
  }
  acc.divide(ab1 + 2 * n);
  for (int i = 1; i <= p.m; ++i) acc.divide(Scalar(i));
  if (acc.sign() <= 0) throw std::domain_error("hahn_norm: nonpositive norm");
  return acc;
}

}  // namespace detail

/// h_n = sum_x w(x) Q_n(x)^2.
template <class Scalar>
Scalar hahn_norm(int n, const HahnParams<Scalar>& p) {
  return detail::hahn_norm_product(n, p).value();
}

template <class Scalar>
Scalar hahn_log_norm(int n, const HahnParams<Scalar>& p) {
  return detail::hahn_norm_product(n, p).log_abs();
}

/// sqrt(w(x)) Q_n(x) / sqrt(h_n), with the square roots taken in log space.
template <class Scalar>
Scalar hahn_orthonormal(int n, int x, const HahnParams<Scalar>& p) {
  using std::exp;
  const Scalar scale = exp((hahn_log_weight(x, p) - hahn_log_norm(n, p)) / 2);
  return scale * hahn_Q(n, x, p);
}

/// All Q_n(x), rows n = 0..m, columns x = 0..m.
///
/// Uses the factorisation Q_n(x) = sum_k c_k(n) d_k(x) with
///   c_k(n) = (-n)_k (n+alpha+beta+1)_k / ((alpha+1)_k k!),
///   d_k(x) = (-x)_k / (-m)_k,
/// which sums the same terms in the same order as hahn_Q.
template <class Scalar>
Matrix<Scalar> hahn_Q_matrix(const HahnParams<Scalar>& p) {
  detail::check_hahn_domain(p);
  const int size = p.m + 1;
  Matrix<Scalar> c = Matrix<Scalar>::Zero(size, size);
  Matrix<Scalar> d = Matrix<Scalar>::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    Scalar term(1);
    const Scalar b = p.alpha + p.beta + (n + 1);
    for (int k = 0; k <= n; ++k) {
      c(n, k) = term;
      term *= Scalar(k - n) * (b + k) / ((p.alpha + (k + 1)) * Scalar(k + 1));
    }
  }
  for (int x = 0; x < size; ++x) {
    Scalar term(1);
    for (int k = 0; k <= x; ++k) {
      d(x, k) = term;
      if (k < p.m) term *= Scalar(k - x) / Scalar(k - p.m);
    }
  }
  return c * d.transpose();
}

/// All orthonormal functions, rows n, columns x. Rows are orthonormal vectors.
template <class Scalar>
Matrix<Scalar> hahn_orthonormal_matrix(const HahnParams<Scalar>& p) {
  using std::exp;
  const int size = p.m + 1;
  Vector<Scalar> sqrt_w(size);
  Vector<Scalar> inv_sqrt_h(size);
  for (int i = 0; i < size; ++i) {
    sqrt_w(i) = exp(hahn_log_weight(i, p) / 2);
    inv_sqrt_h(i) = exp(-hahn_log_norm(i, p) / 2);
  }
  return inv_sqrt_h.asDiagonal() * hahn_Q_matrix(p) * sqrt_w.asDiagonal();
}

/// (m+beta-x) Q_n(x) - (m-x) Q_n(x+1) - (n+alpha+1)(n+beta)/(alpha+1) Q_n(x; alpha+1, beta-1).
template <class Scalar>
Residual<Scalar> diff_residual_1(int n, int x, const HahnParams<Scalar>& p) {
  using std::abs;
  detail::check_index(x, 0, p.m, "diff_residual_1: x");
  const HahnParams<Scalar> s = p.shifted();
  const Scalar a = (p.beta + (p.m - x)) * hahn_Q(n, x, p);
  const Scalar b = Scalar(p.m - x) * hahn_Q(n, x + 1, p);
  const Scalar c = (p.alpha + (n + 1)) * (p.beta + n) / (p.alpha + 1) * hahn_Q(n, x, s);
  return {a - b - c, std::max({abs(a), abs(b), abs(c)})};
}

/// (x+1) Q_n(x; alpha+1, beta-1) - (alpha+x+2) Q_n(x+1; alpha+1, beta-1) + (alpha+1) Q_n(x+1).
template <class Scalar>
Residual<Scalar> diff_residual_2(int n, int x, const HahnParams<Scalar>& p) {
  using std::abs;
  detail::check_index(x, 0, p.m, "diff_residual_2: x");
  const HahnParams<Scalar> s = p.shifted();
  const Scalar a = Scalar(x + 1) * hahn_Q(n, x, s);
  const Scalar b = (p.alpha + (x + 2)) * hahn_Q(n, x + 1, s);
  const Scalar c = (p.alpha + 1) * hahn_Q(n, x + 1, p);
  return {a - b + c, std::max({abs(a), abs(b), abs(c)})};
}

}  // namespace hahnchain
