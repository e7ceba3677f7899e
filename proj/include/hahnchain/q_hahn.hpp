#pragma once

// q-Hahn polynomials Q_n(q^{-x}; alpha, beta, m | q) for 0 < q < 1.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hahnchain/hahn.hpp"
#include "hahnchain/precision.hpp"
#include "hahnchain/special_functions.hpp"

namespace hahnchain {

/// Weights are positive for 0 < q < 1, 0 < alpha < 1/q, 0 < beta < 1/q.
template <class Scalar>
struct QHahnParams {
  Scalar alpha;
  Scalar beta;
  Scalar q;
  int m = 0;

  /// The (alpha q, beta / q) family of the odd chain sites.
  QHahnParams shifted() const { return {alpha * q, beta / q, q, m}; }

  template <class Other>
  QHahnParams<Other> cast() const {
    return {Other(alpha), Other(beta), Other(q), m};
  }
};

namespace detail {

template <class Scalar>
void check_q_hahn_domain(const QHahnParams<Scalar>& p) {
  if (p.m < 0) throw std::invalid_argument("q-Hahn: m must be nonnegative");
  if (!(p.q > 0) || !(p.q < 1)) throw std::domain_error("q-Hahn: requires 0 < q < 1");
  const Scalar inv_q = Scalar(1) / p.q;
  if (!(p.alpha > 0) || !(p.alpha < inv_q) || !(p.beta > 0) || !(p.beta < inv_q))
    throw std::domain_error("q-Hahn: requires 0 < alpha < 1/q and 0 < beta < 1/q");
}

}  // namespace detail

/// 3phi2(q^{-n}, alpha beta q^{n+1}, q^{-x}; alpha q, q^{-m}; q, q), x up to m+1.
template <class Scalar>
Scalar q_hahn_Q(int n, int x, const QHahnParams<Scalar>& p) {
  detail::check_q_hahn_domain(p);
  detail::check_index(n, 0, p.m, "q_hahn_Q: n");
  detail::check_index(x, 0, p.m + 1, "q_hahn_Q: x");
  QHypSeriesSpec<Scalar> spec;
  spec.numerator_params = {int_power(p.q, -n), p.alpha * p.beta * int_power(p.q, n + 1),
                           int_power(p.q, -x)};
  spec.denominator_params = {p.alpha * p.q, int_power(p.q, -p.m)};
  spec.q = p.q;
  spec.argument = p.q;
  spec.term_count = std::min(n, x) + 1;
  return q_hyp_terminating(spec);
}

namespace detail {

template <class Scalar>
ProductAccumulator<Scalar> q_hahn_weight_product(int x, const QHahnParams<Scalar>& p) {
  check_q_hahn_domain(p);
  check_index(x, 0, p.m, "q_hahn_weight: x");
  const Scalar one(1);
  const Scalar q_minus_m = int_power(p.q, -p.m);
  ProductAccumulator<Scalar> acc;
  Scalar qi(1);
  for (int i = 0; i < x; ++i) {
    acc.multiply(one - p.alpha * p.q * qi);
    acc.multiply(one - q_minus_m * qi);
    acc.divide(one - p.q * qi);
    acc.divide(one - q_minus_m * qi / p.beta);
    acc.divide(p.alpha * p.beta * p.q);
    qi *= p.q;
  }
  return acc;
}

// Multiplies in q^e in bounded chunks so double never overflows mid-way.
template <class Scalar>
void multiply_q_power(ProductAccumulator<Scalar>& acc, const Scalar& q, int e) {
  constexpr int kChunk = 32;
  const Scalar chunk = int_power(q, e < 0 ? -kChunk : kChunk);
  int remaining = e < 0 ? -e : e;
  for (; remaining >= kChunk; remaining -= kChunk) acc.multiply(chunk);
  if (remaining) acc.multiply(int_power(q, e < 0 ? -remaining : remaining));
}

template <class Scalar>
ProductAccumulator<Scalar> q_hahn_norm_product(int n, const QHahnParams<Scalar>& p) {
  check_q_hahn_domain(p);
  check_index(n, 0, p.m, "q_hahn_norm: n");
  const Scalar one(1);
  const Scalar& q = p.q;
  const Scalar ab = p.alpha * p.beta;
  const Scalar q_minus_m = int_power(q, -p.m);
  ProductAccumulator<Scalar> acc;
  Scalar qi(1);
  for (int i = 0; i < p.m; ++i) {
    acc.multiply(one - ab * q * q * qi);
    acc.divide(one - p.beta * q * qi);
    acc.divide(p.alpha * q);
    qi *= q;
  }
  qi = Scalar(1);
  const Scalar q_m2 = int_power(q, p.m + 2);
  for (int i = 0; i < n; ++i) {
    acc.multiply(one - q * qi);
    acc.multiply(one - ab * q_m2 * qi);
    acc.multiply(one - p.beta * q * qi);
    acc.multiply(-p.alpha * q);
    acc.divide(one - p.alpha * q * qi);
    acc.divide(one - ab * q * qi);
    acc.divide(one - q_minus_m * qi);
    qi *= q;
  }
  acc.multiply(one - ab * q);
  acc.divide(one - ab * int_power(q, 2 * n + 1));
  multiply_q_power(acc, q, n * (n - 1) / 2 - p.m * n);
  if (acc.sign() <= 0) throw std::domain_error("q_hahn_norm: nonpositive norm");
  return acc;
}

}  // namespace detail

/// w(x) = (alpha q, q^{-m}; q)_x / (q, q^{-m}/beta; q)_x (alpha beta q)^{-x}.
template <class Scalar>
Scalar q_hahn_weight(int x, const QHahnParams<Scalar>& p) {
  return detail::q_hahn_weight_product(x, p).value();
}

template <class Scalar>
Scalar q_hahn_log_weight(int x, const QHahnParams<Scalar>& p) {
  auto acc = detail::q_hahn_weight_product(x, p);
  if (acc.sign() <= 0) throw std::domain_error("q_hahn_weight: nonpositive weight");
  return acc.log_abs();
}

template <class Scalar>
Scalar q_hahn_norm(int n, const QHahnParams<Scalar>& p) {
  return detail::q_hahn_norm_product(n, p).value();
}

template <class Scalar>
Scalar q_hahn_log_norm(int n, const QHahnParams<Scalar>& p) {
  return detail::q_hahn_norm_product(n, p).log_abs();
}

template <class Scalar>
Scalar q_hahn_orthonormal(int n, int x, const QHahnParams<Scalar>& p) {
  using std::exp;
  const Scalar scale = exp((q_hahn_log_weight(x, p) - q_hahn_log_norm(n, p)) / 2);
  return scale * q_hahn_Q(n, x, p);
}

/// All Q_n(q^{-x}), rows n, columns x, via the same c_k(n) d_k(x) split as
/// hahn_Q_matrix:
///   c_k(n) = (q^{-n}, alpha beta q^{n+1}; q)_k q^k / (q, alpha q; q)_k,
///   d_k(x) = (q^{-x}; q)_k / (q^{-m}; q)_k.
template <class Scalar>
Matrix<Scalar> q_hahn_Q_matrix(const QHahnParams<Scalar>& p) {
  detail::check_q_hahn_domain(p);
  const int size = p.m + 1;
  const Scalar one(1);
  const Scalar& q = p.q;
  const Scalar q_minus_m = int_power(q, -p.m);
  Matrix<Scalar> c = Matrix<Scalar>::Zero(size, size);
  Matrix<Scalar> d = Matrix<Scalar>::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    const Scalar a = int_power(q, -n);
    const Scalar b = p.alpha * p.beta * int_power(q, n + 1);
    Scalar term(1);
    Scalar qk(1);
    for (int k = 0; k <= n; ++k) {
      c(n, k) = term;
      term *= (one - a * qk) * (one - b * qk) * q / ((one - q * qk) * (one - p.alpha * q * qk));
      qk *= q;
    }
  }
  for (int x = 0; x < size; ++x) {
    const Scalar a = int_power(q, -x);
    Scalar term(1);
    Scalar qk(1);
    for (int k = 0; k <= x; ++k) {
      d(x, k) = term;
      if (k < p.m) term *= (one - a * qk) / (one - q_minus_m * qk);
      qk *= q;
    }
  }
  return c * d.transpose();
}

template <class Scalar>
Matrix<Scalar> q_hahn_orthonormal_matrix(const QHahnParams<Scalar>& p) {
  using std::exp;
  const int size = p.m + 1;
  Vector<Scalar> sqrt_w(size);
  Vector<Scalar> inv_sqrt_h(size);
  for (int i = 0; i < size; ++i) {
    sqrt_w(i) = exp(q_hahn_log_weight(i, p) / 2);
    inv_sqrt_h(i) = exp(-q_hahn_log_norm(i, p) / 2);
  }
  return inv_sqrt_h.asDiagonal() * q_hahn_Q_matrix(p) * sqrt_w.asDiagonal();
}

/// (1 - beta q^{m-x}) Q_n(q^{-x}) - (1 - q^{m-x}) Q_n(q^{-x-1})
///   - (1 - alpha q^{n+1})(1 - beta q^n) q^{m-n-x} / (1 - alpha q) Q_n(q^{-x}; alpha q, beta/q).
template <class Scalar>
Residual<Scalar> q_diff_residual_1(int n, int x, const QHahnParams<Scalar>& p) {
  using std::abs;
  detail::check_index(x, 0, p.m, "q_diff_residual_1: x");
  const Scalar one(1);
  const Scalar& q = p.q;
  const QHahnParams<Scalar> s = p.shifted();
  const Scalar a = (one - p.beta * int_power(q, p.m - x)) * q_hahn_Q(n, x, p);
  const Scalar b = (one - int_power(q, p.m - x)) * q_hahn_Q(n, x + 1, p);
  const Scalar c = (one - p.alpha * int_power(q, n + 1)) * (one - p.beta * int_power(q, n)) *
                   int_power(q, p.m - n - x) / (one - p.alpha * q) * q_hahn_Q(n, x, s);
  return {a - b - c, std::max({abs(a), abs(b), abs(c)})};
}

/// (1 - q^{x+1}) alpha q Q_n(q^{-x}; alpha q, beta/q) - (1 - alpha q^{x+2}) Q_n(q^{-x-1}; alpha q, beta/q)
///   + (1 - alpha q) Q_n(q^{-x-1}).
template <class Scalar>
Residual<Scalar> q_diff_residual_2(int n, int x, const QHahnParams<Scalar>& p) {
  using std::abs;
  detail::check_index(x, 0, p.m, "q_diff_residual_2: x");
  const Scalar one(1);
  const Scalar& q = p.q;
  const QHahnParams<Scalar> s = p.shifted();
  const Scalar a = (one - int_power(q, x + 1)) * p.alpha * q * q_hahn_Q(n, x, s);
  const Scalar b = (one - p.alpha * int_power(q, x + 2)) * q_hahn_Q(n, x + 1, s);
  const Scalar c = (one - p.alpha * q) * q_hahn_Q(n, x + 1, p);
  return {a - b + c, std::max({abs(a), abs(b), abs(c)})};
}

}  // namespace hahnchain
