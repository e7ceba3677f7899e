#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace hahnchain {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// MPFR-backed real with a fixed number of decimal digits. Expression
/// templates are disabled so the type composes cleanly with Eigen.
template <unsigned Digits10>
using mpfr_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<Digits10>,
    boost::multiprecision::et_off>;

/// Precision tiers available to the extended-precision evaluation paths.
inline constexpr unsigned kMaxWorkingDigits = 800;

/// Decimal digits needed so the alternating Hahn / q-Hahn series of a chain of
/// half-length m still deliver better than 1e-20 absolute accuracy on the
/// orthonormal functions. Classical cancellation grows like 10^(0.48 m); the
/// q-series like 10^(0.55 m^2 log10(1/q)).
inline unsigned required_digits(int m, std::optional<double> q = std::nullopt) {
  double digits = 30.0 + 0.5 * (m + 1);
  if (q) digits += 0.6 * double(m) * double(m) * std::log10(1.0 / *q);
  return static_cast<unsigned>(std::ceil(digits));
}

/// Digits for pointwise relative accuracy of single Q_n(x) values, as the
/// difference equations need. Unweighted q-series near n = x = m cancel like
/// 10^(1.05 m^2 log10(1/q)), well beyond what the orthonormal functions need.
inline unsigned required_digits_pointwise(int m, std::optional<double> q = std::nullopt) {
  double digits = 30.0 + 0.5 * (m + 1);
  if (q) digits += 1.2 * double(m) * double(m) * std::log10(1.0 / *q);
  return static_cast<unsigned>(std::ceil(digits));
}

/// Invokes `fn.template operator()<T>()` with T the smallest MPFR tier that
/// carries at least `digits10` decimal digits.
template <class Fn>
decltype(auto) with_working_precision(unsigned digits10, Fn&& fn) {
  if (digits10 <= 50) return fn.template operator()<mpfr_real<50>>();
  if (digits10 <= 100) return fn.template operator()<mpfr_real<100>>();
  if (digits10 <= 200) return fn.template operator()<mpfr_real<200>>();
  if (digits10 <= 400) return fn.template operator()<mpfr_real<400>>();
  if (digits10 <= kMaxWorkingDigits)
    return fn.template operator()<mpfr_real<kMaxWorkingDigits>>();
  throw std::domain_error("required working precision of " +
                          std::to_string(digits10) +
                          " digits exceeds the supported maximum");
}

/// Rounds any supported scalar to double.
template <class Scalar>
double to_double(const Scalar& x) {
  return static_cast<double>(x);
}

}  // namespace hahnchain
