#pragma once

// Pochhammer symbols, q-shifted factorials and terminating (basic)
// hypergeometric series. Every routine is templated on the scalar so the same
// code runs in double and in the MPFR tiers of precision.hpp.

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hahnchain {

namespace detail {

inline void require_nonnegative(int k, const char* what) {
  if (k < 0) throw std::invalid_argument(std::string(what) + ": negative count");
}

}  // namespace detail

/// Rising factorial (a)_k = a(a+1)...(a+k-1), (a)_0 = 1.
template <class Scalar>
Scalar pochhammer(const Scalar& a, int k) {
  detail::require_nonnegative(k, "pochhammer");
  Scalar result(1);
  for (int i = 0; i < k; ++i) result *= a + i;
  return result;
}

/// ln((a)_k) for a > 0. Short products are summed term by term; long ones in
/// double fall back to a log-gamma difference.
template <class Scalar>
Scalar log_pochhammer(const Scalar& a, int k) {
  using std::lgamma;
  using std::log;
  detail::require_nonnegative(k, "log_pochhammer");
  if (!(a > 0)) throw std::domain_error("log_pochhammer: requires a > 0");
  if constexpr (std::is_floating_point_v<Scalar>) {
    if (k > 256) return lgamma(a + k) - lgamma(a);
  }
  Scalar result(0);
  for (int i = 0; i < k; ++i) result += log(a + i);
  return result;
}

/// base^e for any integer e by binary exponentiation.
template <class Scalar>
Scalar int_power(const Scalar& base, int e) {
  Scalar result(1);
  Scalar b = e < 0 ? Scalar(1) / base : base;
  unsigned long long k = e < 0 ? -static_cast<long long>(e) : e;
  while (k) {
    if (k & 1) result *= b;
    b *= b;
    k >>= 1;
  }
  return result;
}

/// q-shifted factorial (a;q)_k = (1-a)(1-aq)...(1-aq^{k-1}).
template <class Scalar>
Scalar q_pochhammer(const Scalar& a, const Scalar& q, int k) {
  detail::require_nonnegative(k, "q_pochhammer");
  Scalar result(1);
  Scalar aq = a;
  for (int i = 0; i < k; ++i) {
    result *= Scalar(1) - aq;
    aq *= q;
  }
  return result;
}

/// pFq summed over k = 0..term_count-1.
template <class Scalar>
struct HypSeriesSpec {
  std::vector<Scalar> numerator_params;
  std::vector<Scalar> denominator_params;
  Scalar argument;
  int term_count = 1;
};

/// r phi s (with the (q;q)_k denominator implied) summed over k = 0..term_count-1.
template <class Scalar>
struct QHypSeriesSpec {
  std::vector<Scalar> numerator_params;
  std::vector<Scalar> denominator_params;
  Scalar q;
  Scalar argument;
  int term_count = 1;
};

/// Forward summation k = 0, 1, ...; term k+1 is obtained from term k by one
/// multiply/divide step, so each evaluation is O(term_count).
template <class Scalar>
Scalar hyp_terminating(const HypSeriesSpec<Scalar>& spec) {
  if (spec.term_count < 1)
    throw std::invalid_argument("hyp_terminating: term_count must be >= 1");
  Scalar term(1);
  Scalar sum(1);
  for (int k = 0; k + 1 < spec.term_count; ++k) {
    Scalar num(1);
    for (const auto& a : spec.numerator_params) num *= a + k;
    Scalar den(k + 1);
    for (const auto& b : spec.denominator_params) {
      const Scalar factor = b + k;
      if (factor == 0) throw std::domain_error("hyp_terminating: denominator pole in summed range");
      den *= factor;
    }
    term *= num * spec.argument / den;
    sum += term;
  }
  return sum;
}

template <class Scalar>
Scalar q_hyp_terminating(const QHypSeriesSpec<Scalar>& spec) {
  if (spec.term_count < 1)
    throw std::invalid_argument("q_hyp_terminating: term_count must be >= 1");
  Scalar term(1);
  Scalar sum(1);
  Scalar qk(1);
  for (int k = 0; k + 1 < spec.term_count; ++k) {
    Scalar num(1);
    for (const auto& a : spec.numerator_params) num *= Scalar(1) - a * qk;
    Scalar den = Scalar(1) - qk * spec.q;
    for (const auto& d : spec.denominator_params) den *= Scalar(1) - d * qk;
    if (den == 0) throw std::domain_error("q_hyp_terminating: vanishing denominator in summed range");
    term *= num * spec.argument / den;
    sum += term;
    qk *= spec.q;
  }
  return sum;
}

/// Product of factors that switches to log-magnitude form once the running
/// direct product leaves [1e-280, 1e280]. Only built-in floating types can get
/// there; MPFR exponents are effectively unbounded, so those keep the direct
/// product only.
template <class Scalar>
class ProductAccumulator {
 public:
  void multiply(const Scalar& f) { push(f, false); }
  void divide(const Scalar& f) { push(f, true); }

  Scalar value() const {
    using std::exp;
    if (zero_) return Scalar(0);
    if (direct_ok_) return direct_;
    return Scalar(sign_) * exp(log_abs_);
  }

  /// ln|product|; meaningless when sign() == 0.
  Scalar log_abs() const {
    using std::abs;
    using std::log;
    if constexpr (kTracksLog) {
      return log_abs_;
    } else {
      return log(abs(direct_));
    }
  }

  int sign() const { return zero_ ? 0 : sign_; }

 private:
  static constexpr bool kTracksLog = std::is_floating_point_v<Scalar>;

  void push(const Scalar& f, bool invert) {
    using std::abs;
    using std::log;
    if (f == 0) {
      if (invert) throw std::domain_error("ProductAccumulator: division by zero factor");
      zero_ = true;
      return;
    }
    if (zero_) return;
    if (f < 0) sign_ = -sign_;
    if constexpr (kTracksLog) {
      const Scalar lf = log(abs(f));
      log_abs_ += invert ? -lf : lf;
    }
    if (direct_ok_) {
      if (invert) direct_ /= f;
      else direct_ *= f;
      if constexpr (kTracksLog) {
        const Scalar mag = abs(direct_);
        if (mag > Scalar(1e280) || mag < Scalar(1e-280)) direct_ok_ = false;
      }
    }
  }

  Scalar direct_ = Scalar(1);
  Scalar log_abs_ = Scalar(0);
  int sign_ = 1;
  bool direct_ok_ = true;
  bool zero_ = false;
};

}  // namespace hahnchain
