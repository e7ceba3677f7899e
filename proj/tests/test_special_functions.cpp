#include <doctest.h>

#include <cmath>

#include "hahnchain/precision.hpp"
#include "hahnchain/special_functions.hpp"

using namespace hahnchain;
using doctest::Approx;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 5) == 120.0);
  CHECK(pochhammer(-3.0, 5) == 0.0);
  CHECK_THROWS_AS(pochhammer(1.0, -1), std::invalid_argument);

  for (double a : {-2.5, -0.3, 0.0, 0.7, 4.25})
    for (int k = 0; k < 12; ++k) CHECK(pochhammer(a, k + 1) == pochhammer(a, k) * (a + k));
}

TEST_CASE("log_pochhammer") {
  CHECK(log_pochhammer(1.0, 5) == Approx(std::log(120.0)).epsilon(1e-15));
  CHECK(log_pochhammer(0.5, 2) == Approx(std::log(0.75)).epsilon(1e-15));
  CHECK(log_pochhammer(2.0, 0) == 0.0);
  CHECK_THROWS_AS(log_pochhammer(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(log_pochhammer(-1.5, 3), std::domain_error);

  for (double a : {0.01, 0.5, 1.0, 3.3, 17.0})
    for (int k : {1, 7, 30, 100}) {
      const double direct = pochhammer(a, k);
      if (direct < 1e300)
        CHECK(std::exp(log_pochhammer(a, k)) == Approx(direct).epsilon(1e-12));
    }
  // long products take the log-gamma route
  CHECK(log_pochhammer(0.5, 400) == Approx(std::lgamma(400.5) - std::lgamma(0.5)).epsilon(1e-14));
}

TEST_CASE("q_pochhammer") {
  CHECK(q_pochhammer(1.0, 0.5, 3) == 0.0);
  CHECK(q_pochhammer(0.5, 0.5, 2) == Approx(0.375).epsilon(1e-15));
  CHECK(q_pochhammer(0.9, 0.3, 0) == 1.0);
  for (double a : {-2.0, 0.3, 0.9})
    for (int k = 0; k < 10; ++k)
      CHECK(q_pochhammer(a, 0.7, k + 1) ==
            Approx(q_pochhammer(a, 0.7, k) * (1.0 - a * std::pow(0.7, k))).epsilon(1e-15));
}

TEST_CASE("int_power") {
  CHECK(int_power(2.0, 10) == 1024.0);
  CHECK(int_power(2.0, -3) == 0.125);
  CHECK(int_power(0.3, 0) == 1.0);
}

TEST_CASE("hyp_terminating") {
  HypSeriesSpec<double> one{{-3.0, 2.5, 1.0}, {0.5, -4.0}, 1.0, 1};
  CHECK(hyp_terminating(one) == 1.0);

  const int m = 3;
  const double alpha = 0.25;
  HypSeriesSpec<double> s{{double(-m), 2 * alpha + 2}, {2 * alpha + m + 3}, -1.0, m + 1};
  SUBCASE("Kummer sum") {
    CHECK(hyp_terminating(s) ==
          Approx((3.5 * 4.5 * 5.5) / (2.25 * 3.25 * 4.25)).epsilon(1e-14));
  }
  SUBCASE("Gauss sum") {
    s.argument = 1.0;
    CHECK(hyp_terminating(s) == Approx((4.0 * 5.0 * 6.0) / (6.5 * 7.5 * 8.5)).epsilon(1e-14));
  }
  SUBCASE("zero numerator") {
    HypSeriesSpec<double> z{{0.0, 0.0}, {1.5}, 0.7, 6};
    CHECK(hyp_terminating(z) == 1.0);
  }
  SUBCASE("errors") {
    HypSeriesSpec<double> pole{{1.0}, {-1.0}, 1.0, 4};
    CHECK_THROWS_AS(hyp_terminating(pole), std::domain_error);
    pole.term_count = 2;  // the zero factor b+1 is not reached
    CHECK_NOTHROW(hyp_terminating(pole));
    HypSeriesSpec<double> empty{{1.0}, {1.0}, 1.0, 0};
    CHECK_THROWS_AS(hyp_terminating(empty), std::invalid_argument);
  }
}

TEST_CASE("q_hyp_terminating") {
  const double q = 0.5, alpha = 0.5, beta = 0.5;
  QHypSeriesSpec<double> one{{0.3, 0.2}, {0.1}, q, q, 1};
  CHECK(q_hyp_terminating(one) == 1.0);

  QHypSeriesSpec<double> unit{{1.0, 0.3}, {0.1}, q, q, 5};
  CHECK(q_hyp_terminating(unit) == 1.0);

  // Q_1(q^{-1}; alpha, beta, 1 | q): two terms by hand
  QHypSeriesSpec<double> s{{1 / q, alpha * beta * q * q, 1 / q}, {alpha * q, 1 / q}, q, q, 2};
  const double hand = 1.0 + (1 - 1 / q) * (1 - alpha * beta * q * q) * q / ((1 - q) * (1 - alpha * q));
  CHECK(q_hyp_terminating(s) == Approx(hand).epsilon(1e-15));
  CHECK(hand == Approx(-0.25).epsilon(1e-15));

  QHypSeriesSpec<double> zero_den{{0.3}, {1 / q}, q, q, 3};
  CHECK_THROWS_AS(q_hyp_terminating(zero_den), std::domain_error);
  zero_den.term_count = 0;
  CHECK_THROWS_AS(q_hyp_terminating(zero_den), std::invalid_argument);
}

TEST_CASE("ProductAccumulator survives overflow of the direct product") {
  ProductAccumulator<double> acc;
  for (int i = 0; i < 100; ++i) acc.multiply(1e10);
  CHECK(acc.sign() == 1);
  CHECK(acc.log_abs() == Approx(1000 * std::log(10.0)).epsilon(1e-13));
  for (int i = 0; i < 99; ++i) acc.divide(-1e10);
  CHECK(acc.sign() == -1);
  CHECK(acc.value() == Approx(-1e10).epsilon(1e-12));
  acc.multiply(0.0);
  CHECK(acc.value() == 0.0);
  CHECK_THROWS_AS(acc.divide(0.0), std::domain_error);
}

TEST_CASE("extended scalars run the same code") {
  using T = mpfr_real<50>;
  const T v = pochhammer(T("0.5"), 30);
  CHECK(to_double(v) == Approx(pochhammer(0.5, 30)).epsilon(1e-14));
  CHECK(to_double(abs(exp(log_pochhammer(T("0.5"), 30)) / v - 1)) < 1e-40);
  HypSeriesSpec<T> s{{T(-3), T("2.5")}, {T("6.5")}, T(1), 4};
  CHECK(to_double(hyp_terminating(s)) == Approx((4.0 * 5.0 * 6.0) / (6.5 * 7.5 * 8.5)).epsilon(1e-15));
}

TEST_CASE("precision tiers") {
  CHECK(required_digits(0) == 31);
  CHECK(required_digits(50) > required_digits(10));
  CHECK(required_digits(10, 0.3) > required_digits(10));
  CHECK(required_digits_pointwise(20, 0.3) > required_digits(20, 0.3));
  CHECK(required_digits_pointwise(20) == required_digits(20));
  unsigned seen = 0;
  with_working_precision(120, [&]<class T>() { seen = std::numeric_limits<T>::digits10; });
  CHECK(seen >= 120);
  CHECK_THROWS_AS(with_working_precision(5000, []<class T>() { return 0; }), std::domain_error);
}
