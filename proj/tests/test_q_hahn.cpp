#include <doctest.h>

#include <cmath>

#include "hahnchain/q_hahn.hpp"

using namespace hahnchain;
using doctest::Approx;

namespace {

// Runs fn with the working precision the library picks for (m, q).
template <class Fn>
void in_working_precision(int m, double q, Fn&& fn) {
  with_working_precision(required_digits_pointwise(m, q), std::forward<Fn>(fn));
}

}  // namespace

TEST_CASE("q_hahn_Q values") {
  const QHahnParams<double> p{0.8, 0.6, 0.5, 6};
  for (int x = 0; x <= 6; ++x) CHECK(q_hahn_Q(0, x, p) == 1.0);
  for (int n = 0; n <= 6; ++n) CHECK(q_hahn_Q(n, 0, p) == 1.0);

  // Q_1(q^{-1}; 0.5, 0.5, 2 | 0.5): the k = 1 term carries (q^{-x};q)_1 / (q;q)_1
  const double q = 0.5, a = 0.5, b = 0.5;
  const double hand = 1.0 + (1 - 1 / q) * (1 - a * b * q * q) * (1 - 1 / q) * q /
                                ((1 - a * q) * (1 - 1 / (q * q)) * (1 - q));
  CHECK(hand == Approx(7.0 / 12.0).epsilon(1e-15));
  CHECK(q_hahn_Q(1, 1, QHahnParams<double>{a, b, q, 2}) == Approx(hand).epsilon(1e-15));

  // reference values from an independent 40-digit evaluation
  CHECK(q_hahn_Q(3, 2, p) == Approx(0.5039180107526881720430108).epsilon(1e-12));
  CHECK(q_hahn_orthonormal(3, 2, p) == Approx(0.3854953542325039783483487).epsilon(1e-10));

  CHECK_THROWS_AS(q_hahn_Q(0, 0, QHahnParams<double>{0.8, 0.6, 1.0, 3}), std::domain_error);
  CHECK_THROWS_AS(q_hahn_weight(0, QHahnParams<double>{2.5, 0.6, 0.5, 3}), std::domain_error);
  CHECK_THROWS_AS(q_hahn_Q(0, 8, p), std::invalid_argument);
}

TEST_CASE("q_hahn_Q_matrix matches pointwise evaluation") {
  const QHahnParams<double> p{0.2, 0.9, 0.7, 5};
  const Matrix<double> Q = q_hahn_Q_matrix(p);
  for (int n = 0; n <= 5; ++n)
    for (int x = 0; x <= 5; ++x) CHECK(Q(n, x) == Approx(q_hahn_Q(n, x, p)).epsilon(1e-10));
}

TEST_CASE("q weight and norm") {
  const QHahnParams<double> p{0.5, 0.5, 0.5, 3};
  CHECK(q_hahn_weight(0, p) == 1.0);
  double total = 0.0;
  for (int x = 0; x <= 3; ++x) {
    CHECK(q_hahn_weight(x, p) > 0.0);
    total += q_hahn_weight(x, p);
  }
  CHECK(q_hahn_norm(0, p) == Approx(total).epsilon(1e-13));

  const double a = 0.5, b = 0.5, q = 0.5;
  const double h0 = q_pochhammer(a * b * q * q, q, 3) / (q_pochhammer(b * q, q, 3) * std::pow(a * q, 3));
  CHECK(q_hahn_norm(0, p) == Approx(h0).epsilon(1e-14));

  const QHahnParams<double> p2{0.5, 0.5, 0.5, 2};
  double brute = 0.0;
  for (int x = 0; x <= 2; ++x) brute += q_hahn_weight(x, p2) * std::pow(q_hahn_Q(1, x, p2), 2);
  CHECK(q_hahn_norm(1, p2) == Approx(brute).epsilon(1e-13));

  for (int n = 0; n <= 10; ++n) CHECK(q_hahn_norm(n, QHahnParams<double>{0.8, 0.6, 0.5, 10}) > 0.0);
}

TEST_CASE("orthonormal q-Hahn functions") {
  const QHahnParams<double> p{0.8, 0.6, 0.5, 4};
  for (int n = 0; n <= 4; ++n)
    for (int l = 0; l <= 4; ++l) {
      double sum = 0.0;
      for (int x = 0; x <= 4; ++x) sum += q_hahn_orthonormal(n, x, p) * q_hahn_orthonormal(l, x, p);
      CHECK(sum == Approx(n == l ? 1.0 : 0.0).epsilon(1e-10));
    }
  CHECK(q_hahn_orthonormal(0, 0, p) == Approx(1 / std::sqrt(q_hahn_norm(0, p))).epsilon(1e-14));
}

TEST_CASE("q-orthogonality at m = 30") {
  in_working_precision(30, 0.3, [&]<class T>() {
    const QHahnParams<T> p{T("0.8"), T("0.3"), T("0.3"), 30};
    const Matrix<T> Qt = q_hahn_orthonormal_matrix(p);
    const T defect = (Qt * Qt.transpose() - Matrix<T>::Identity(31, 31)).cwiseAbs().maxCoeff();
    CHECK(to_double(defect) <= 1e-10);
  });
}

TEST_CASE("q-difference equations") {
  const QHahnParams<double> d{0.8, 0.6, 0.5, 5};
  for (int x = 0; x <= 5; ++x) {
    CHECK(q_diff_residual_1(0, x, d).relative() < 1e-15);
    CHECK(q_diff_residual_2(0, x, d).relative() < 1e-15);
  }
  in_working_precision(5, 0.5, [&]<class T>() {
    CHECK(to_double(q_diff_residual_1(2, 1, QHahnParams<T>{T("0.8"), T("0.6"), T("0.5"), 5}).relative()) <= 1e-12);
    CHECK(to_double(q_diff_residual_2(1, 0, QHahnParams<T>{T("0.8"), T("0.6"), T("0.5"), 4}).relative()) <= 1e-12);
  });
  in_working_precision(8, 0.5, [&]<class T>() {
    const QHahnParams<T> p{T("0.8"), T("0.6"), T("0.5"), 8};
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n)
      for (int x = 0; x <= 8; ++x)
        worst = std::max({worst, to_double(q_diff_residual_1(n, x, p).relative()),
                          to_double(q_diff_residual_2(n, x, p).relative())});
    CHECK(worst <= 1e-11);
  });
}
