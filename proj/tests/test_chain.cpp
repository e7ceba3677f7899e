#include <doctest.h>

#include <cmath>

#include "hahnchain/chain.hpp"
#include "hahnchain/numeric_oracle.hpp"

using namespace hahnchain;
using doctest::Approx;

TEST_CASE("couplings") {
  const Eigen::VectorXd krawtchouk = build_couplings(ChainSpec{1, -0.5, 0.5}).values;
  REQUIRE(krawtchouk.size() == 3);
  CHECK(krawtchouk(0) == Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(krawtchouk(1) == Approx(2.0).epsilon(1e-15));
  CHECK(krawtchouk(2) == Approx(std::sqrt(3.0)).epsilon(1e-15));

  const Eigen::VectorXd J = build_couplings(ChainSpec{1, 0.0, 1.0}).values;
  CHECK(J(0) == Approx(2 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(J(1) == Approx(2.0).epsilon(1e-15));
  CHECK(J(2) == Approx(2 * std::sqrt(2.0)).epsilon(1e-15));

  // beta = alpha + 1 gives sqrt((k+2a+2)(N-k+2a+1)) on even k
  const double a = 0.3;
  const ChainSpec shi{4, a, a + 1};
  const Eigen::VectorXd Js = build_couplings(shi).values;
  const int N = shi.N();
  for (int k = 0; k < N; ++k) {
    const double expected = k % 2 ? std::sqrt((k + 1.0) * (N - k)) : std::sqrt((k + 2 * a + 2) * (N - k + 2 * a + 1));
    CHECK(Js(k) == Approx(expected).epsilon(1e-15));
  }

  const Eigen::VectorXd Jq = build_couplings(ChainSpec{3, 0.8, 0.6, 0.5}).values;
  CHECK(Jq.size() == 7);
  CHECK((Jq.array() > 0).all());
  const double q = 0.5;
  CHECK(Jq(0) == Approx(2 * std::sqrt((1 - 0.8 * q) * (1 - 0.6 * q * q * q))).epsilon(1e-15));
  CHECK(Jq(5) == Approx(2 * std::sqrt((1 - q * q * q) * (1 - q) * q * q * q * 0.8)).epsilon(1e-15));
}

TEST_CASE("chain parameter domain") {
  CHECK_THROWS_AS(build_couplings(ChainSpec{2, -1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(build_couplings(ChainSpec{2, 0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(build_couplings(ChainSpec{-1, 0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(build_couplings(ChainSpec{2, 0.5, 1.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(build_couplings(ChainSpec{2, 2.5, 0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(build_couplings(ChainSpec{2, 0.5, 0.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS(analytic_eigensystem(ChainSpec{2, 0.5, NAN}), std::domain_error);
}

TEST_CASE("interaction matrix") {
  CouplingArray<double> J{Eigen::VectorXd::Ones(1)};
  const Eigen::MatrixXd M = interaction_matrix(J).dense();
  CHECK(M.rows() == 2);
  CHECK(M(0, 0) == 0.0);
  CHECK(M(0, 1) == 1.0);
  CHECK(M(1, 0) == 1.0);
  CHECK(M(1, 1) == 0.0);
  for (int m : {0, 3, 7}) {
    const TridiagonalMatrix<double> T = interaction_matrix(build_couplings(ChainSpec{m, 0.2, 0.9}));
    CHECK(T.dimension() == 2 * m + 2);
    CHECK(T.dense().isApprox(T.dense().transpose()));
  }
}

TEST_CASE("analytic eigensystem small cases") {
  const EigenSystem<double> es = analytic_eigensystem(ChainSpec{1, 0.0, 1.0});
  const Eigen::Vector4d expected(-4, -2, 2, 4);
  CHECK((es.eigenvalues - expected).cwiseAbs().maxCoeff() < 1e-14);
  const OracleEigenSystem oracle = tridiag_eigen(interaction_matrix(build_couplings(ChainSpec{1, 0.0, 1.0})));
  CHECK((oracle.eigenvalues - expected).cwiseAbs().maxCoeff() < 1e-13);

  for (int m = 0; m <= 6; ++m) {
    const ChainSpec c{m, -0.5, 0.5};
    const Eigen::VectorXd eps = analytic_eigensystem(c).eigenvalues;
    for (int j = 0; j <= c.N(); ++j) CHECK(eps(j) == Approx(-c.N() + 2.0 * j).epsilon(1e-14));
  }

  const ChainSpec q0{0, 0.5, 0.5, 0.5};
  const EigenSystem<double> small = analytic_eigensystem(q0);
  const double J0 = build_couplings(q0).values(0);
  CHECK(small.eigenvalues(0) == Approx(-J0).epsilon(1e-15));
  CHECK(small.eigenvalues(1) == Approx(J0).epsilon(1e-15));
  CHECK(J0 == Approx(2 * std::sqrt(0.75 * 0.5)).epsilon(1e-15));
}

TEST_CASE("sign convention of U") {
  const ChainSpec spec{4, 0.37, 2.1};
  const EigenSystem<double> es = analytic_eigensystem(spec);
  const int m = spec.m;
  for (int j = 0; j <= m; ++j) {
    CHECK(es.U(0, m - j) > 0);
    CHECK(es.U(0, m + j + 1) == es.U(0, m - j));
    CHECK(es.U(1, m - j) < 0);
    CHECK(es.U(1, m + j + 1) == -es.U(1, m - j));
    CHECK(es.U(2, m - j) * es.U(2, m + j + 1) >= 0);
  }
}

TEST_CASE("M U = U D") {
  CHECK(residual_MU_UD(ChainSpec{1, -0.5, 0.5}) <= 1e-12);

  const ChainSpec big{20, 0.37, 2.1};
  const EigenSystem<double> es = analytic_eigensystem(big);
  const double eps_max = es.eigenvalues.cwiseAbs().maxCoeff();
  CHECK(residual_MU_UD(big, es) <= 1e-10 * eps_max);
  CHECK(orthogonality_residual(es) <= 1e-10);

  const ChainSpec q{10, 0.8, 0.6, 0.5};
  const EigenSystem<double> qes = analytic_eigensystem(q);
  CHECK(residual_MU_UD(q, qes) <= 1e-10 * qes.eigenvalues.cwiseAbs().maxCoeff());
  CHECK(orthogonality_residual(qes) <= 1e-10);
}

TEST_CASE("spectrum structure") {
  for (const ChainSpec& spec : {ChainSpec{7, -0.9, 0.1}, ChainSpec{7, 2.0, 2.4}, ChainSpec{7, 0.2, 0.9, 0.3}}) {
    const Eigen::VectorXd eps = analytic_eigensystem(spec).eigenvalues;
    for (int j = 0; j <= spec.N(); ++j) CHECK(eps(j) + eps(spec.N() - j) == 0.0);
    for (int j = 0; j < spec.N(); ++j) CHECK(eps(j) < eps(j + 1));
  }
  const double a = 0.37;
  const ChainSpec shi{9, a, a + 1};
  const Eigen::VectorXd eps = analytic_eigensystem(shi).eigenvalues;
  for (int k = 0; k <= shi.m; ++k) {
    CHECK(std::abs(eps(shi.m + k + 1) - 2 * (a + k + 1)) <= 1e-12);
    CHECK(std::abs(eps(shi.m - k) + 2 * (a + k + 1)) <= 1e-12);
  }
}

TEST_CASE("double evaluation agrees with the working precision for short chains") {
  const ChainSpec spec{5, 0.3, 1.7};
  const EigenSystem<double> plain = analytic_eigensystem<double>(spec);
  const EigenSystem<double> careful = analytic_eigensystem(spec);
  CHECK((plain.U - careful.U).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("working precision policy is converged") {
  // the chosen tier and the next one up agree far below the double-rounding level
  for (const ChainSpec& spec : {ChainSpec{50, 0.37, 2.4}, ChainSpec{30, 0.2, 0.9, 0.3}, ChainSpec{20, 0.8, 0.3, 0.9}}) {
    const unsigned digits = required_digits(spec.m, spec.q);
    const double diff = with_working_precision(digits, [&]<class T>() {
      const Matrix<T> lo = analytic_eigensystem<T>(spec).U;
      return with_working_precision(2 * digits + 1, [&]<class S>() {
        const Matrix<S> hi = analytic_eigensystem<S>(spec).U;
        return to_double((hi - lo.template cast<S>()).cwiseAbs().maxCoeff());
      });
    });
    CHECK(diff <= 1e-20);
  }
}
