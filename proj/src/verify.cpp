#include "hahnchain/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hahnchain/dynamics.hpp"
#include "hahnchain/numeric_oracle.hpp"

namespace hahnchain {

namespace {

SuiteResult make_result(std::string name, double residual, double tolerance) {
  return {std::move(name), residual, tolerance, residual <= tolerance, true};
}

SuiteResult not_applicable(std::string name, double tolerance) {
  return {std::move(name), 0.0, tolerance, true, false};
}

// max over (l, n) of |sum_x w Q_l Q_n - h_n delta_ln| / h_n.
template <class T, class QMatrix, class LogWeight, class LogNorm>
double orthogonality_defect(int m, const QMatrix& Q, LogWeight log_w, LogNorm log_h) {
  using std::exp;
  Vector<T> w(m + 1);
  Vector<T> h(m + 1);
  for (int i = 0; i <= m; ++i) {
    w(i) = exp(log_w(i));
    h(i) = exp(log_h(i));
  }
  const Matrix<T> gram = Q * w.asDiagonal() * Q.transpose();
  T worst(0);
  for (int l = 0; l <= m; ++l)
    for (int n = 0; n <= m; ++n) {
      using std::abs;
      const T target = l == n ? h(n) : T(0);
      worst = std::max(worst, T(abs(gram(l, n) - target) / h(n)));
    }
  return to_double(worst);
}

template <class T, class Fn>
double max_relative(int m, Fn residual) {
  T worst(0);
  for (int n = 0; n <= m; ++n)
    for (int x = 0; x <= m; ++x) worst = std::max(worst, T(residual(n, x).relative()));
  return to_double(worst);
}

template <class T>
void polynomial_suites(const ChainSpec& spec, double rtol, std::vector<SuiteResult>& out) {
  const int m = spec.m;
  if (!spec.is_q()) {
    const HahnParams<T> p{T(spec.alpha), T(spec.beta), m};
    out.push_back(make_result(
        "hahn-orthogonality",
        orthogonality_defect<T>(
            m, hahn_Q_matrix(p), [&](int x) { return hahn_log_weight(x, p); },
            [&](int n) { return hahn_log_norm(n, p); }),
        rtol));
    out.push_back(make_result(
        "diff-eq-1", max_relative<T>(m, [&](int n, int x) { return diff_residual_1(n, x, p); }),
        rtol));
    out.push_back(make_result(
        "diff-eq-2", max_relative<T>(m, [&](int n, int x) { return diff_residual_2(n, x, p); }),
        rtol));
    out.push_back(not_applicable("q-diff-eq-1", rtol));
    out.push_back(not_applicable("q-diff-eq-2", rtol));
    return;
  }
  const QHahnParams<T> p{T(spec.alpha), T(spec.beta), T(*spec.q), m};
  out.push_back(make_result(
      "hahn-orthogonality",
      orthogonality_defect<T>(
          m, q_hahn_Q_matrix(p), [&](int x) { return q_hahn_log_weight(x, p); },
          [&](int n) { return q_hahn_log_norm(n, p); }),
      rtol));
  out.push_back(not_applicable("diff-eq-1", rtol));
  out.push_back(not_applicable("diff-eq-2", rtol));
  out.push_back(make_result(
      "q-diff-eq-1", max_relative<T>(m, [&](int n, int x) { return q_diff_residual_1(n, x, p); }),
      rtol));
  out.push_back(make_result(
      "q-diff-eq-2", max_relative<T>(m, [&](int n, int x) { return q_diff_residual_2(n, x, p); }),
      rtol));
}

double unitarity_defect(const EigenSystem<double>& es) {
  const Eigen::Index n = es.U.rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  double worst = max_abs_residual(correlation_matrix(es, 0.0), I);
  for (double t : {0.37, 1.3, M_PI / 2, 5.1}) {
    const Eigen::MatrixXcd F = correlation_matrix(es, t);
    worst = std::max(worst, max_abs_residual(F * F.adjoint(), I));
  }
  return worst;
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

const SuiteResult& VerificationReport::at(const std::string& name) const {
  for (const SuiteResult& s : suites)
    if (s.name == name) return s;
  throw std::out_of_range("no verification suite named " + name);
}

VerificationReport run_verification(const ChainSpec& spec, double rtol) {
  spec.validate();
  if (!(rtol > 0.0)) throw std::invalid_argument("run_verification: rtol must be positive");
  VerificationReport report;
  with_working_precision(required_digits_pointwise(spec.m, spec.q),
                         [&]<class T>() { polynomial_suites<T>(spec, rtol, report.suites); });

  const EigenSystem<double> es = analytic_eigensystem(spec);
  const double eps_max = es.eigenvalues.cwiseAbs().maxCoeff();
  report.suites.push_back(make_result("U-orthogonality", orthogonality_residual(es), rtol));
  report.suites.push_back(make_result("MU-UD", residual_MU_UD(spec, es) / eps_max, rtol));

  const OracleMatch match =
      match_eigensystems(es, tridiag_eigen(interaction_matrix(build_couplings(spec))));
  report.suites.push_back(make_result(
      "oracle-match", std::max(match.max_eigenvalue_rel_diff(), match.max_overlap_deviation()), rtol));
  report.suites.push_back(make_result("correlation-unitarity", unitarity_defect(es), rtol));

  const ChainSpec integer{spec.m, spec.alpha, spec.alpha + 1.0, std::nullopt};
  report.suites.push_back(make_result(
      "kummer", std::abs(end_to_end_hypergeometric(integer, M_PI / 2) - amplitude_at_halfpi(integer)),
      rtol));
  report.suites.push_back(make_result(
      "gauss", std::abs(end_to_end_hypergeometric(integer, M_PI) - amplitude_at_pi(integer)), rtol));
  return report;
}

}  // namespace hahnchain
