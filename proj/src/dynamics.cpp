#include "hahnchain/dynamics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hahnchain {

namespace {

constexpr double kParameterMatch = 1e-14;

void check_site(const ChainSpec& spec, int site, const char* name) {
  if (site < 0 || site > spec.N())
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(site) +
                                " is not a site of a chain with N = " + std::to_string(spec.N()));
}

void check_site(const EigenSystem<double>& es, int site, const char* name) {
  if (site < 0 || site >= es.U.rows())
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(site) +
                                " outside the eigensystem");
}

template <class T>
T sign_power(int e) {
  return T(e % 2 ? -1 : 1);
}

template <class T>
T pi_value() {
  using std::acos;
  return acos(T(-1));
}

// Hahn or q-Hahn ingredients for the even-site family (0) and the odd-site
// family (1).
template <class T>
class Families {
 public:
  explicit Families(const ChainSpec& spec) : is_q_(spec.is_q()) {
    if (!is_q_) {
      hahn_[0] = HahnParams<T>{T(spec.alpha), T(spec.beta), spec.m};
      hahn_[1] = hahn_[0].shifted();
    } else {
      q_hahn_[0] = QHahnParams<T>{T(spec.alpha), T(spec.beta), T(*spec.q), spec.m};
      q_hahn_[1] = q_hahn_[0].shifted();
    }
  }

  T Q(int family, int n, int x) const {
    return is_q_ ? q_hahn_Q(n, x, q_hahn_[family]) : hahn_Q(n, x, hahn_[family]);
  }
  T log_weight(int family, int x) const {
    return is_q_ ? q_hahn_log_weight(x, q_hahn_[family]) : hahn_log_weight(x, hahn_[family]);
  }
  T log_norm(int family, int n) const {
    return is_q_ ? q_hahn_log_norm(n, q_hahn_[family]) : hahn_log_norm(n, hahn_[family]);
  }

 private:
  bool is_q_;
  HahnParams<T> hahn_[2]{};
  QHahnParams<T> q_hahn_[2]{};
};

// The even/even and odd/even closed forms generalise to all four
// parity pairs: the sign of U_{r,m-j} is (-1)^k for r = 2k and -(-1)^k for
// r = 2k+1, and (-1)^{r+s} selects cosine or i sine.
template <class T>
std::complex<double> closed_form_impl(const ChainSpec& spec, int r, int s, double t_in) {
  using std::cos;
  using std::exp;
  using std::sin;
  const Families<T> fam(spec);
  const int fr = r % 2, k = r / 2;
  const int fs = s % 2, l = s / 2;
  const bool same_parity = fr == fs;
  const Vector<T> E = eigenvalue_magnitudes<T>(spec);
  const T t(t_in);
  T sum(0);
  for (int j = 0; j <= spec.m; ++j) {
    const T inv_sqrt_norms = exp(-(fam.log_norm(fr, j) + fam.log_norm(fs, j)) / 2);
    const T trig = same_parity ? cos(t * E(j)) : sin(t * E(j));
    sum += fam.Q(fr, j, k) * fam.Q(fs, j, l) * inv_sqrt_norms * trig;
  }
  const T prefactor = sign_power<T>(k + l) * exp((fam.log_weight(fr, k) + fam.log_weight(fs, l)) / 2);
  const double value = to_double(prefactor * sum);
  return same_parity ? std::complex<double>(value, 0.0) : std::complex<double>(0.0, -value);
}

template <class T>
std::complex<double> general_impl(const ChainSpec& spec, double t_in) {
  using std::sin;
  using std::sqrt;
  const int m = spec.m;
  const T alpha(spec.alpha), beta(spec.beta), t(t_in);
  T sum(0);
  T minus_m_j(1);  // (-m)_j
  T j_factorial(1);
  for (int j = 0; j <= m; ++j) {
    const T ab = (alpha + (j + 1)) * (beta + j);
    const T coeff = (alpha + beta + (2 * j + 1)) * minus_m_j /
                    (pochhammer(alpha + beta + (j + 1), m + 1) * j_factorial);
    sum += coeff * sin(2 * t * sqrt(ab)) / sqrt(ab);
    minus_m_j *= T(j - m);
    j_factorial *= T(j + 1);
  }
  const T prefactor =
      sign_power<T>(m) * sqrt(pochhammer(beta, m + 1) * pochhammer(alpha + 1, m + 1));
  return {0.0, -to_double(prefactor * sum)};
}

template <class T>
std::complex<double> integer_spectrum_impl(const ChainSpec& spec, double t_in) {
  using std::sin;
  const int m = spec.m;
  const T alpha(spec.alpha), t(t_in);
  T sum(0);
  T minus_m_j(1);
  T j_factorial(1);
  for (int j = 0; j <= m; ++j) {
    sum += minus_m_j / (pochhammer(alpha * 2 + (j + 2), m + 1) * j_factorial) *
           sin(2 * t * (alpha + (j + 1)));
    minus_m_j *= T(j - m);
    j_factorial *= T(j + 1);
  }
  return {0.0, -to_double(2 * sign_power<T>(m) * pochhammer(alpha + 1, m + 1) * sum)};
}

template <class T>
std::complex<double> hypergeometric_impl(const ChainSpec& spec, double t_in) {
  using std::sin;
  const int m = spec.m;
  const T alpha(spec.alpha), t(t_in);
  const T a2 = alpha * 2 + 2;
  T sum(0);
  T coeff(1);  // (-m)_j (2alpha+2)_j / (j! (2alpha+m+3)_j)
  for (int j = 0; j <= m; ++j) {
    sum += coeff * sin(2 * t * (alpha + (j + 1)));
    coeff *= T(j - m) * (a2 + j) / (T(j + 1) * (alpha * 2 + (m + 3 + j)));
  }
  const T prefactor = 2 * sign_power<T>(m) * pochhammer(alpha + 1, m + 1) / pochhammer(a2, m + 1);
  return {0.0, -to_double(prefactor * sum)};
}

template <class T>
std::complex<double> at_pi_impl(const ChainSpec& spec) {
  using std::sin;
  const int m = spec.m;
  const T alpha(spec.alpha);
  const T value = 2 * sin(2 * pi_value<T>() * alpha) * sign_power<T>(m) *
                  pochhammer(alpha + 1, m + 1) * pochhammer(T(m + 1), m) /
                  pochhammer(alpha * 2 + 2, 2 * m + 1);
  return {0.0, -to_double(value)};
}

// With beta = q alpha the eigenvalue magnitudes are 2 (1 - alpha q^{k+1}) q^{(m-k)/2}.
// The overall sign is -i(-1)^m: that is what the eigen-expansion of the
// analytic U gives (the opposite sign, i(-1)^m, disagrees with it).
template <class T>
std::complex<double> q_end_to_end_impl(const ChainSpec& spec, double t_in) {
  using std::sin;
  using std::sqrt;
  const int m = spec.m;
  const T alpha(spec.alpha), q(*spec.q), t(t_in);
  const T one(1);
  T sum(0);
  for (int j = 0; j <= m; ++j) {
    const T freq = 2 * (one - alpha * int_power(q, j + 1)) * sqrt(int_power(q, m - j));
    const T term = sin(t * freq) * sqrt(int_power(q, j * j)) * q_pochhammer(int_power(q, m - j + 1), q, j) *
                   (one + alpha * int_power(q, j + 1)) /
                   (q_pochhammer(alpha * alpha * int_power(q, j + 2), q, m + 1) * q_pochhammer(q, q, j));
    sum += sign_power<T>(j) * term;
  }
  const T prefactor = sign_power<T>(m) * sqrt(int_power(q * alpha, m)) *
                      q_pochhammer(alpha * q, q, m + 1);
  return {0.0, -to_double(prefactor * sum)};
}

unsigned digits_for(const ChainSpec& spec) { return required_digits(spec.m, spec.q); }

void require_integer_spectrum(const ChainSpec& spec, const char* what) {
  spec.validate();
  if (!has_integer_spectrum(spec))
    throw std::invalid_argument(std::string(what) + ": requires a classical chain with beta = alpha + 1");
}

}  // namespace

bool has_integer_spectrum(const ChainSpec& spec) {
  return !spec.is_q() && std::abs(spec.beta - (spec.alpha + 1.0)) <= kParameterMatch;
}

bool has_proportional_q_parameters(const ChainSpec& spec) {
  return spec.is_q() && std::abs(spec.beta - *spec.q * spec.alpha) <= kParameterMatch;
}

CorrelationSample correlation(const EigenSystem<double>& es, int r, int s, double t) {
  check_site(es, r, "r");
  check_site(es, s, "s");
  const Eigen::VectorXcd phases =
      (std::complex<double>(0.0, -t) * es.eigenvalues.cast<std::complex<double>>()).array().exp();
  const std::complex<double> amplitude =
      (es.U.row(r).cwiseProduct(es.U.row(s)).cast<std::complex<double>>() * phases)(0, 0);
  assert(std::abs(amplitude - correlation_folded(es, r, s, t)) <= 1e-12);
  return {r, s, t, amplitude};
}

std::complex<double> correlation_folded(const EigenSystem<double>& es, int r, int s, double t) {
  check_site(es, r, "r");
  check_site(es, s, "s");
  const int m = static_cast<int>(es.U.rows() / 2) - 1;
  const double parity = (r + s) % 2 ? -1.0 : 1.0;
  std::complex<double> sum = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double eps = es.eigenvalues(m - j);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, -t * eps)) + parity * std::exp(std::complex<double>(0.0, t * eps));
    sum += es.U(r, m - j) * es.U(s, m - j) * phase;
  }
  return sum;
}

Eigen::MatrixXcd correlation_matrix(const EigenSystem<double>& es, double t) {
  const Eigen::VectorXcd phases =
      (std::complex<double>(0.0, -t) * es.eigenvalues.cast<std::complex<double>>()).array().exp();
  const Eigen::MatrixXcd U = es.U.cast<std::complex<double>>();
  return U * phases.asDiagonal() * U.transpose();
}

CorrelationSample correlation_closed_form(const ChainSpec& spec, int r, int s, double t) {
  spec.validate();
  check_site(spec, r, "r");
  check_site(spec, s, "s");
  const auto amplitude = with_working_precision(
      digits_for(spec), [&]<class T>() { return closed_form_impl<T>(spec, r, s, t); });
  return {r, s, t, amplitude};
}

std::complex<double> end_to_end_general(const ChainSpec& spec, double t) {
  spec.validate();
  if (spec.is_q()) throw std::invalid_argument("end_to_end_general: classical chains only");
  return with_working_precision(digits_for(spec), [&]<class T>() { return general_impl<T>(spec, t); });
}

std::complex<double> end_to_end_integer_spectrum(const ChainSpec& spec, double t) {
  require_integer_spectrum(spec, "end_to_end_integer_spectrum");
  return with_working_precision(digits_for(spec),
                                [&]<class T>() { return integer_spectrum_impl<T>(spec, t); });
}

std::complex<double> end_to_end_hypergeometric(const ChainSpec& spec, double t) {
  require_integer_spectrum(spec, "end_to_end_hypergeometric");
  return with_working_precision(digits_for(spec),
                                [&]<class T>() { return hypergeometric_impl<T>(spec, t); });
}

std::function<std::complex<double>(double)> end_to_end_evaluator(const ChainSpec& spec) {
  spec.validate();
  if (!spec.is_q()) {
    if (has_integer_spectrum(spec)) {
      return [spec](double t) {
        const std::complex<double> reduced = end_to_end_hypergeometric(spec, t);
        const std::complex<double> general = end_to_end_general(spec, t);
        if (std::abs(reduced - general) > 1e-10)
          throw std::logic_error("end_to_end: reduced and general sums disagree at t = " +
                                 std::to_string(t));
        return reduced;
      };
    }
    return [spec](double t) { return end_to_end_general(spec, t); };
  }
  if (has_proportional_q_parameters(spec))
    return [spec](double t) { return q_end_to_end(spec, t); };
  return [es = analytic_eigensystem(spec), N = spec.N()](double t) {
    return correlation(es, N, 0, t).amplitude;
  };
}

CorrelationSample end_to_end(const ChainSpec& spec, double t) {
  return {spec.N(), 0, t, end_to_end_evaluator(spec)(t)};
}

std::complex<double> amplitude_at_halfpi(const ChainSpec& spec) {
  require_integer_spectrum(spec, "amplitude_at_halfpi");
  return with_working_precision(digits_for(spec), [&]<class T>() {
    using std::sin;
    const T value = sign_power<T>(spec.m) * sin(pi_value<T>() * T(spec.alpha));
    return std::complex<double>(0.0, to_double(value));
  });
}

std::complex<double> amplitude_at_pi(const ChainSpec& spec) {
  require_integer_spectrum(spec, "amplitude_at_pi");
  return with_working_precision(digits_for(spec), [&]<class T>() { return at_pi_impl<T>(spec); });
}

std::optional<PstCondition> pst_condition(double alpha, double tolerance, int max_denominator) {
  if (!(alpha > -1.0)) throw std::invalid_argument("pst_condition: requires alpha > -1");
  const double target = 2.0 * alpha + 1.0;
  for (int k = 0; 2 * k + 1 <= max_denominator; ++k) {
    const long long denominator = 2 * k + 1;
    const long long l = std::llround(target * double(denominator) / 2.0);
    if (l < 0) continue;
    if (std::abs(2.0 * double(l) / double(denominator) - target) <= tolerance)
      return PstCondition{k, static_cast<int>(l), double(denominator) * M_PI / 2.0};
  }
  return std::nullopt;
}

std::complex<double> q_end_to_end(const ChainSpec& spec, double t) {
  spec.validate();
  if (!has_proportional_q_parameters(spec))
    throw std::invalid_argument("q_end_to_end: requires a q-chain with beta = q alpha");
  return with_working_precision(digits_for(spec),
                                [&]<class T>() { return q_end_to_end_impl<T>(spec, t); });
}

std::vector<PSTResult> pst_scan(const ChainSpec& spec, std::span<const double> t_grid,
                                double tolerance) {
  if (t_grid.empty()) throw std::invalid_argument("pst_scan: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("pst_scan: time grid must be strictly increasing");
  const auto evaluate = end_to_end_evaluator(spec);
  std::vector<PSTResult> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double modulus = std::abs(evaluate(t));
    out.push_back({t, modulus, modulus >= 1.0 - tolerance});
  }
  return out;
}

}  // namespace hahnchain
