#pragma once

// Transition amplitudes f_{r,s}(t) = (r| exp(-itH) |s) of a single excitation,
// their closed forms, and perfect-state-transfer detection.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hahnchain/chain.hpp"

namespace hahnchain {

struct CorrelationSample {
  int r = 0;
  int s = 0;
  double t = 0.0;
  std::complex<double> amplitude;

  double modulus() const { return std::abs(amplitude); }
};

struct PSTResult {
  double time = 0.0;
  double modulus = 0.0;
  bool is_perfect = false;
};

/// 2 alpha + 1 = 2l / (2k+1): |f_{N,0}| = 1 at time (2k+1) pi / 2.
struct PstCondition {
  int k = 0;
  int l = 0;
  double time = 0.0;
};

inline constexpr double kDefaultPstTolerance = 1e-9;

/// beta = alpha + 1 (classical chain) within 1e-14.
bool has_integer_spectrum(const ChainSpec& spec);

/// beta = q alpha (q-chain) within 1e-14.
bool has_proportional_q_parameters(const ChainSpec& spec);

/// sum_j U_{rj} U_{sj} exp(-i t eps_j).
CorrelationSample correlation(const EigenSystem<double>& es, int r, int s, double t);

/// Same amplitude using U_{r,m-j} = (-1)^r U_{r,m+j+1} and eps_{m+j+1} = -eps_{m-j}:
/// sum_{j<=m} U_{r,m-j} U_{s,m-j} (exp(-it eps_{m-j}) + (-1)^{r+s} exp(it eps_{m-j})).
/// Only valid for the analytic eigensystem.
std::complex<double> correlation_folded(const EigenSystem<double>& es, int r, int s, double t);

/// [f_{r,s}(t)] = U exp(-itD) U^T.
Eigen::MatrixXcd correlation_matrix(const EigenSystem<double>& es, double t);

/// Parity-dispatched sums over (q-)Hahn evaluations: cosine sums when r and s
/// have equal parity, -i times sine sums otherwise.
CorrelationSample correlation_closed_form(const ChainSpec& spec, int r, int s, double t);

/// f_{N,0}(t) as a single sum over the spectrum, any classical (alpha, beta).
std::complex<double> end_to_end_general(const ChainSpec& spec, double t);

/// f_{N,0}(t) for beta = alpha + 1 as -2i(-1)^m (alpha+1)_{m+1} sum_j (-m)_j / ((j+2alpha+2)_{m+1} j!) sin(2t(alpha+j+1)).
std::complex<double> end_to_end_integer_spectrum(const ChainSpec& spec, double t);

/// The same sum rewritten with 2F1-type coefficients (-m)_j (2alpha+2)_j / (j! (2alpha+m+3)_j).
std::complex<double> end_to_end_hypergeometric(const ChainSpec& spec, double t);

/// f_{N,0}(t): the hypergeometric form when beta = alpha + 1 (checked against the
/// general sum), the general sum otherwise; q-chains use q_end_to_end when
/// beta = q alpha and the analytic eigen-expansion otherwise.
CorrelationSample end_to_end(const ChainSpec& spec, double t);

/// Reusable f_{N,0}(t) evaluator; does any per-spec set-up once.
std::function<std::complex<double>(double)> end_to_end_evaluator(const ChainSpec& spec);

/// i (-1)^m sin(pi alpha); requires beta = alpha + 1.
std::complex<double> amplitude_at_halfpi(const ChainSpec& spec);

/// -2i sin(2 pi alpha) (-1)^m (alpha+1)_{m+1} (m+1)_m / (2alpha+2)_{2m+1}; requires beta = alpha + 1.
std::complex<double> amplitude_at_pi(const ChainSpec& spec);

/// Smallest k (2k+1 <= max_denominator) with 2 alpha + 1 = 2l/(2k+1), l >= 0.
std::optional<PstCondition> pst_condition(double alpha, double tolerance = 1e-12,
                                          int max_denominator = 64);

/// Closed-form f_{N,0}(t) of the q-chain with beta = q alpha.
std::complex<double> q_end_to_end(const ChainSpec& spec, double t);

/// |f_{N,0}(t)| on a strictly increasing grid; is_perfect when modulus >= 1 - tolerance.
std::vector<PSTResult> pst_scan(const ChainSpec& spec, std::span<const double> t_grid,
                                double tolerance = kDefaultPstTolerance);

}  // namespace hahnchain
