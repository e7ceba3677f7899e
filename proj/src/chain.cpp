#include "hahnchain/chain.hpp"

#include <string>

namespace hahnchain {

void ChainSpec::validate() const {
  if (m < 0) throw std::domain_error("chain: m must be nonnegative");
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::domain_error("chain: alpha and beta must be finite");
  if (!q) {
    if (!(alpha > -1.0) || !(beta > 0.0))
      throw std::domain_error("chain: requires alpha > -1 and beta > 0 (got alpha = " +
                              std::to_string(alpha) + ", beta = " + std::to_string(beta) + ")");
    return;
  }
  const double qv = *q;
  if (!(qv > 0.0) || !(qv < 1.0)) throw std::domain_error("chain: requires 0 < q < 1");
  if (!(alpha > 0.0) || !(alpha < 1.0 / qv) || !(beta > 0.0) || !(beta < 1.0))
    throw std::domain_error("chain: q-model requires 0 < alpha < 1/q and 0 < beta < 1");
}

EigenSystem<double> analytic_eigensystem(const ChainSpec& spec) {
  spec.validate();
  return with_working_precision(required_digits(spec.m, spec.q), [&]<class T>() {
    const EigenSystem<T> es = analytic_eigensystem<T>(spec);
    return EigenSystem<double>{es.U.template cast<double>(),
                               es.eigenvalues.template cast<double>()};
  });
}

double residual_MU_UD(const ChainSpec& spec) {
  return residual_MU_UD(spec, analytic_eigensystem(spec));
}

}  // namespace hahnchain
