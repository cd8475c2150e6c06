#include "intrec/stochastic.hpp"

#include <cmath>

#include "intrec/errors.hpp"

namespace intrec {

SimpleRandomVariable::SimpleRandomVariable(Eigen::VectorXd values, Eigen::VectorXd probs, double domain_length)
    : values_(std::move(values)), probs_(std::move(probs)), domain_length_(domain_length) {
  if (!(domain_length_ > 0.0) || !std::isfinite(domain_length_))
    throw ValidationError("random time: domain length must be positive");
  if (values_.size() == 0) throw ValidationError("random time: at least one atom is required");
  if (values_.size() != probs_.size()) throw ValidationError("random time: values and probabilities differ in length");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!(probs_[i] > 0.0 && probs_[i] <= 1.0)) throw ValidationError("random time: probabilities must lie in (0, 1]");
    if (!(values_[i] >= 0.0 && values_[i] <= domain_length_))
      throw ValidationError("random time: values must lie in [0, a]");
  }
  if (std::abs(probs_.sum() - 1.0) > kProbabilityTolerance)
    throw ValidationError("random time: probabilities must sum to 1");
}

SimpleRandomVariable SimpleRandomVariable::deterministic(double value, double domain_length) {
  return SimpleRandomVariable(Eigen::VectorXd::Constant(1, value), Eigen::VectorXd::Ones(1), domain_length);
}

SimpleRandomVariable SimpleRandomVariable::constant_on(const SimpleRandomVariable& like, double value) {
  return SimpleRandomVariable(Eigen::VectorXd::Constant(like.atoms(), value), like.probs(), like.domain_length());
}

Envelope make_envelope(double m, double M, double a) {
  if (!(a > 0.0)) throw DomainError("envelope: a must be positive");
  if (!(0.0 <= m && m <= M && M <= a)) throw DomainError("envelope: need 0 <= m <= M <= a");
  return Envelope{m, M, a};
}

Envelope envelope(const SimpleRandomVariable& tau) {
  return Envelope{tau.values().minCoeff(), tau.values().maxCoeff(), tau.domain_length()};
}

double sup_deviation(const Envelope& env, double center) {
  return std::max(std::abs(env.m - center), std::abs(env.M - center));
}

bool same_partition(const Eigen::VectorXd& probs_a, const Eigen::VectorXd& probs_b) {
  if (probs_a.size() != probs_b.size()) return false;
  return ((probs_a - probs_b).cwiseAbs().array() <= kProbabilityTolerance).all();
}

double sup_distance(const SimpleRandomVariable& tau, const SimpleRandomVariable& theta) {
  if (!same_partition(tau.probs(), theta.probs()))
    throw PartitionError("sup_distance: random times are defined over different atom partitions");
  return (tau.values() - theta.values()).cwiseAbs().maxCoeff();
}

}  // namespace intrec
