#pragma once

#include <Eigen/Dense>

namespace intrec {

inline constexpr double kProbabilityTolerance = 1e-12;

/// Finitely supported random time with values in [0, a].
///
/// Atom i takes value values()[i] with probability probs()[i]. The atom order
/// defines the partition of the sample space: two variables share a partition
/// when they have the same number of atoms with pairwise equal probabilities.
class SimpleRandomVariable {
 public:
  /// Throws ValidationError unless probs are in (0, 1] and sum to 1 within
  /// 1e-12, every value lies in [0, a], and there is at least one atom.
  SimpleRandomVariable(Eigen::VectorXd values, Eigen::VectorXd probs, double domain_length);

  static SimpleRandomVariable deterministic(double value, double domain_length);

  /// Same partition as `like`, constant value `value` on every atom.
  static SimpleRandomVariable constant_on(const SimpleRandomVariable& like, double value);

  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& probs() const { return probs_; }
  double domain_length() const { return domain_length_; }
  Eigen::Index atoms() const { return values_.size(); }

 private:
  Eigen::VectorXd values_;
  Eigen::VectorXd probs_;
  double domain_length_;
};

/// Essential infimum m and supremum M of a random time on [0, a].
struct Envelope {
  double m;
  double M;
  double a;
};

/// Throws DomainError unless 0 <= m <= M <= a and a > 0.
Envelope make_envelope(double m, double M, double a = 1.0);

Envelope envelope(const SimpleRandomVariable& tau);

/// ‖τ − c‖∞ for any τ with envelope `env`.
double sup_deviation(const Envelope& env, double center);

/// ‖τ − θ‖∞ over a shared atom partition; throws PartitionError otherwise.
double sup_distance(const SimpleRandomVariable& tau, const SimpleRandomVariable& theta);

/// True when both variables have the same number of atoms and pairwise equal
/// probabilities (within 1e-12).
bool same_partition(const Eigen::VectorXd& probs_a, const Eigen::VectorXd& probs_b);

}  // namespace intrec
