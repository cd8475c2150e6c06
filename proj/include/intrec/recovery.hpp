#pragma once

#include <Eigen/Dense>

#include "intrec/modulus.hpp"
#include "intrec/stochastic.hpp"

namespace intrec {

/// Deterministic offsets 0 = t₁ < t₂ < … < t_n added to a random trigger time.
class OffsetSchedule {
 public:
  /// Throws ValidationError unless offsets[0] == 0 exactly and the sequence is
  /// strictly increasing.
  explicit OffsetSchedule(Eigen::VectorXd offsets);

  const Eigen::VectorXd& offsets() const { return offsets_; }
  Eigen::Index size() const { return offsets_.size(); }
  double last() const { return offsets_[offsets_.size() - 1]; }
  double operator[](Eigen::Index k) const { return offsets_[k]; }

  /// s_k = t_{k+1} − t_k for k < n and s_n = 1 − t_n.
  Eigen::VectorXd gaps() const;

  /// Schedule with the given gaps s₁..s_{n−1} (the tail gap is implied).
  static OffsetSchedule from_gaps(const Eigen::VectorXd& inner_gaps);

 private:
  Eigen::VectorXd offsets_;
};

/// Weights of the linear method Σ c_k ξ_{τ + t_k}, kept in affine-in-τ form:
/// c₁ = τ + first_base, c_k = mid[k−2] for 2 ≤ k ≤ n−1, c_n = last_base − τ.
/// A single-sample method (n = 1) has c₁ = first_base = 1 and no τ dependence.
struct RecoveryWeights {
  Eigen::Index n = 1;
  double first_base = 1.0;
  Eigen::VectorXd mid;
  double last_base = 0.0;

  /// Realized c_k for trigger value tau.
  Eigen::VectorXd realize(double tau) const;
};

/// Sharp bound sup E|∫₀ᵃ ξ − a·ξ_τ| over the class: I(a/2 − t*) + I(a/2 + t*),
/// t* = ‖τ − a/2‖∞.
double ostrowski_bound(const Modulus& m, double a, const Envelope& env);

/// Optimal recovery error for the times τ + t_k on [0, 1]:
/// 2 Σ I((t_{k+1} − t_k)/2) + I(c − t*) + I(c + t*), c = (1 − t_n)/2, t* = ‖τ − c‖∞.
/// Throws FeasibilityError when M + t_n > 1.
double recovery_error(const Modulus& m, const OffsetSchedule& sched, const Envelope& env);

/// The weights of the optimal linear method for a schedule.
RecoveryWeights optimal_weights(const OffsetSchedule& sched);

}  // namespace intrec
