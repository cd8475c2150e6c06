#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "intrec/modulus.hpp"
#include "intrec/recovery.hpp"
#include "intrec/stochastic.hpp"

namespace intrec {

enum class PlacementCase { uniform, case_A, case_B, case_C };

std::string to_string(PlacementCase c);

struct PlacementResult {
  PlacementCase label;
  OffsetSchedule offsets;
  double value;
  Envelope envelope;
  /// Set for the uniform optimum, where the first measurement is at a fixed time.
  std::optional<double> fixed_trigger;

  /// Measurement times τ + t_k for a realized trigger value.
  Eigen::VectorXd times(double trigger) const { return offsets.offsets().array() + trigger; }
};

/// Best deterministic (or random) measurement times: value 2n·I(1/(2n)) at
/// times (2k − 1)/(2n). Throws DomainError for n < 1.
PlacementResult uniform_optimal(const Modulus& m, int n);

/// Which closed form applies to (n, envelope). Case A is reported when both
/// the A and B conditions hold (only at m = M = 1/(2n)).
PlacementCase classify(int n, const Envelope& env);

/// Closed-form value of a case formula, evaluated without checking the case
/// condition. Case C with n = 1 throws std::logic_error.
double case_value(PlacementCase c, const Modulus& m, int n, const Envelope& env);

/// Offsets attaining the case formula.
OffsetSchedule case_offsets(PlacementCase c, int n, const Envelope& env);

/// Optimal offsets t₂..t_n for a trigger with envelope (m, M) on [0, 1].
/// Throws FeasibilityError when n ≥ 2 and M = 1 (no schedule fits).
PlacementResult triggered_optimal(const Modulus& m, int n, const Envelope& env);

/// s = (s₁, …, s_n) with s_k ≥ 0, s_n ≥ M and Σ s = 1 (within 1e-12).
bool is_admissible(const Eigen::VectorXd& gaps, double M);

/// (s₁/2, s₁/2, …, s_{n−1}/2, s_{n−1}/2, s_n − shift, shift); shift = M gives
/// s^M, shift = m gives s^m.
Eigen::VectorXd expand_gaps(const Eigen::VectorXd& gaps, double shift);

/// The equalized vector whose I-sum is the optimum of the given case.
Eigen::VectorXd limit_vector(PlacementCase c, int n, const Envelope& env);

struct SearchResult {
  OffsetSchedule offsets;
  double value;
  long evaluations;
};

/// Brute-force oracle: grid search over offsets on multiples of `resolution`
/// followed by coordinate refinement with 20 step halvings. n ≤ 4 and
/// resolution ∈ (0, 0.1]; throws DomainError otherwise and FeasibilityError
/// when n ≥ 2 and M ≥ 1.
SearchResult numeric_search(const Modulus& m, int n, const Envelope& env, double resolution);

}  // namespace intrec
