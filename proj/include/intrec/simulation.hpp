#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "intrec/modulus.hpp"
#include "intrec/recovery.hpp"
#include "intrec/stochastic.hpp"

namespace intrec {

inline constexpr int kDefaultGridSize = 4096;
inline constexpr double kMembershipSlack = 1e-10;

/// Values of a function on the equispaced grid tⱼ = j·a/N, j = 0..N.
/// Off-grid values come from the broken-line interpolant.
class GridFunction {
 public:
  /// Throws DomainError unless a > 0 and there are at least two values.
  GridFunction(double domain_length, Eigen::VectorXd values);

  double domain_length() const { return domain_length_; }
  Eigen::Index intervals() const { return values_.size() - 1; }
  double step() const { return domain_length_ / static_cast<double>(intervals()); }
  double time(Eigen::Index j) const { return domain_length_ * static_cast<double>(j) / static_cast<double>(intervals()); }
  const Eigen::VectorXd& values() const { return values_; }

  /// Linear interpolation; t must lie in [0, a] (up to 1e-12).
  double at(double t) const;
  /// Trapezoid rule over the grid (the exact integral of the interpolant).
  double trapezoid() const;

 private:
  double domain_length_;
  Eigen::VectorXd values_;
};

/// A process on a finite atom partition: one grid function per atom (columns of
/// values()), sharing the grid, with atom probabilities.
class GridProcess {
 public:
  /// values is (N+1) × atoms. Throws ValidationError for inconsistent shapes or
  /// invalid probabilities.
  GridProcess(double domain_length, Eigen::VectorXd probs, Eigen::MatrixXd values);

  double domain_length() const { return domain_length_; }
  Eigen::Index intervals() const { return values_.rows() - 1; }
  Eigen::Index atoms() const { return values_.cols(); }
  const Eigen::VectorXd& probs() const { return probs_; }
  const Eigen::MatrixXd& values() const { return values_; }

  GridFunction atom(Eigen::Index j) const { return GridFunction(domain_length_, values_.col(j)); }
  /// Pointwise expectation Σ pᵢ ξ⁽ⁱ⁾(tⱼ).
  Eigen::VectorXd mean() const { return values_ * probs_; }

 private:
  double domain_length_;
  Eigen::VectorXd probs_;
  Eigen::MatrixXd values_;
};

/// Equal to x/p on the chosen atom and 0 elsewhere, so that E ξ_t = x(t).
GridProcess make_generated_process(const GridFunction& x, Eigen::Index atom_index, const Eigen::VectorXd& atom_probs);

/// x(t) = min_k ω(|t − (tau1 + t_k)|) on the grid over [0, a].
/// Throws FeasibilityError when tau1 < 0 or tau1 + t_n > a.
GridFunction extremal_function(const Modulus& m, const OffsetSchedule& sched, double tau1,
                               int grid_size = kDefaultGridSize, double a = 1.0);

/// Random member of H^ω on [0, a] with x(0) = 0: each grid value is drawn
/// uniformly from the intersection of the ω-cones of all earlier values.
/// grid_size is the number of intervals N (≥ 2).
GridFunction sample_hw_function(const Modulus& m, int grid_size, std::uint64_t seed, double a = 1.0);

/// |f(tᵢ) − f(tⱼ)| ≤ ω(|tᵢ − tⱼ|) + 1e-10 for all grid pairs; above 2001 grid
/// points the check uses adjacent pairs plus 10⁶ deterministic random pairs.
bool check_hw_membership(const Modulus& m, const GridFunction& f);

/// |f(t) − f(anchor)| ≤ ω(|t − anchor|) + 1e-10 at every grid point.
bool check_anchored_membership(const Modulus& m, const GridFunction& f, double anchor);

enum class MembershipVerdict { certified_by_atoms, falsified, undetermined };

const char* to_string(MembershipVerdict v);

/// Two-tier test for E|ξ_τ − ξ_θ| ≤ ω(‖τ − θ‖∞): the atomwise H^ω certificate,
/// then `trials` random grid-valued pairs (τ, θ) on the atom partition.
MembershipVerdict check_class_membership(const Modulus& m, const GridProcess& p, int trials, std::uint64_t seed);

/// Σ pᵢ |∫₀¹ ξ⁽ⁱ⁾ − Σ_k c_k(τᵢ) ξ⁽ⁱ⁾(τᵢ + t_k)| with trapezoid integration.
double empirical_error(const GridProcess& p, const OffsetSchedule& sched, const SimpleRandomVariable& tau,
                       const RecoveryWeights& w);

/// Σ pᵢ |∫₀ᵃ ξ⁽ⁱ⁾ − a·ξ⁽ⁱ⁾(τᵢ)|, the single-sample method on [0, a].
double empirical_ostrowski_error(const GridProcess& p, const SimpleRandomVariable& tau);

/// Cuts [τ, τ + b] out of every atom and re-centres so the sample at τ vanishes:
/// ζ_t = ξ_t − ξ_τ for t ≤ τ, ζ_t = ξ_{t+b} − ξ_{τ+b} beyond, on a fresh grid
/// over [0, a − b] with the same number of intervals.
GridProcess shift_cutout(const GridProcess& p, const SimpleRandomVariable& tau, double b);

/// The process that attains the optimal recovery error: the generated process
/// of extremal_function on the atom whose trigger is farthest from (1 − t_n)/2.
GridProcess extremal_process(const Modulus& m, const OffsetSchedule& sched, const SimpleRandomVariable& tau,
                             int grid_size = kDefaultGridSize);

/// Same for the single-sample bound on [0, a] (farthest from a/2).
GridProcess extremal_ostrowski_process(const Modulus& m, const SimpleRandomVariable& tau,
                                       int grid_size = kDefaultGridSize);

/// Atomwise random H^ω process on τ's partition: every atom is an independent
/// sample_hw_function draw, randomly reflected and shifted by a constant.
GridProcess random_atomwise_process(const Modulus& m, const Eigen::VectorXd& probs, int grid_size,
                                    std::uint64_t seed, double a = 1.0);

}  // namespace intrec
