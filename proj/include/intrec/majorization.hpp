#pragma once

#include <functional>

#include <Eigen/Dense>

namespace intrec {

inline constexpr double kMajorizationTolerance = 1e-12;

/// a ≻ b: sorted descending, every prefix sum of a dominates that of b and the
/// totals agree (both within 1e-12). Throws DomainError on length mismatch.
bool majorizes(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Σ f(a_k) − Σ f(b_k). Non-negative for convex f by Karamata's inequality.
/// Throws DomainError unless a ≻ b.
double karamata_gap(const std::function<double(double)>& f, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Piecewise-linear interpolant of samples (x_i, y_i); a convex function handle
/// when the samples are convex. The end segments extend linearly.
class TabulatedFunction {
 public:
  TabulatedFunction(Eigen::VectorXd x, Eigen::VectorXd y);
  double operator()(double x) const;

 private:
  Eigen::VectorXd x_;
  Eigen::VectorXd y_;
};

/// Vector with every entry replaced by the mean of `a`.
Eigen::VectorXd mean_vector(const Eigen::VectorXd& a);

}  // namespace intrec
