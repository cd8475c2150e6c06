#include "intrec/recovery.hpp"

#include <cmath>

#include "intrec/errors.hpp"

namespace intrec {

OffsetSchedule::OffsetSchedule(Eigen::VectorXd offsets) : offsets_(std::move(offsets)) {
  if (offsets_.size() == 0) throw ValidationError("schedule: at least one offset is required");
  if (offsets_[0] != 0.0) throw ValidationError("schedule: first offset must be exactly 0");
  for (Eigen::Index k = 1; k < offsets_.size(); ++k) {
    if (!std::isfinite(offsets_[k]) || !(offsets_[k] > offsets_[k - 1]))
      throw ValidationError("schedule: offsets must be strictly increasing");
  }
}

Eigen::VectorXd OffsetSchedule::gaps() const {
  const Eigen::Index n = size();
  Eigen::VectorXd s(n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) s[k] = offsets_[k + 1] - offsets_[k];
  s[n - 1] = 1.0 - last();
  return s;
}

OffsetSchedule OffsetSchedule::from_gaps(const Eigen::VectorXd& inner_gaps) {
  Eigen::VectorXd t(inner_gaps.size() + 1);
  t[0] = 0.0;
  for (Eigen::Index k = 0; k < inner_gaps.size(); ++k) t[k + 1] = t[k] + inner_gaps[k];
  return OffsetSchedule(std::move(t));
}

Eigen::VectorXd RecoveryWeights::realize(double tau) const {
  Eigen::VectorXd c(n);
  if (n == 1) {
    c[0] = first_base;
    return c;
  }
  c[0] = tau + first_base;
  c.segment(1, n - 2) = mid;
  c[n - 1] = last_base - tau;
  return c;
}

double ostrowski_bound(const Modulus& m, double a, const Envelope& env) {
  if (!(a > 0.0)) throw DomainError("ostrowski_bound: a must be positive");
  if (env.a != a) throw DomainError("ostrowski_bound: envelope domain length differs from a");
  if (!(0.0 <= env.m && env.m <= env.M && env.M <= a)) throw DomainError("ostrowski_bound: envelope outside [0, a]");
  const double half = 0.5 * a;
  const double t_star = sup_deviation(env, half);
  return integral_I(m, std::max(0.0, half - t_star)) + integral_I(m, half + t_star);
}

double recovery_error(const Modulus& m, const OffsetSchedule& sched, const Envelope& env) {
  if (env.a != 1.0) throw DomainError("recovery_error: the observation window must be [0, 1]");
  if (!(0.0 <= env.m && env.m <= env.M)) throw DomainError("recovery_error: invalid envelope");
  if (env.M + sched.last() > 1.0) throw FeasibilityError("recovery_error: M + t_n exceeds 1");

  const Eigen::VectorXd& t = sched.offsets();
  double inner = 0.0;
  for (Eigen::Index k = 0; k + 1 < t.size(); ++k) inner += integral_I(m, 0.5 * (t[k + 1] - t[k]));

  const double center = 0.5 * (1.0 - sched.last());
  const double t_star = sup_deviation(env, center);
  // Feasibility puts t* <= center; clamp rounding noise only.
  return 2.0 * inner + integral_I(m, std::max(0.0, center - t_star)) + integral_I(m, center + t_star);
}

RecoveryWeights optimal_weights(const OffsetSchedule& sched) {
  RecoveryWeights w;
  const Eigen::Index n = sched.size();
  w.n = n;
  if (n == 1) {
    w.first_base = 1.0;
    w.last_base = 0.0;
    return w;
  }
  const Eigen::VectorXd& t = sched.offsets();
  w.first_base = 0.5 * (t[1] - t[0]);
  w.mid.resize(n - 2);
  for (Eigen::Index k = 1; k + 1 < n; ++k) w.mid[k - 1] = 0.5 * (t[k + 1] - t[k - 1]);
  w.last_base = 1.0 - 0.5 * (t[n - 1] + t[n - 2]);
  return w;
}

}  // namespace intrec
