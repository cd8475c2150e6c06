#include "intrec/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intrec/errors.hpp"
#include "intrec/random.hpp"

namespace intrec {

namespace {

constexpr Eigen::Index kExhaustivePairLimit = 2001;
constexpr long kRandomPairs = 1000000;
constexpr std::uint64_t kPairSamplerSeed = 0x5EEDF00DULL;
constexpr double kTimeSlack = 1e-12;

double interpolate(double a, const Eigen::Ref<const Eigen::VectorXd>& v, double t) {
  if (t < -kTimeSlack || t > a + kTimeSlack) throw DomainError("grid function: time outside [0, a]");
  const Eigen::Index n = v.size() - 1;
  const double s = std::clamp(t, 0.0, a) / a * static_cast<double>(n);
  const auto i = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(s)), 0, n - 1);
  const double w = std::clamp(s - static_cast<double>(i), 0.0, 1.0);
  return (1.0 - w) * v[i] + w * v[i + 1];
}

double trapezoid(double a, const Eigen::Ref<const Eigen::VectorXd>& v) {
  const Eigen::Index n = v.size() - 1;
  return a / static_cast<double>(n) * (v.sum() - 0.5 * (v[0] + v[n]));
}

// ω(k·h) for k = 0..n; pair distances on an equispaced grid are multiples of h.
Eigen::VectorXd modulus_table(const Modulus& m, double a, Eigen::Index n) {
  Eigen::VectorXd w(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) w[k] = eval_modulus(m, a * static_cast<double>(k) / static_cast<double>(n));
  return w;
}

Eigen::Index farthest_atom(const SimpleRandomVariable& tau, double center) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < tau.atoms(); ++i)
    if (std::abs(tau.values()[i] - center) > std::abs(tau.values()[best] - center)) best = i;
  return best;
}

void require_partition(const GridProcess& p, const SimpleRandomVariable& tau, const char* who) {
  if (!same_partition(p.probs(), tau.probs()))
    throw PartitionError(std::string(who) + ": random time and process use different atom partitions");
}

}  // namespace

GridFunction::GridFunction(double domain_length, Eigen::VectorXd values)
    : domain_length_(domain_length), values_(std::move(values)) {
  if (!(domain_length_ > 0.0)) throw DomainError("grid function: domain length must be positive");
  if (values_.size() < 2) throw DomainError("grid function: need at least two grid points");
}

double GridFunction::at(double t) const { return interpolate(domain_length_, values_, t); }

double GridFunction::trapezoid() const { return intrec::trapezoid(domain_length_, values_); }

GridProcess::GridProcess(double domain_length, Eigen::VectorXd probs, Eigen::MatrixXd values)
    : domain_length_(domain_length), probs_(std::move(probs)), values_(std::move(values)) {
  if (!(domain_length_ > 0.0)) throw ValidationError("grid process: domain length must be positive");
  if (values_.rows() < 2) throw ValidationError("grid process: need at least two grid points");
  if (values_.cols() != probs_.size() || probs_.size() == 0)
    throw ValidationError("grid process: one column per atom probability is required");
  for (Eigen::Index i = 0; i < probs_.size(); ++i)
    if (!(probs_[i] > 0.0 && probs_[i] <= 1.0)) throw ValidationError("grid process: probabilities must lie in (0, 1]");
  if (std::abs(probs_.sum() - 1.0) > kProbabilityTolerance)
    throw ValidationError("grid process: probabilities must sum to 1");
}

GridProcess make_generated_process(const GridFunction& x, Eigen::Index atom_index, const Eigen::VectorXd& atom_probs) {
  if (atom_index < 0 || atom_index >= atom_probs.size()) throw DomainError("generated process: atom index out of range");
  const double p = atom_probs[atom_index];
  if (!(p > 0.0)) throw DomainError("generated process: the chosen atom has zero probability");
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(x.values().size(), atom_probs.size());
  values.col(atom_index) = x.values() / p;
  return GridProcess(x.domain_length(), atom_probs, std::move(values));
}

GridFunction extremal_function(const Modulus& m, const OffsetSchedule& sched, double tau1, int grid_size, double a) {
  if (grid_size < 1) throw DomainError("extremal_function: grid size must be positive");
  if (!(tau1 >= 0.0) || tau1 + sched.last() > a)
    throw FeasibilityError("extremal_function: tau1 + t_n must lie in [0, a]");
  Eigen::VectorXd values(grid_size + 1);
  for (int j = 0; j <= grid_size; ++j) {
    const double t = a * static_cast<double>(j) / grid_size;
    double v = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < sched.size(); ++k) v = std::min(v, eval_modulus(m, std::abs(t - (tau1 + sched[k]))));
    values[j] = v;
  }
  return GridFunction(a, std::move(values));
}

GridFunction sample_hw_function(const Modulus& m, int grid_size, std::uint64_t seed, double a) {
  if (grid_size < 2) throw DomainError("sample_hw_function: grid size must be >= 2");
  const Eigen::Index n = grid_size;
  const Eigen::VectorXd w = modulus_table(m, a, n);
  Rng rng(seed);

  Eigen::VectorXd upper = Eigen::VectorXd::Constant(n + 1, std::numeric_limits<double>::infinity());
  Eigen::VectorXd lower = Eigen::VectorXd::Constant(n + 1, -std::numeric_limits<double>::infinity());
  Eigen::VectorXd x(n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) {
    if (j == 0) {
      x[0] = 0.0;
    } else {
      const double lo = lower[j];
      const double hi = std::max(lo, upper[j]);
      x[j] = lo + (hi - lo) * rng.uniform();
    }
    // Tighten the admissible band of every later point by the cone of x[j].
    const Eigen::Index rest = n - j;
    if (rest == 0) break;
    upper.tail(rest) = upper.tail(rest).cwiseMin((x[j] + w.segment(1, rest).array()).matrix());
    lower.tail(rest) = lower.tail(rest).cwiseMax((x[j] - w.segment(1, rest).array()).matrix());
  }
  return GridFunction(a, std::move(x));
}

bool check_hw_membership(const Modulus& m, const GridFunction& f) {
  const Eigen::Index n = f.intervals();
  const Eigen::VectorXd w = modulus_table(m, f.domain_length(), n);
  const Eigen::VectorXd& v = f.values();
  auto ok = [&](Eigen::Index i, Eigen::Index j) {
    return std::abs(v[i] - v[j]) <= w[std::abs(i - j)] + kMembershipSlack;
  };
  if (n + 1 <= kExhaustivePairLimit) {
    for (Eigen::Index i = 0; i <= n; ++i)
      for (Eigen::Index j = i + 1; j <= n; ++j)
        if (!ok(i, j)) return false;
    return true;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (!ok(i, i + 1)) return false;
  Rng rng(kPairSamplerSeed);
  for (long k = 0; k < kRandomPairs; ++k)
    if (!ok(rng.integer(0, n), rng.integer(0, n))) return false;
  return true;
}

bool check_anchored_membership(const Modulus& m, const GridFunction& f, double anchor) {
  const double at_anchor = f.at(anchor);
  for (Eigen::Index j = 0; j <= f.intervals(); ++j) {
    const double t = f.time(j);
    if (std::abs(f.values()[j] - at_anchor) > eval_modulus(m, std::abs(t - anchor)) + kMembershipSlack) return false;
  }
  return true;
}

const char* to_string(MembershipVerdict v) {
  switch (v) {
    case MembershipVerdict::certified_by_atoms:
      return "certified_by_atoms";
    case MembershipVerdict::falsified:
      return "falsified";
    case MembershipVerdict::undetermined:
      return "undetermined";
  }
  return "unknown";
}

MembershipVerdict check_class_membership(const Modulus& m, const GridProcess& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("check_class_membership: trials must be >= 1");
  bool atomwise = true;
  for (Eigen::Index j = 0; j < p.atoms() && atomwise; ++j) atomwise = check_hw_membership(m, p.atom(j));
  if (atomwise) return MembershipVerdict::certified_by_atoms;

  const Eigen::Index n = p.intervals();
  const Eigen::VectorXd w = modulus_table(m, p.domain_length(), n);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
    double expectation = 0.0;
    Eigen::Index sup = 0;
    for (Eigen::Index atom = 0; atom < p.atoms(); ++atom) {
      const auto i = static_cast<Eigen::Index>(rng.integer(0, n));
      const auto j = static_cast<Eigen::Index>(rng.integer(0, n));
      expectation += p.probs()[atom] * std::abs(p.values()(i, atom) - p.values()(j, atom));
      sup = std::max(sup, std::abs(i - j));
    }
    if (expectation > w[sup] + kMembershipSlack) return MembershipVerdict::falsified;
  }
  return MembershipVerdict::undetermined;
}

double empirical_error(const GridProcess& p, const OffsetSchedule& sched, const SimpleRandomVariable& tau,
                       const RecoveryWeights& w) {
  if (std::abs(p.domain_length() - 1.0) > kTimeSlack) throw DomainError("empirical_error: process must live on [0, 1]");
  require_partition(p, tau, "empirical_error");
  if (w.n != sched.size()) throw DomainError("empirical_error: weights and schedule differ in length");
  double total = 0.0;
  for (Eigen::Index atom = 0; atom < p.atoms(); ++atom) {
    const double trigger = tau.values()[atom];
    if (trigger + sched.last() > 1.0) throw FeasibilityError("empirical_error: tau + t_n exceeds 1");
    const auto column = p.values().col(atom);
    const Eigen::VectorXd c = w.realize(trigger);
    double estimate = 0.0;
    for (Eigen::Index k = 0; k < sched.size(); ++k) estimate += c[k] * interpolate(1.0, column, trigger + sched[k]);
    total += p.probs()[atom] * std::abs(trapezoid(1.0, column) - estimate);
  }
  return total;
}

double empirical_ostrowski_error(const GridProcess& p, const SimpleRandomVariable& tau) {
  require_partition(p, tau, "empirical_ostrowski_error");
  const double a = p.domain_length();
  if (std::abs(tau.domain_length() - a) > kTimeSlack)
    throw DomainError("empirical_ostrowski_error: random time and process use different windows");
  double total = 0.0;
  for (Eigen::Index atom = 0; atom < p.atoms(); ++atom) {
    const auto column = p.values().col(atom);
    total += p.probs()[atom] * std::abs(trapezoid(a, column) - a * interpolate(a, column, tau.values()[atom]));
  }
  return total;
}

GridProcess shift_cutout(const GridProcess& p, const SimpleRandomVariable& tau, double b) {
  require_partition(p, tau, "shift_cutout");
  const double a = p.domain_length();
  if (!(b >= 0.0) || !(b < a)) throw DomainError("shift_cutout: need 0 <= b < a");
  const Eigen::Index n = p.intervals();
  const double length = a - b;
  Eigen::MatrixXd out(n + 1, p.atoms());
  for (Eigen::Index atom = 0; atom < p.atoms(); ++atom) {
    const double trigger = tau.values()[atom];
    if (trigger + b > a) throw DomainError("shift_cutout: tau + b exceeds a");
    const auto column = p.values().col(atom);
    const double before = interpolate(a, column, trigger);
    const double after = interpolate(a, column, trigger + b);
    for (Eigen::Index j = 0; j <= n; ++j) {
      const double t = length * static_cast<double>(j) / static_cast<double>(n);
      out(j, atom) = t <= trigger ? interpolate(a, column, t) - before
                                  : interpolate(a, column, std::min(a, t + b)) - after;
    }
  }
  return GridProcess(length, p.probs(), std::move(out));
}

GridProcess extremal_process(const Modulus& m, const OffsetSchedule& sched, const SimpleRandomVariable& tau,
                             int grid_size) {
  const Eigen::Index atom = farthest_atom(tau, 0.5 * (1.0 - sched.last()));
  return make_generated_process(extremal_function(m, sched, tau.values()[atom], grid_size), atom, tau.probs());
}

GridProcess extremal_ostrowski_process(const Modulus& m, const SimpleRandomVariable& tau, int grid_size) {
  const double a = tau.domain_length();
  const Eigen::Index atom = farthest_atom(tau, 0.5 * a);
  const OffsetSchedule single(Eigen::VectorXd::Zero(1));
  return make_generated_process(extremal_function(m, single, tau.values()[atom], grid_size, a), atom, tau.probs());
}

GridProcess random_atomwise_process(const Modulus& m, const Eigen::VectorXd& probs, int grid_size, std::uint64_t seed,
                                    double a) {
  Eigen::MatrixXd values(grid_size + 1, probs.size());
  for (Eigen::Index atom = 0; atom < probs.size(); ++atom) {
    const std::uint64_t atom_seed = mix_seed(seed, static_cast<std::uint64_t>(atom));
    Rng rng(mix_seed(atom_seed, 0xA7));
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double shift = rng.uniform(-1.0, 1.0);
    values.col(atom) = (sign * sample_hw_function(m, grid_size, atom_seed, a).values()).array() + shift;
  }
  return GridProcess(a, probs, std::move(values));
}

}  // namespace intrec
