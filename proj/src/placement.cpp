#include "intrec/placement.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

constexpr int kMaxSearchSamples = 4;
constexpr int kRefinementHalvings = 20;
constexpr int kMaxSweepsPerLevel = 100000;
// Case conditions are compared with this slack so the tie point m = M = 1/(2n)
// is recognized despite rounding (5 * (1/6) + 1/6 < 1 in doubles).
constexpr double kCaseSlack = 1e-12;

void require_window(const Envelope& env) {
  if (env.a != 1.0) throw DomainError("placement: the observation window must be [0, 1]");
  if (!(0.0 <= env.m && env.m <= env.M && env.M <= 1.0)) throw DomainError("placement: invalid envelope");
}

}  // namespace

std::string to_string(PlacementCase c) {
  switch (c) {
    case PlacementCase::uniform:
      return "uniform";
    case PlacementCase::case_A:
      return "case_A";
    case PlacementCase::case_B:
      return "case_B";
    case PlacementCase::case_C:
      return "case_C";
  }
  return "unknown";
}

PlacementResult uniform_optimal(const Modulus& m, int n) {
  if (n < 1) throw DomainError("uniform_optimal: n must be >= 1");
  Eigen::VectorXd t(n);
  for (int k = 0; k < n; ++k) t[k] = static_cast<double>(k) / n;
  const double half_step = 1.0 / (2.0 * n);
  return PlacementResult{PlacementCase::uniform, OffsetSchedule(std::move(t)), 2.0 * n * integral_I(m, half_step),
                         Envelope{half_step, half_step, 1.0}, half_step};
}

PlacementCase classify(int n, const Envelope& env) {
  if ((2.0 * n - 1.0) * env.m + env.M >= 1.0 - kCaseSlack) return PlacementCase::case_A;
  if ((2.0 * n - 1.0) * env.M + env.m <= 1.0 + kCaseSlack) return PlacementCase::case_B;
  return PlacementCase::case_C;
}

double case_value(PlacementCase c, const Modulus& m, int n, const Envelope& env) {
  const double odd = 2.0 * n - 1.0;
  switch (c) {
    case PlacementCase::case_A:
      return odd * integral_I(m, (1.0 - env.M) / odd) + integral_I(m, env.M);
    case PlacementCase::case_B:
      return odd * integral_I(m, (1.0 - env.m) / odd) + integral_I(m, env.m);
    case PlacementCase::case_C: {
      if (n < 2) throw std::logic_error("placement: case C is unreachable for a single measurement");
      const double even = 2.0 * n - 2.0;
      return even * integral_I(m, std::max(0.0, 1.0 - env.m - env.M) / even) + integral_I(m, env.m) +
             integral_I(m, env.M);
    }
    case PlacementCase::uniform:
      return uniform_optimal(m, n).value;
  }
  return 0.0;
}

OffsetSchedule case_offsets(PlacementCase c, int n, const Envelope& env) {
  Eigen::VectorXd t(n);
  const double odd = 2.0 * n - 1.0;
  for (int k = 0; k < n; ++k) {
    switch (c) {
      case PlacementCase::case_A:
        t[k] = 2.0 * k * (1.0 - env.M) / odd;
        break;
      case PlacementCase::case_B:
        t[k] = 2.0 * k * (1.0 - env.m) / odd;
        break;
      case PlacementCase::case_C:
        if (n < 2) throw std::logic_error("placement: case C is unreachable for a single measurement");
        t[k] = k * (1.0 - env.m - env.M) / (n - 1.0);
        break;
      case PlacementCase::uniform:
        t[k] = static_cast<double>(k) / n;
        break;
    }
  }
  return OffsetSchedule(std::move(t));
}

PlacementResult triggered_optimal(const Modulus& m, int n, const Envelope& env) {
  if (n < 1) throw DomainError("triggered_optimal: n must be >= 1");
  require_window(env);
  if (n >= 2 && env.M >= 1.0) throw FeasibilityError("triggered_optimal: M = 1 leaves no room for later samples");
  const PlacementCase c = classify(n, env);
  return PlacementResult{c, case_offsets(c, n, env), case_value(c, m, n, env), env, std::nullopt};
}

bool is_admissible(const Eigen::VectorXd& gaps, double M) {
  const Eigen::Index n = gaps.size();
  if (n == 0) return false;
  for (Eigen::Index k = 0; k + 1 < n; ++k)
    if (gaps[k] < 0.0) return false;
  return gaps[n - 1] >= M && std::abs(gaps.sum() - 1.0) <= 1e-12;
}

Eigen::VectorXd expand_gaps(const Eigen::VectorXd& gaps, double shift) {
  const Eigen::Index n = gaps.size();
  Eigen::VectorXd out(2 * n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) out[2 * k] = out[2 * k + 1] = 0.5 * gaps[k];
  out[2 * n - 2] = gaps[n - 1] - shift;
  out[2 * n - 1] = shift;
  return out;
}

Eigen::VectorXd limit_vector(PlacementCase c, int n, const Envelope& env) {
  Eigen::VectorXd out(2 * n);
  const double odd = 2.0 * n - 1.0;
  switch (c) {
    case PlacementCase::case_A:
      out.head(2 * n - 1).setConstant((1.0 - env.M) / odd);
      out[2 * n - 1] = env.M;
      break;
    case PlacementCase::case_B:
      out.head(2 * n - 1).setConstant((1.0 - env.m) / odd);
      out[2 * n - 1] = env.m;
      break;
    case PlacementCase::case_C:
      if (n < 2) throw std::logic_error("placement: case C is unreachable for a single measurement");
      out.head(2 * n - 2).setConstant((1.0 - env.m - env.M) / (2.0 * n - 2.0));
      out[2 * n - 2] = env.m;
      out[2 * n - 1] = env.M;
      break;
    case PlacementCase::uniform:
      out.setConstant(1.0 / (2.0 * n));
      break;
  }
  return out;
}

SearchResult numeric_search(const Modulus& m, int n, const Envelope& env, double resolution) {
  if (n < 1 || n > kMaxSearchSamples) throw DomainError("numeric_search: n must lie in [1, 4]");
  if (!(resolution > 0.0 && resolution <= 0.1)) throw DomainError("numeric_search: resolution must lie in (0, 0.1]");
  require_window(env);

  if (n == 1) {
    const OffsetSchedule single(Eigen::VectorXd::Zero(1));
    return SearchResult{single, recovery_error(m, single, env), 1};
  }
  if (env.M >= 1.0) throw FeasibilityError("numeric_search: M >= 1 leaves no room for later samples");

  long evaluations = 0;
  // Offsets t[1..n-1]; t[0] = 0 is fixed.
  auto feasible = [&](const Eigen::VectorXd& t) {
    for (int k = 1; k < n; ++k)
      if (!(t[k] > t[k - 1])) return false;
    return !(env.M + t[n - 1] > 1.0);
  };
  auto evaluate = [&](const Eigen::VectorXd& t) {
    ++evaluations;
    return recovery_error(m, OffsetSchedule(t), env);
  };

  Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
  double best_value = std::numeric_limits<double>::infinity();

  Eigen::VectorXd current = Eigen::VectorXd::Zero(n);
  std::function<void(int, long)> enumerate = [&](int k, long first_index) {
    if (k == n) {
      const double v = evaluate(current);
      if (v < best_value) {
        best_value = v;
        best = current;
      }
      return;
    }
    for (long j = first_index;; ++j) {
      current[k] = static_cast<double>(j) * resolution;
      if (env.M + current[k] > 1.0) break;
      enumerate(k + 1, j + 1);
    }
  };
  enumerate(1, 1);

  if (!std::isfinite(best_value)) {
    // The window is narrower than the grid: start from equal spacing instead.
    for (int k = 0; k < n; ++k) best[k] = 0.999 * k * (1.0 - env.M) / (n - 1.0);
    if (!feasible(best)) throw FeasibilityError("numeric_search: window too narrow for n samples");
    best_value = evaluate(best);
  }

  double step = resolution;
  for (int level = 0; level <= kRefinementHalvings; ++level, step *= 0.5) {
    bool improved = true;
    for (int sweep = 0; improved && sweep < kMaxSweepsPerLevel; ++sweep) {
      improved = false;
      for (int k = 1; k < n; ++k) {
        for (const double dir : {-1.0, 1.0}) {
          Eigen::VectorXd trial = best;
          trial[k] += dir * step;
          if (!feasible(trial)) continue;
          const double v = evaluate(trial);
          if (v < best_value) {
            best_value = v;
            best = std::move(trial);
            improved = true;
          }
        }
      }
    }
  }
  return SearchResult{OffsetSchedule(best), best_value, evaluations};
}

}  // namespace intrec
