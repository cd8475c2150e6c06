#include <algorithm>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "intrec/errors.hpp"
#include "intrec/recovery.hpp"
#include "oracles.hpp"

using namespace intrec;

namespace {

OffsetSchedule sched(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return OffsetSchedule(v);
}

Envelope det(double t) { return Envelope{t, t, 1.0}; }

}  // namespace

TEST_CASE("offset schedules must start at 0 and increase") {
  CHECK_THROWS_AS(sched({0.1, 0.2}), ValidationError);
  CHECK_THROWS_AS(sched({0.0, 0.2, 0.2}), ValidationError);
  CHECK_THROWS_AS(OffsetSchedule(Eigen::VectorXd(0)), ValidationError);
  const auto s = sched({0.0, 0.2, 0.5});
  CHECK(s.gaps().isApprox((Eigen::VectorXd(3) << 0.2, 0.3, 0.5).finished()));
  CHECK(OffsetSchedule::from_gaps(Eigen::VectorXd::Constant(2, 0.25)).offsets().isApprox(
      (Eigen::VectorXd(3) << 0.0, 0.25, 0.5).finished()));
}

TEST_CASE("ostrowski_bound") {
  const Modulus lin = Modulus::linear(1.0);
  CHECK(ostrowski_bound(lin, 1.0, det(0.5)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ostrowski_bound(Modulus::linear(0.0), 3.0, Envelope{0.2, 2.5, 3.0}) == 0.0);
  CHECK(ostrowski_bound(lin, 2.0, Envelope{1.5, 1.5, 2.0}) == doctest::Approx(1.25).epsilon(1e-15));

  CHECK_THROWS_AS(ostrowski_bound(lin, 1.0, Envelope{0.2, 0.4, 2.0}), DomainError);
  CHECK_THROWS_AS(ostrowski_bound(lin, 1.0, Envelope{0.2, 1.4, 1.0}), DomainError);
}

TEST_CASE("recovery_error") {
  const Modulus lin = Modulus::linear(1.0);
  CHECK(recovery_error(lin, sched({0.0}), Envelope{0.3, 0.5, 1.0}) == doctest::Approx(0.29).epsilon(1e-14));
  CHECK(recovery_error(lin, sched({0.0, 0.5}), det(0.25)) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(recovery_error(Modulus::linear(0.0), sched({0.0, 0.3, 0.4}), Envelope{0.1, 0.5, 1.0}) == 0.0);

  CHECK_THROWS_AS(recovery_error(lin, sched({0.0, 0.6}), Envelope{0.3, 0.5, 1.0}), FeasibilityError);
  CHECK_NOTHROW(recovery_error(lin, sched({0.0, 0.5}), Envelope{0.3, 0.5, 1.0}));
  CHECK_THROWS_AS(recovery_error(lin, sched({0.0}), Envelope{0.3, 0.5, 2.0}), DomainError);
}

TEST_CASE("optimal_weights") {
  const RecoveryWeights w3 = optimal_weights(sched({0.0, 0.2, 0.5}));
  const Eigen::VectorXd c3 = w3.realize(0.1);
  REQUIRE(c3.size() == 3);
  CHECK(c3[0] == doctest::Approx(0.2));
  CHECK(c3[1] == doctest::Approx(0.25));
  CHECK(c3[2] == doctest::Approx(0.55));

  const Eigen::VectorXd c1 = optimal_weights(sched({0.0})).realize(0.7);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == 1.0);

  const Eigen::VectorXd c2 = optimal_weights(sched({0.0, 0.5})).realize(0.25);
  CHECK(c2[0] == doctest::Approx(0.5));
  CHECK(c2[1] == doctest::Approx(0.5));
}

TEST_CASE("oracle: closed forms equal the integral of the extremal function") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Modulus m = gen::any_modulus(rng);
    const int n = static_cast<int>(rng.integer(1, 4));
    const Envelope env = gen::envelope_below(rng, 0.5);
    const OffsetSchedule s = gen::schedule(rng, n, 0.999 * (1.0 - env.M));
    // The extremal trigger is whichever envelope end lies farthest from the centre.
    const double center = 0.5 * (1.0 - s.last());
    const double trigger = std::abs(env.m - center) >= std::abs(env.M - center) ? env.m : env.M;
    CHECK(recovery_error(m, s, env) == doctest::Approx(oracle::extremal_integral(m, s.offsets(), trigger)).epsilon(1e-7));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Modulus m = gen::any_modulus(rng);
    const double a = rng.uniform(0.5, 3.0);
    const double v = rng.uniform(0.0, a);
    CHECK(ostrowski_bound(m, a, Envelope{v, v, a}) ==
          doctest::Approx(oracle::extremal_integral(m, Eigen::VectorXd::Zero(1), v, a)).epsilon(1e-7));
  }
}

TEST_CASE("property: realized weights sum to one") {
  Rng rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.integer(1, 8));
    const OffsetSchedule s = gen::schedule(rng, n, rng.uniform(0.05, 0.95));
    const double tau = rng.uniform(0.0, 1.0 - s.last());
    CHECK(std::abs(optimal_weights(s).realize(tau).sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: weights are non-negative on feasible triggers") {
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(rng.integer(1, 8));
    const OffsetSchedule s = gen::schedule(rng, n, rng.uniform(0.05, 0.95));
    const double tau = rng.uniform(0.0, 1.0 - s.last());
    CHECK((optimal_weights(s).realize(tau).array() >= 0.0).all());
  }
}

TEST_CASE("property: single-sample error reduces to the Ostrowski bound") {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const Modulus m = gen::any_modulus(rng);
    const Envelope env = gen::envelope_below(rng, 1.0);
    CHECK(std::abs(recovery_error(m, sched({0.0}), env) - ostrowski_bound(m, 1.0, env)) <= 1e-12);
  }
}

TEST_CASE("property: error is non-decreasing in the trigger spread") {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const Modulus m = gen::any_modulus(rng);
    const int n = static_cast<int>(rng.integer(1, 5));
    const OffsetSchedule s = gen::schedule(rng, n, rng.uniform(0.05, 0.9));
    const double center = 0.5 * (1.0 - s.last());
    const double skew = rng.uniform(-1.0, 1.0);
    double previous = -1.0;
    for (int step = 0; step <= 20; ++step) {
      // Envelopes growing around an off-centre point, all within [0, 1 − t_n].
      const double width = center * step / 20.0;
      const double lo = std::max(0.0, center - width + 0.5 * skew * width);
      const double hi = std::min(2.0 * center, center + width + 0.5 * skew * width);
      const double e = recovery_error(m, s, Envelope{std::min(lo, hi), hi, 1.0});
      CHECK(e >= previous - 1e-15);
      previous = e;
    }
  }
}

TEST_CASE("property: an extra sample never increases the error") {
  Rng rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const Modulus m = gen::any_modulus(rng);
    const Envelope env = gen::envelope_below(rng, 0.6);
    const int n = static_cast<int>(rng.integer(1, 5));
    const OffsetSchedule coarse = gen::schedule(rng, n, 0.999 * (1.0 - env.M));
    const double extra = rng.uniform(1e-6, 1.0 - env.M);
    std::vector<double> offsets(coarse.offsets().data(), coarse.offsets().data() + n);
    if (std::find(offsets.begin(), offsets.end(), extra) != offsets.end()) continue;
    offsets.push_back(extra);
    std::sort(offsets.begin(), offsets.end());
    const OffsetSchedule fine(Eigen::Map<Eigen::VectorXd>(offsets.data(), n + 1));
    CHECK(recovery_error(m, fine, env) <= recovery_error(m, coarse, env) + 1e-14);
  }
}

TEST_CASE("property: more samples dominate the single-sample method") {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const Modulus m = gen::any_modulus(rng);
    const Envelope env = gen::envelope_below(rng, 0.7);
    const OffsetSchedule s = gen::schedule(rng, static_cast<int>(rng.integer(1, 6)), 0.999 * (1.0 - env.M));
    CHECK(recovery_error(m, s, env) <= ostrowski_bound(m, 1.0, env) + 1e-14);
  }
}
