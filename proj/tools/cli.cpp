#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "intrec/errors.hpp"
#include "intrec/io.hpp"
#include "intrec/majorization.hpp"
#include "intrec/modulus.hpp"
#include "intrec/placement.hpp"
#include "intrec/random.hpp"
#include "intrec/recovery.hpp"
#include "intrec/simulation.hpp"
#include "intrec/stochastic.hpp"

namespace intrec::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kUpperBoundSlack = 1e-3;
constexpr double kWeightSumTolerance = 1e-12;

struct Flags {
  std::string omega;
  std::string tau;
  std::string env;
  std::string schedule;
  std::string csv;
  std::string process;
  std::string write_process;
  double a = 1.0;
  int n = 0;
  int grid = kDefaultGridSize;
  int trials = 100;
  std::uint64_t seed = 0;
  double resolution = 0.0;
};

Json vec(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Json env_json(const Envelope& e) { return Json{{"m", e.m}, {"M", e.M}, {"a", e.a}}; }

struct Report {
  Json inputs = Json::object();
  Json result = Json::object();
  Json verdicts = Json::object();
  // Extra text lines for --csv output.
  std::vector<std::string> csv_rows;
  std::string csv_header;
};

std::ostream& csv_line(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    os << (first ? "" : ",") << format_double(v);
    first = false;
  }
  return os;
}

Report cmd_bound(const Flags& f) {
  Report r;
  const Modulus m = parse_modulus(f.omega);
  const SimpleRandomVariable tau = parse_srv(f.tau, f.a);
  const Envelope env = envelope(tau);
  const double bound = ostrowski_bound(m, f.a, env);
  r.inputs = Json{{"omega", f.omega}, {"a", f.a}, {"tau", f.tau}};
  r.result = Json{{"envelope", env_json(env)},
                  {"t_star", sup_deviation(env, 0.5 * f.a)},
                  {"bound", bound},
                  {"normalized", bound / f.a}};
  return r;
}

Envelope envelope_from_flags(const Flags& f) {
  if (!f.tau.empty()) return envelope(parse_srv(f.tau, 1.0));
  if (!f.env.empty()) return parse_envelope(f.env, 1.0);
  throw ParseError("one of --tau or --env is required");
}

Json weights_json(const RecoveryWeights& w) {
  return Json{{"n", w.n}, {"first_base", w.first_base}, {"mid", vec(w.mid)}, {"last_base", w.last_base}};
}

Report cmd_error(const Flags& f) {
  Report r;
  const Modulus m = parse_modulus(f.omega);
  const OffsetSchedule sched(parse_real_list(f.schedule));
  const Envelope env = envelope_from_flags(f);
  const double center = 0.5 * (1.0 - sched.last());
  r.inputs = Json{{"omega", f.omega}, {"schedule", f.schedule}, {"tau", f.tau}, {"env", f.env}};
  r.result = Json{{"envelope", env_json(env)},
                  {"center", center},
                  {"t_star", sup_deviation(env, center)},
                  {"recovery_error", recovery_error(m, sched, env)},
                  {"weights", weights_json(optimal_weights(sched))}};
  return r;
}

Report cmd_weights(const Flags& f) {
  Report r;
  const OffsetSchedule sched(parse_real_list(f.schedule));
  const RecoveryWeights w = optimal_weights(sched);
  r.inputs = Json{{"schedule", f.schedule}, {"tau", f.tau}};
  r.result = weights_json(w);
  if (f.tau.empty()) return r;

  const SimpleRandomVariable tau = parse_srv(f.tau, 1.0);
  const Envelope env = envelope(tau);
  bool normalized = true;
  bool nonnegative = true;
  Json realized = Json::array();
  for (Eigen::Index i = 0; i < tau.atoms(); ++i) {
    const Eigen::VectorXd c = w.realize(tau.values()[i]);
    normalized = normalized && std::abs(c.sum() - 1.0) <= kWeightSumTolerance;
    nonnegative = nonnegative && (c.array() >= 0.0).all();
    realized.push_back(Json{{"tau", tau.values()[i]}, {"prob", tau.probs()[i]}, {"weights", vec(c)}, {"sum", c.sum()}});
  }
  r.result["realized"] = realized;
  r.verdicts["normalization"] = normalized;
  if (env.M + sched.last() <= 1.0) r.verdicts["nonnegative"] = nonnegative;
  return r;
}

Json placement_json(const PlacementResult& p) {
  Json j{{"case", to_string(p.label)}, {"offsets", vec(p.offsets.offsets())}, {"value", p.value},
         {"envelope", env_json(p.envelope)}};
  if (p.fixed_trigger) j["times"] = vec(p.times(*p.fixed_trigger));
  return j;
}

Report cmd_place(const Flags& f) {
  Report r;
  const Modulus m = parse_modulus(f.omega);
  r.inputs = Json{{"omega", f.omega}, {"n", f.n}, {"env", f.env}, {"resolution", f.resolution}};
  const bool with_oracle = f.resolution > 0.0;

  if (!f.env.empty()) {
    const Envelope env = parse_envelope(f.env, 1.0);
    const PlacementResult best = triggered_optimal(m, f.n, env);
    r.result = placement_json(best);
    r.result["condition_A"] = (2.0 * f.n - 1.0) * env.m + env.M >= 1.0;
    r.result["condition_B"] = (2.0 * f.n - 1.0) * env.M + env.m <= 1.0;
    r.verdicts["value_matches_schedule"] = std::abs(recovery_error(m, best.offsets, env) - best.value) <= 1e-12;
    if (with_oracle) {
      const SearchResult oracle = numeric_search(m, f.n, env, f.resolution);
      const double tol = 5.0 * f.resolution * eval_modulus(m, 1.0);
      r.result["oracle"] = Json{{"value", oracle.value},
                                {"offsets", vec(oracle.offsets.offsets())},
                                {"evaluations", oracle.evaluations},
                                {"tolerance", tol}};
      r.verdicts["oracle_agreement"] = oracle.value >= best.value - 1e-9 && oracle.value - best.value <= tol;
    }
    return r;
  }

  const PlacementResult best = uniform_optimal(m, f.n);
  r.result = placement_json(best);
  if (!with_oracle) return r;

  // Sweep deterministic triggers over the resolution grid and search the offsets for each.
  r.csv_header = "trigger,value";
  double best_value = std::numeric_limits<double>::infinity();
  double best_trigger = 0.0;
  Eigen::VectorXd best_offsets;
  for (long k = 0;; ++k) {
    const double trigger = static_cast<double>(k) * f.resolution;
    if (trigger > 1.0 || (f.n >= 2 && trigger >= 1.0)) break;
    const SearchResult s = numeric_search(m, f.n, Envelope{trigger, trigger, 1.0}, f.resolution);
    std::ostringstream row;
    csv_line(row, {trigger, s.value});
    r.csv_rows.push_back(row.str());
    if (s.value < best_value) {
      best_value = s.value;
      best_trigger = trigger;
      best_offsets = s.offsets.offsets();
    }
  }
  const Eigen::VectorXd times = best_offsets.array() + best_trigger;
  const double value_tol = f.resolution * f.resolution * eval_modulus(m, 1.0);
  const double time_tol = 2.0 * f.resolution;
  r.result["oracle"] = Json{{"value", best_value}, {"trigger", best_trigger}, {"times", vec(times)},
                            {"value_tolerance", value_tol}, {"time_tolerance", time_tol}};
  r.verdicts["oracle_value"] = std::abs(best_value - best.value) <= value_tol;
  r.verdicts["oracle_times"] = (times - best.times(*best.fixed_trigger)).cwiseAbs().maxCoeff() <= time_tol;
  return r;
}

struct Target {
  double theoretical;
  std::function<double(const GridProcess&)> empirical;
};

Target make_target(const Flags& f, const Modulus& m, const SimpleRandomVariable& tau) {
  if (!f.schedule.empty()) {
    if (f.a != 1.0) throw DomainError("--schedule requires --a 1");
    const OffsetSchedule sched(parse_real_list(f.schedule));
    const RecoveryWeights w = optimal_weights(sched);
    return Target{recovery_error(m, sched, envelope(tau)),
                  [sched, w, tau](const GridProcess& p) { return empirical_error(p, sched, tau, w); }};
  }
  return Target{ostrowski_bound(m, f.a, envelope(tau)),
                [tau](const GridProcess& p) { return empirical_ostrowski_error(p, tau); }};
}

Report cmd_verify(const Flags& f) {
  Report r;
  const Modulus m = parse_modulus(f.omega);
  const SimpleRandomVariable tau = parse_srv(f.tau, f.a);
  const Target target = make_target(f, m, tau);
  r.inputs = Json{{"omega", f.omega}, {"a", f.a},       {"tau", f.tau},   {"schedule", f.schedule},
                  {"grid", f.grid},   {"trials", f.trials}, {"seed", f.seed}, {"process", f.process}};
  r.csv_header = "trial,empirical,theoretical";

  double max_empirical = 0.0;
  int trials = 0;
  if (!f.process.empty()) {
    const GridProcess p = read_grid_process(f.process);
    const MembershipVerdict verdict = check_class_membership(m, p, f.trials, f.seed);
    max_empirical = target.empirical(p);
    trials = 1;
    r.result["membership"] = to_string(verdict);
    r.verdicts["class_membership"] = verdict != MembershipVerdict::falsified;
    std::ostringstream row;
    csv_line(row, {0.0, max_empirical, target.theoretical});
    r.csv_rows.push_back(row.str());
  } else {
    if (f.trials < 1) throw DomainError("--trials must be >= 1");
    for (int trial = 0; trial < f.trials; ++trial) {
      const GridProcess p = random_atomwise_process(m, tau.probs(), f.grid,
                                                    mix_seed(f.seed, static_cast<std::uint64_t>(trial)), f.a);
      const double e = target.empirical(p);
      max_empirical = std::max(max_empirical, e);
      std::ostringstream row;
      csv_line(row, {static_cast<double>(trial), e, target.theoretical});
      r.csv_rows.push_back(row.str());
    }
    trials = f.trials;
  }
  const double ratio = target.theoretical > 0.0 ? max_empirical / target.theoretical
                                                : (max_empirical == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.result["mode"] = f.schedule.empty() ? "single_sample" : "schedule";
  r.result["trials"] = trials;
  r.result["theoretical"] = target.theoretical;
  r.result["max_empirical"] = max_empirical;
  r.result["max_ratio"] = ratio;
  r.result["slack"] = kUpperBoundSlack;
  r.verdicts["upper_bound"] = max_empirical <= target.theoretical + kUpperBoundSlack;
  return r;
}

Report cmd_sharpness(const Flags& f) {
  Report r;
  const Modulus m = parse_modulus(f.omega);
  const SimpleRandomVariable tau = parse_srv(f.tau, f.a);
  const Target target = make_target(f, m, tau);
  r.inputs = Json{{"omega", f.omega}, {"a", f.a}, {"tau", f.tau}, {"schedule", f.schedule}, {"grid", f.grid}};

  const double h = f.a / f.grid;
  const double tol = 2.0 * std::max(1.0, f.a) * eval_modulus(m, h);
  std::optional<GridProcess> process;
  if (!f.schedule.empty()) {
    const OffsetSchedule sched(parse_real_list(f.schedule));
    process = extremal_process(m, sched, tau, f.grid);
    // The extremal process must vanish at every sample time, up to interpolation error.
    double worst_sample = 0.0;
    double sample_tol = 0.0;
    for (Eigen::Index atom = 0; atom < tau.atoms(); ++atom) {
      const GridFunction column = process->atom(atom);
      for (Eigen::Index k = 0; k < sched.size(); ++k)
        worst_sample = std::max(worst_sample, std::abs(column.at(tau.values()[atom] + sched[k])));
      sample_tol = std::max(sample_tol, eval_modulus(m, h) / tau.probs()[atom]);
    }
    r.result["max_sample_magnitude"] = worst_sample;
    r.verdicts["samples_vanish"] = worst_sample <= sample_tol;
  } else {
    process = extremal_ostrowski_process(m, tau, f.grid);
  }
  const double empirical = target.empirical(*process);
  const double gap = std::abs(empirical - target.theoretical);
  r.result["mode"] = f.schedule.empty() ? "single_sample" : "schedule";
  r.result["theoretical"] = target.theoretical;
  r.result["empirical"] = empirical;
  r.result["gap"] = gap;
  r.result["tolerance"] = tol;
  r.verdicts["sharpness"] = gap <= tol;
  if (!f.write_process.empty()) {
    write_grid_process(*process, f.write_process);
    r.result["process_file"] = f.write_process;
  }
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp worst-case errors and optimal schedules for recovering integrals of random processes"};
  app.require_subcommand(1);
  Flags f;

  auto* bound = app.add_subcommand("bound", "sharp error bound of the single-sample method a*xi_tau");
  bound->add_option("--omega", f.omega, "modulus spec")->required();
  bound->add_option("--a", f.a, "window length");
  bound->add_option("--tau", f.tau, "random time spec")->required();

  auto* error = app.add_subcommand("error", "optimal recovery error for trigger + offsets");
  error->add_option("--omega", f.omega, "modulus spec")->required();
  error->add_option("--schedule", f.schedule, "offsets 0,t2,...,tn")->required();
  error->add_option("--tau", f.tau, "random trigger spec");
  error->add_option("--env", f.env, "trigger envelope m,M");

  auto* weights = app.add_subcommand("weights", "weights of the optimal linear method");
  weights->add_option("--schedule", f.schedule, "offsets 0,t2,...,tn")->required();
  weights->add_option("--tau", f.tau, "random trigger spec (realizes the weights)");

  auto* place = app.add_subcommand("place", "optimal measurement schedule");
  place->add_option("--omega", f.omega, "modulus spec")->required();
  place->add_option("--n", f.n, "number of measurements")->required();
  place->add_option("--env", f.env, "trigger envelope m,M (omit for free placement)");
  place->add_option("--resolution", f.resolution, "also run the grid-search oracle at this resolution");
  place->add_option("--csv", f.csv, "write the trigger sweep of the oracle as CSV");

  auto* verify = app.add_subcommand("verify", "Monte-Carlo check of the upper bound");
  verify->add_option("--omega", f.omega, "modulus spec")->required();
  verify->add_option("--a", f.a, "window length (single-sample mode)");
  verify->add_option("--tau", f.tau, "random trigger spec")->required();
  verify->add_option("--schedule", f.schedule, "offsets 0,t2,...,tn");
  verify->add_option("--grid", f.grid, "grid intervals");
  verify->add_option("--trials", f.trials, "random processes (or falsification pairs with --process)");
  verify->add_option("--seed", f.seed, "random seed");
  verify->add_option("--process", f.process, "evaluate a stored GridProcess CSV instead");
  verify->add_option("--csv", f.csv, "write per-trial errors as CSV");

  auto* sharp = app.add_subcommand("sharpness", "attain the bound with the extremal process");
  sharp->add_option("--omega", f.omega, "modulus spec")->required();
  sharp->add_option("--a", f.a, "window length (single-sample mode)");
  sharp->add_option("--tau", f.tau, "random trigger spec")->required();
  sharp->add_option("--schedule", f.schedule, "offsets 0,t2,...,tn");
  sharp->add_option("--grid", f.grid, "grid intervals");
  sharp->add_option("--write-process", f.write_process, "write the extremal process as CSV + JSON sidecar");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kParseError;
  }

  const auto started = std::chrono::steady_clock::now();
  CLI::App* cmd = app.get_subcommands().front();
  Report report;
  try {
    if (f.grid < 2) throw DomainError("--grid must be >= 2");
    const std::string& name = cmd->get_name();
    if (name == "bound") report = cmd_bound(f);
    else if (name == "error") report = cmd_error(f);
    else if (name == "weights") report = cmd_weights(f);
    else if (name == "place") report = cmd_place(f);
    else if (name == "verify") report = cmd_verify(f);
    else report = cmd_sharpness(f);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::logic_error& e) {
    // DomainError, ValidationError, PartitionError and FeasibilityError all land here.
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  bool pass = true;
  for (const auto& [name, ok] : report.verdicts.items()) pass = pass && ok.get<bool>();

  if (!f.csv.empty() && !report.csv_header.empty()) {
    std::ofstream csv(f.csv);
    if (!csv) {
      err << "error: cannot write '" << f.csv << "'\n";
      return kDomainError;
    }
    csv << report.csv_header << "\n";
    for (const auto& row : report.csv_rows) csv << row << "\n";
  }

  Json j;
  j["command"] = cmd->get_name();
  j["args"] = args;
  j["inputs"] = report.inputs;
  j["result"] = report.result;
  j["verdicts"] = report.verdicts;
  j["pass"] = pass;
  j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out << dump_json(j) << "\n";
  return pass ? kOk : kVerdictFailed;
}

}  // namespace intrec::cli
