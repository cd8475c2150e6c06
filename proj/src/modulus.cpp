#include "intrec/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

constexpr int kProbePoints = 1024;
constexpr double kProbeEnd = 2.0;
constexpr int kSimpsonMaxDepth = 50;
constexpr int kSimpsonMinDepth = 4;

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_interpolated(const Eigen::VectorXd& t, const Eigen::VectorXd& omega) {
  if (t.size() != omega.size()) throw ValidationError("modulus: breakpoint arrays differ in length");
  if (t.size() < 2) throw ValidationError("modulus: at least two breakpoints are required");
  if (t[0] != 0.0) throw ValidationError("modulus: first breakpoint must be at t = 0");
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(omega[i]))
      throw ValidationError("modulus: non-finite breakpoint");
    if (i > 0 && !(t[i] > t[i - 1]))
      throw ValidationError("modulus: breakpoint times must be strictly increasing");
  }
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= kSimpsonMaxDepth || (depth >= kSimpsonMinDepth && std::abs(delta) <= 15.0 * tol))
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

Modulus::Modulus(Family family, std::variant<Linear, Hoelder, Interpolated> params)
    : family_(family), params_(std::move(params)) {
  const ValidationReport report = validate_modulus(*this);
  valid_ = report.pass;
  violation_ = report.violation;
}

Modulus Modulus::linear(double slope) {
  if (!std::isfinite(slope) || slope < 0.0) throw ValidationError("linear modulus: K must be finite and >= 0");
  return Modulus(Family::linear, Linear{slope});
}

Modulus Modulus::hoelder(double scale, double exponent) {
  if (!std::isfinite(scale) || scale < 0.0) throw ValidationError("hoelder modulus: K must be finite and >= 0");
  if (!(exponent > 0.0 && exponent <= 1.0)) throw ValidationError("hoelder modulus: alpha must lie in (0, 1]");
  return Modulus(Family::hoelder, Hoelder{scale, exponent});
}

Modulus Modulus::piecewise_linear(Eigen::VectorXd t, Eigen::VectorXd omega) {
  check_interpolated(t, omega);
  return Modulus(Family::piecewise_linear, Interpolated{std::move(t), std::move(omega)});
}

Modulus Modulus::tabulated(Eigen::VectorXd t, Eigen::VectorXd omega) {
  check_interpolated(t, omega);
  return Modulus(Family::tabulated, Interpolated{std::move(t), std::move(omega)});
}

const Eigen::VectorXd& Modulus::breakpoints() const {
  static const Eigen::VectorXd empty;
  if (const auto* p = std::get_if<Interpolated>(&params_)) return p->t;
  return empty;
}

std::string Modulus::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::linear:
      os << "linear:K=" << std::get<Linear>(params_).slope;
      break;
    case Family::hoelder: {
      const auto& h = std::get<Hoelder>(params_);
      os << "hoelder:K=" << h.scale << ",alpha=" << h.exponent;
      break;
    }
    case Family::piecewise_linear:
    case Family::tabulated: {
      const auto& p = std::get<Interpolated>(params_);
      os << (family_ == Family::tabulated ? "table:" : "pwl:");
      for (Eigen::Index i = 0; i < p.t.size(); ++i) os << (i ? ";" : "") << p.t[i] << "," << p.omega[i];
      break;
    }
  }
  return os.str();
}

double Modulus::raw_value(double t) const {
  switch (family_) {
    case Family::linear:
      return std::get<Linear>(params_).slope * t;
    case Family::hoelder: {
      const auto& h = std::get<Hoelder>(params_);
      return t <= 0.0 ? 0.0 : h.scale * std::pow(t, h.exponent);
    }
    case Family::piecewise_linear:
    case Family::tabulated: {
      const auto& p = std::get<Interpolated>(params_);
      const Eigen::Index n = p.t.size();
      if (t >= p.t[n - 1]) return p.omega[n - 1];
      if (t <= 0.0) return p.omega[0];
      const auto* it = std::upper_bound(p.t.data(), p.t.data() + n, t);
      const Eigen::Index hi = it - p.t.data();
      const Eigen::Index lo = hi - 1;
      const double w = (t - p.t[lo]) / (p.t[hi] - p.t[lo]);
      return (1.0 - w) * p.omega[lo] + w * p.omega[hi];
    }
  }
  return 0.0;
}

ValidationReport validate_modulus(const Modulus& m) {
  ValidationReport report;
  auto fail = [&report](std::string why) {
    report.pass = false;
    report.violation = std::move(why);
    return report;
  };

  const double at_zero = m.raw_value(0.0);
  if (at_zero != 0.0) return fail("omega(0) = " + fmt_num(at_zero) + " != 0");

  const Eigen::VectorXd& knots = m.breakpoints();
  std::vector<double> points(kProbePoints);
  for (int i = 0; i < kProbePoints; ++i) points[i] = kProbeEnd * i / (kProbePoints - 1);
  points.insert(points.end(), knots.data(), knots.data() + knots.size());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double lo = m.raw_value(points[i]);
    const double hi = m.raw_value(points[i + 1]);
    if (!std::isfinite(lo) || !std::isfinite(hi)) return fail("non-finite omega at t = " + fmt_num(points[i]));
    if (hi < lo)
      return fail("monotonicity violated between t = " + fmt_num(points[i]) + " and t = " + fmt_num(points[i + 1]));
  }

  auto midpoint_ok = [](double w_t, double w_s, double w_mid) {
    return w_mid >= 0.5 * (w_t + w_s) - kConcavityTolerance;
  };
  auto concavity_msg = [](double t, double s) {
    return "concavity violated at triple (" + fmt_num(t) + ", " + fmt_num(0.5 * (t + s)) + ", " + fmt_num(s) + ")";
  };

  // Breakpoint pairs first: they carry all the shape information of interpolated families.
  for (Eigen::Index i = 0; i < knots.size(); ++i) {
    for (Eigen::Index j = i + 1; j < knots.size(); ++j) {
      const double t = knots[i], s = knots[j];
      if (!midpoint_ok(m.raw_value(t), m.raw_value(s), m.raw_value(0.5 * (t + s))))
        return fail(concavity_msg(t, s));
    }
  }

  // Probe-grid pairs whose midpoint is again a probe point.
  std::vector<double> probe(kProbePoints);
  for (int i = 0; i < kProbePoints; ++i) probe[i] = m.raw_value(kProbeEnd * i / (kProbePoints - 1));
  for (int i = 0; i < kProbePoints; ++i) {
    for (int j = i + 2; j < kProbePoints; j += 2) {
      if (!midpoint_ok(probe[i], probe[j], probe[(i + j) / 2])) {
        const double t = kProbeEnd * i / (kProbePoints - 1);
        const double s = kProbeEnd * j / (kProbePoints - 1);
        return fail(concavity_msg(t, s));
      }
    }
  }
  return report;
}

double eval_modulus(const Modulus& m, double t) {
  if (!(t >= 0.0)) throw DomainError("modulus: time must be >= 0");
  if (!m.valid()) throw ValidationError("modulus is not a concave modulus of continuity: " + m.violation());
  return m.raw_value(t);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (hi <= lo) return 0.0;
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, lo, hi, fa, fm, fb, whole, tol, 0);
}

double integral_I_quadrature(const Modulus& m, double t) {
  if (!(t >= 0.0)) throw DomainError("integral_I: time must be >= 0");
  if (!m.valid()) throw ValidationError("modulus is not a concave modulus of continuity: " + m.violation());
  auto omega = [&m](double s) { return m.raw_value(s); };
  const double tol = kQuadratureTolerance * std::max(1.0, t);

  // Integrate piece by piece between knots so kinks never sit inside a Simpson panel.
  const Eigen::VectorXd& knots = m.breakpoints();
  std::vector<double> cuts{0.0};
  for (Eigen::Index i = 0; i < knots.size(); ++i)
    if (knots[i] > 0.0 && knots[i] < t) cuts.push_back(knots[i]);
  cuts.push_back(t);
  double total = 0.0;
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += adaptive_simpson(omega, cuts[i], cuts[i + 1], piece_tol);
  return total;
}

double integral_I(const Modulus& m, double t) {
  if (!(t >= 0.0)) throw DomainError("integral_I: time must be >= 0");
  if (!m.valid()) throw ValidationError("modulus is not a concave modulus of continuity: " + m.violation());
  switch (m.family()) {
    case Modulus::Family::linear:
      return 0.5 * std::get<Modulus::Linear>(m.params()).slope * t * t;
    case Modulus::Family::hoelder: {
      const auto& h = std::get<Modulus::Hoelder>(m.params());
      return t == 0.0 ? 0.0 : h.scale * std::pow(t, h.exponent + 1.0) / (h.exponent + 1.0);
    }
    case Modulus::Family::piecewise_linear: {
      const auto& p = std::get<Modulus::Interpolated>(m.params());
      double total = 0.0;
      for (Eigen::Index i = 0; i + 1 < p.t.size(); ++i) {
        if (t <= p.t[i]) return total;
        const double right = std::min(t, p.t[i + 1]);
        total += 0.5 * (right - p.t[i]) * (p.omega[i] + m.raw_value(right));
      }
      const Eigen::Index last = p.t.size() - 1;
      if (t > p.t[last]) total += (t - p.t[last]) * p.omega[last];
      return total;
    }
    case Modulus::Family::tabulated:
      return integral_I_quadrature(m, t);
  }
  return 0.0;
}

std::function<double(double)> antiderivative(const Modulus& m) {
  return [m](double t) { return integral_I(m, t); };
}

}  // namespace intrec
