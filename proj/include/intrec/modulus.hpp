#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace intrec {

/// Concave modulus of continuity ω together with its antiderivative
/// I(t) = ∫₀ᵗ ω(s) ds.
///
/// Four families are supported:
///  - linear:  ω(t) = K t
///  - hoelder: ω(t) = K t^α, α ∈ (0, 1]
///  - piecewise linear concave: linear interpolation of breakpoints (tᵢ, ωᵢ)
///  - tabulated: the same interpolation rule over sampled data, but I is
///    computed by adaptive quadrature instead of the exact trapezoid sum
///
/// Interpolated families are extended by the last breakpoint value beyond the
/// last breakpoint. Construction checks structural well-formedness and throws
/// ValidationError; class conditions (ω(0) = 0, monotonicity, concavity) are
/// checked once at construction and recorded, see validate_modulus().
class Modulus {
 public:
  enum class Family { linear, hoelder, piecewise_linear, tabulated };

  struct Linear {
    double slope;
  };
  struct Hoelder {
    double scale;
    double exponent;
  };
  struct Interpolated {
    Eigen::VectorXd t;
    Eigen::VectorXd omega;
  };

  static Modulus linear(double slope);
  static Modulus hoelder(double scale, double exponent);
  static Modulus piecewise_linear(Eigen::VectorXd t, Eigen::VectorXd omega);
  static Modulus tabulated(Eigen::VectorXd t, Eigen::VectorXd omega);

  Family family() const { return family_; }
  const std::variant<Linear, Hoelder, Interpolated>& params() const { return params_; }

  /// Knots where ω may fail to be smooth (empty for the closed-form families).
  const Eigen::VectorXd& breakpoints() const;

  bool valid() const { return valid_; }
  const std::string& violation() const { return violation_; }

  /// Human-readable description, e.g. "hoelder:K=1,alpha=0.5".
  std::string describe() const;

  // ω without any validity or domain checks; internal building block.
  double raw_value(double t) const;

 private:
  Modulus(Family family, std::variant<Linear, Hoelder, Interpolated> params);

  Family family_;
  std::variant<Linear, Hoelder, Interpolated> params_;
  bool valid_ = false;
  std::string violation_;
};

struct ValidationReport {
  bool pass = true;
  std::string violation;  // first violated property, empty when pass
};

inline constexpr double kConcavityTolerance = 1e-9;
inline constexpr double kQuadratureTolerance = 1e-10;

/// Checks ω(0) = 0, monotonicity and midpoint concavity on a 1024-point probe
/// grid over [0, 2] together with all breakpoints. Never throws.
ValidationReport validate_modulus(const Modulus& m);

/// ω(t). Throws DomainError for t < 0 and ValidationError for an invalid modulus.
double eval_modulus(const Modulus& m, double t);

/// I(t) = ∫₀ᵗ ω. Closed form for linear, hoelder and piecewise linear moduli,
/// adaptive Simpson quadrature for tabulated ones.
double integral_I(const Modulus& m, double t);

/// I(t) by adaptive Simpson quadrature regardless of family.
double integral_I_quadrature(const Modulus& m, double t);

/// Adaptive Simpson rule on [lo, hi]; bisects until the local error estimate
/// falls below tol (scaled with the sub-interval).
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double tol);

/// t ↦ I(t) as a callable (the modulus is copied).
std::function<double(double)> antiderivative(const Modulus& m);

}  // namespace intrec
