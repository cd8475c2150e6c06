#include "intrec/majorization.hpp"

#include <algorithm>
#include <functional>

#include "intrec/errors.hpp"

namespace intrec {

namespace {

Eigen::VectorXd sorted_descending(const Eigen::VectorXd& v) {
  Eigen::VectorXd s = v;
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

}  // namespace

bool majorizes(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw DomainError("majorizes: vectors differ in length");
  if (a.size() == 0) throw DomainError("majorizes: vectors must be non-empty");
  const Eigen::VectorXd sa = sorted_descending(a);
  const Eigen::VectorXd sb = sorted_descending(b);
  double prefix_a = 0.0;
  double prefix_b = 0.0;
  for (Eigen::Index i = 0; i < sa.size(); ++i) {
    prefix_a += sa[i];
    prefix_b += sb[i];
    if (prefix_a < prefix_b - kMajorizationTolerance) return false;
  }
  return std::abs(prefix_a - prefix_b) <= kMajorizationTolerance;
}

double karamata_gap(const std::function<double(double)>& f, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (!majorizes(a, b)) throw DomainError("karamata_gap: first vector does not majorize the second");
  double gap = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) gap += f(a[i]) - f(b[i]);
  return gap;
}

TabulatedFunction::TabulatedFunction(Eigen::VectorXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2) throw DomainError("tabulated function: need >= 2 samples of equal length");
  for (Eigen::Index i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw DomainError("tabulated function: abscissae must be strictly increasing");
}

double TabulatedFunction::operator()(double x) const {
  const Eigen::Index n = x_.size();
  Eigen::Index hi = std::upper_bound(x_.data(), x_.data() + n, x) - x_.data();
  hi = std::clamp<Eigen::Index>(hi, 1, n - 1);
  const Eigen::Index lo = hi - 1;
  const double w = (x - x_[lo]) / (x_[hi] - x_[lo]);
  return (1.0 - w) * y_[lo] + w * y_[hi];
}

Eigen::VectorXd mean_vector(const Eigen::VectorXd& a) {
  return Eigen::VectorXd::Constant(a.size(), a.mean());
}

}  // namespace intrec
