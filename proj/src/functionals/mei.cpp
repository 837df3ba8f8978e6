#include "wgnls/mei.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wgnls/error.hpp"

namespace wgnls {

MeiCurve::MeiCurve(std::vector<double> c, std::vector<double> m, std::vector<double> err)
    : c_(std::move(c)), m_(std::move(m)), err_(std::move(err)) {
  if (c_.size() < 2 || c_.size() != m_.size()) throw InvalidArgument("MeiCurve: need >= 2 knots with values");
  if (err_.empty()) err_.assign(c_.size(), 0.0);
  if (err_.size() != c_.size()) throw InvalidArgument("MeiCurve: err size mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!(c_[i] >= 0.0) || !(m_[i] > 0.0) || !(err_[i] >= 0.0))
      throw InvalidArgument("MeiCurve: knots need c >= 0, m > 0, err >= 0");
    if (i > 0 && !(c_[i] > c_[i - 1])) throw InvalidArgument("MeiCurve: c must be strictly increasing");
  }
}

double MeiCurve::operator()(double c) const {
  if (!(c >= c_.front() && c <= c_.back()))
    throw ExtrapolationError("MeiCurve: c=" + std::to_string(c) + " outside sampled range");
  const auto it = std::upper_bound(c_.begin(), c_.end(), c);
  if (it == c_.end()) return m_.back();
  const std::size_t i = static_cast<std::size_t>(it - c_.begin());
  const double s = (c - c_[i - 1]) / (c_[i] - c_[i - 1]);
  return m_[i - 1] + s * (m_[i] - m_[i - 1]);
}

MeiCurve MeiCurve::shifted(double sign) const {
  std::vector<double> m(m_);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i] + sign * err_[i], 1e-300);
  return MeiCurve(c_, m, err_);
}

namespace {
double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax, vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double s = len2 > 0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(px - (ax + s * vx), py - (ay + s * vy));
}
}  // namespace

double mei(double c, double h, const MeiCurve& curve) {
  const double mc = curve(c);
  if (h >= mc) return std::numeric_limits<double>::infinity();
  const auto& cs = curve.c();
  const auto& ms = curve.m();
  // Vertical ray above the first knot.
  double dist = h >= ms.front() ? std::abs(c - cs.front()) : std::hypot(c - cs.front(), h - ms.front());
  for (std::size_t i = 1; i < cs.size(); ++i)
    dist = std::min(dist, segment_distance(c, h, cs[i - 1], ms[i - 1], cs[i], ms[i]));
  // Flat ray to the right of the last knot.
  dist = std::min(dist, c >= cs.back() ? std::abs(h - ms.back()) : std::hypot(c - cs.back(), h - ms.back()));
  return h + (h + c) / dist;
}

MeiBand mei_band(double c, double h, const MeiCurve& curve) {
  // Raising the curve moves the boundary away, which lowers D.
  return {mei(c, h, curve), mei(c, h, curve.shifted(1.0)), mei(c, h, curve.shifted(-1.0))};
}

}  // namespace wgnls
