#include "pfft/fpm/speed_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pfft/errors.hpp"

namespace pfft::fpm {

namespace {

void require_positive(const char* name, double v) {
  if (!(v > 0))
    throw DomainError(std::string(name) + " must be positive, got " +
                      std::to_string(v));
}

void require_positive(const char* name, int v) {
  if (v <= 0)
    throw DomainError(std::string(name) + " must be positive, got " +
                      std::to_string(v));
}

}  // namespace

double transform_flops(int x, int y) {
  require_positive("x", x);
  require_positive("y", y);
  return 2.5 * static_cast<double>(x) * static_cast<double>(y) *
         std::log2(static_cast<double>(y));
}

double speed_from_time(int x, int y, double time_s) {
  require_positive("time_s", time_s);
  return transform_flops(x, y) / time_s;
}

double time_from_speed(int x, int y, double speed) {
  require_positive("speed", speed);
  return transform_flops(x, y) / speed;
}

double variation_percent(double s1, double s2) {
  require_positive("s1", s1);
  require_positive("s2", s2);
  return std::abs(s1 - s2) / std::min(s1, s2) * 100.0;
}

SpeedPoint SpeedPoint::from_time(int x, int y, double time_s) {
  require_positive("x", x);
  if (y < 2)
    throw DomainError("sample y must be >= 2, got " + std::to_string(y));
  require_positive("time_s", time_s);
  SpeedPoint p;
  p.x = x;
  p.y = y;
  p.time_s = time_s;
  p.speed = speed_from_time(x, y, time_s);
  return p;
}

SpeedPoint SpeedPoint::from_speed(int x, int y, double speed) {
  require_positive("x", x);
  if (y < 2)
    throw DomainError("sample y must be >= 2, got " + std::to_string(y));
  require_positive("speed", speed);
  SpeedPoint p;
  p.x = x;
  p.y = y;
  p.speed = speed;
  p.time_s = time_from_speed(x, y, speed);
  return p;
}

double SpeedCurve::speed_at(double v) const {
  if (samples.empty())
    throw DomainError("speed curve has no samples");
  if (v <= samples.front().first) return samples.front().second;
  if (v >= samples.back().first) return samples.back().second;
  // First sample with coordinate >= v; v is strictly inside the range here.
  auto hi = std::lower_bound(
      samples.begin(), samples.end(), v,
      [](const std::pair<int, double>& s, double key) { return s.first < key; });
  if (static_cast<double>(hi->first) == v) return hi->second;
  auto lo = hi - 1;
  double x0 = lo->first, x1 = hi->first;
  return lo->second + (hi->second - lo->second) * (v - x0) / (x1 - x0);
}

namespace {

bool key_less(const SpeedPoint& p, std::pair<int, int> yx) {
  if (p.y != yx.first) return p.y < yx.first;
  return p.x < yx.second;
}

// Nearest value in a sorted unique list; ties resolve to the lower value.
int nearest_in(const std::vector<int>& sorted, int v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end()) return sorted.back();
  if (it == sorted.begin()) return sorted.front();
  int above = *it, below = *(it - 1);
  return (above - v < v - below) ? above : below;
}

// Smallest positive gap between consecutive values of a sorted unique list.
int min_step(const std::vector<int>& sorted) {
  int step = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    int d = sorted[i] - sorted[i - 1];
    if (step == 0 || d < step) step = d;
  }
  return step;
}

}  // namespace

void SpeedFunction::insert(const SpeedPoint& p) {
  // Re-validate through the factory so hand-rolled aggregates cannot sneak
  // inconsistent samples in.
  SpeedPoint checked = SpeedPoint::from_time(p.x, p.y, p.time_s);
  auto it = std::lower_bound(pts_.begin(), pts_.end(), std::pair{p.y, p.x},
                             key_less);
  if (it != pts_.end() && it->x == p.x && it->y == p.y)
    *it = checked;
  else
    pts_.insert(it, checked);
}

const SpeedPoint* SpeedFunction::find(int x, int y) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), std::pair{y, x},
                             key_less);
  if (it != pts_.end() && it->x == x && it->y == y) return &*it;
  return nullptr;
}

std::vector<int> SpeedFunction::sampled_y() const {
  std::vector<int> ys;
  for (const SpeedPoint& p : pts_)
    if (ys.empty() || ys.back() != p.y) ys.push_back(p.y);
  return ys;
}

std::vector<int> SpeedFunction::sampled_x_at(int y) const {
  std::vector<int> xs;
  auto it = std::lower_bound(pts_.begin(), pts_.end(), std::pair{y, 0},
                             key_less);
  for (; it != pts_.end() && it->y == y; ++it) xs.push_back(it->x);
  return xs;
}

std::optional<int> SpeedFunction::snap_y(int y) const {
  std::optional<int> best;
  for (const SpeedPoint& p : pts_) {
    if (p.y > y) break;  // sorted by y
    best = p.y;
  }
  return best;
}

int SpeedFunction::nearest_y(int y) const {
  if (pts_.empty()) throw NotFoundError("speed function has no samples", 0);
  return nearest_in(sampled_y(), y);
}

int SpeedFunction::nearest_x(int x) const {
  if (pts_.empty()) throw NotFoundError("speed function has no samples", 0);
  std::vector<int> xs;
  for (const SpeedPoint& p : pts_) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return nearest_in(xs, x);
}

SpeedCurve SpeedFunction::section_at_y(int y) const {
  if (pts_.empty()) throw NotFoundError("speed function has no samples", 0);
  SpeedCurve c;
  c.axis = CurveAxis::FixedY;
  c.fixed = y;
  auto it = std::lower_bound(pts_.begin(), pts_.end(), std::pair{y, 0},
                             key_less);
  for (; it != pts_.end() && it->y == y; ++it)
    c.samples.emplace_back(it->x, it->speed);
  if (c.samples.empty()) {
    int near = nearest_y(y);
    throw NotFoundError("y=" + std::to_string(y) +
                            " is not sampled; nearest sampled y is " +
                            std::to_string(near),
                        near);
  }
  return c;
}

SpeedCurve SpeedFunction::section_at_x(int x) const {
  if (pts_.empty()) throw NotFoundError("speed function has no samples", 0);
  SpeedCurve c;
  c.axis = CurveAxis::FixedX;
  c.fixed = x;
  for (const SpeedPoint& p : pts_)
    if (p.x == x) c.samples.emplace_back(p.y, p.speed);
  // pts_ is sorted by (y, x), so samples came out ascending in y already.
  if (c.samples.empty()) {
    int near = nearest_x(x);
    throw NotFoundError("x=" + std::to_string(x) +
                            " is not sampled; nearest sampled x is " +
                            std::to_string(near),
                        near);
  }
  return c;
}

SpeedLookup SpeedFunction::lookup(int x, int y) const {
  if (pts_.empty()) throw NotFoundError("speed function has no samples", 0);
  std::optional<int> snap = snap_y(y);
  if (!snap) {
    int near = nearest_y(y);
    throw NotFoundError("y=" + std::to_string(y) +
                            " is below the sampled range; nearest sampled y is " +
                            std::to_string(near),
                        near);
  }
  SpeedCurve c = section_at_y(*snap);
  SpeedLookup r;
  r.snapped_y = *snap;
  r.y_snapped = (*snap != y);
  r.x_clamped = (x < c.samples.front().first || x > c.samples.back().first);
  auto it = std::lower_bound(
      c.samples.begin(), c.samples.end(), x,
      [](const std::pair<int, double>& s, int key) { return s.first < key; });
  bool exact_x = (it != c.samples.end() && it->first == x);
  r.x_interpolated = !r.x_clamped && !exact_x;
  r.speed = c.speed_at(static_cast<double>(x));
  return r;
}

GridMeta SpeedFunction::grid_meta() const {
  if (pts_.empty()) throw NotFoundError("speed function has no samples", 0);
  std::vector<int> xs;
  for (const SpeedPoint& p : pts_) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<int> ys = sampled_y();
  GridMeta g;
  g.x_min = xs.front();
  g.x_max = xs.back();
  g.x_step = min_step(xs);
  g.y_min = ys.front();
  g.y_max = ys.back();
  g.y_step = min_step(ys);
  return g;
}

}  // namespace pfft::fpm
