#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace pfft::fpm {

// Flop count attributed to a batch of x complex 1D transforms of length y.
// This is the constant used throughout: 2.5 * x * y * log2(y).
double transform_flops(int x, int y);

// Empirical speed of a batch: transform_flops(x, y) / time_s, in flop/s.
// All inputs must be positive. Note y == 1 yields speed 0 (log2(1) == 0),
// which is why stored sample points require y >= 2.
double speed_from_time(int x, int y, double time_s);

// Inverse of speed_from_time for a known speed.
double time_from_speed(int x, int y, double speed);

// Relative difference between two speeds as a percentage of the smaller one:
// |s1 - s2| / min(s1, s2) * 100. Symmetric; both speeds must be positive.
double variation_percent(double s1, double s2);

// One sampled point of a speed function.
struct SpeedPoint {
  int x = 0;         // rows transformed per call
  int y = 0;         // 1D transform length in complex elements
  double time_s = 0; // measured mean execution time, authoritative
  double speed = 0;  // flop/s, derived from time_s

  static SpeedPoint from_time(int x, int y, double time_s);
  static SpeedPoint from_speed(int x, int y, double speed);
};

enum class CurveAxis { FixedY, FixedX };

// A 1D section through a speed function: speed against one free coordinate
// while the other is pinned.
struct SpeedCurve {
  CurveAxis axis = CurveAxis::FixedY;
  int fixed = 0;                                // value of the pinned coordinate
  std::vector<std::pair<int, double>> samples;  // (free coordinate, speed), ascending

  bool empty() const { return samples.empty(); }
  // Piecewise-linear interpolation in the free coordinate, clamped to the end
  // samples outside the sampled range. Exact sample hits return the stored
  // speed bit-for-bit.
  double speed_at(double v) const;
};

// Extent and granularity of the sampled grid, derived from the points.
// Steps are the smallest positive gap between consecutive sampled values
// (0 when an axis has a single value).
struct GridMeta {
  int x_min = 0, x_max = 0, x_step = 0;
  int y_min = 0, y_max = 0, y_step = 0;
};

// Result of a model lookup, with enough metadata to explain what was used.
struct SpeedLookup {
  double speed = 0;
  int snapped_y = 0;          // sampled y actually consulted
  bool y_snapped = false;     // snapped_y != requested y
  bool x_clamped = false;     // x fell outside the sampled range at snapped_y
  bool x_interpolated = false;
};

// Discrete speed map of one processor group: unique (x, y) keys, kept sorted
// by (y, x).
class SpeedFunction {
 public:
  SpeedFunction() = default;
  explicit SpeedFunction(int processor_id) : processor_id_(processor_id) {}

  int processor_id() const { return processor_id_; }
  void set_processor_id(int id) { processor_id_ = id; }

  bool empty() const { return pts_.empty(); }
  std::size_t size() const { return pts_.size(); }
  const std::vector<SpeedPoint>& points() const { return pts_; }

  // Inserts a sample; an existing sample with the same (x, y) is replaced.
  void insert(const SpeedPoint& p);
  // nullptr when (x, y) is not sampled.
  const SpeedPoint* find(int x, int y) const;

  std::vector<int> sampled_y() const;          // ascending, unique
  std::vector<int> sampled_x_at(int y) const;  // ascending; empty if y unsampled

  // Largest sampled y <= y, or nullopt when y is below the sampled range.
  std::optional<int> snap_y(int y) const;
  // Nearest sampled coordinate by absolute distance (ties -> lower value).
  // For diagnostics; throws NotFoundError when the function is empty.
  int nearest_y(int y) const;
  int nearest_x(int x) const;

  // Exact-match section: all samples with the given y (resp. x). An unsampled
  // coordinate raises NotFoundError naming the nearest sampled one.
  SpeedCurve section_at_y(int y) const;
  SpeedCurve section_at_x(int x) const;

  // Model lookup: y snaps down to the largest sampled y <= y (NotFoundError if
  // none), then speed is piecewise-linear in x along that section, clamped
  // outside the sampled x range. An exact grid hit returns the stored speed.
  SpeedLookup lookup(int x, int y) const;
  double speed_at(int x, int y) const { return lookup(x, y).speed; }

  GridMeta grid_meta() const;

 private:
  int processor_id_ = 0;
  std::vector<SpeedPoint> pts_;  // sorted by (y, x)
};

}  // namespace pfft::fpm
