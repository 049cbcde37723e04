#include "pfft/pad/planner.hpp"

#include <limits>
#include <string>

#include "pfft/errors.hpp"

namespace pfft::pad {

namespace {

double objective_value(PadObjective obj, int rows, int length, double speed) {
  if (obj == PadObjective::ElementProxy)
    return static_cast<double>(rows) * static_cast<double>(length) / speed;
  return fpm::transform_flops(rows, length) / speed;
}

}  // namespace

const char* to_string(PadObjective o) {
  return o == PadObjective::ElementProxy ? "element_proxy" : "stored_time";
}

PadDecision determine_pad_length(const fpm::SpeedFunction& sf, int rows, int n,
                                 PadObjective objective) {
  if (rows < 0) throw DomainError("rows must be >= 0");
  if (n < 2) throw DomainError("base length must be >= 2, got " +
                               std::to_string(n));

  PadDecision d;
  d.rows = rows;
  d.base_length = n;
  d.padded_length = n;
  d.predicted_gain = 0.0;

  if (rows == 0) {
    d.note = "no rows assigned";
    return d;
  }

  std::vector<int> candidates;
  for (int y : sf.sampled_y())
    if (y > n) candidates.push_back(y);
  if (candidates.empty()) {
    d.note = "no sampled lengths above " + std::to_string(n);
    return d;
  }

  double base;
  try {
    base = objective_value(objective, rows, n, sf.speed_at(rows, n));
  } catch (const NotFoundError&) {
    // Nothing sampled at or below n: the unpadded prediction does not exist,
    // so there is nothing to improve on. Stay conservative.
    d.note = "baseline length " + std::to_string(n) + " is below the sampled range";
    return d;
  }

  // Ascending candidate order + strict comparison = smallest length on ties.
  int best_len = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int v : candidates) {
    double t = objective_value(objective, rows, v, sf.speed_at(rows, v));
    if (t < best) {
      best = t;
      best_len = v;
    }
  }

  if (best < base) {
    d.padded_length = best_len;
    d.predicted_gain = base - best;
  } else {
    d.note = "no candidate beats the unpadded prediction";
  }
  return d;
}

std::vector<PadDecision> plan_padding(std::span<const fpm::SpeedFunction> sfs,
                                      const part::RowDistribution& dist, int n,
                                      PadObjective objective) {
  if (sfs.size() != dist.counts.size())
    throw DomainError("distribution has " + std::to_string(dist.counts.size()) +
                      " groups but " + std::to_string(sfs.size()) +
                      " speed functions were given");
  std::vector<PadDecision> out;
  out.reserve(sfs.size());
  for (std::size_t g = 0; g < sfs.size(); ++g) {
    PadDecision d = determine_pad_length(sfs[g], dist.counts[g], n, objective);
    d.group_id = static_cast<int>(g);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace pfft::pad
