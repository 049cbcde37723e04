#include "pfft/part/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pfft/errors.hpp"

namespace pfft::part {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Section a speed function at the plane y = n, snapping n down to the
// largest sampled y. Mirrors SpeedFunction::lookup's snapping rule.
fpm::SpeedCurve section_at_plane(const fpm::SpeedFunction& sf, int n) {
  std::optional<int> snap = sf.snap_y(n);
  if (!snap) {
    int near = sf.nearest_y(n);
    throw NotFoundError("y=" + std::to_string(n) +
                            " is below the sampled range; nearest sampled y is " +
                            std::to_string(near),
                        near);
  }
  return sf.section_at_y(*snap);
}

// Per-group predicted times for every row count 0..n. Index [g][d]. Uses the
// same section + piecewise-linear evaluation as predicted_time, so the two
// agree bit-for-bit.
std::vector<std::vector<double>> build_time_tables(
    const std::vector<const fpm::SpeedFunction*>& sfs, int n) {
  std::vector<std::vector<double>> t(sfs.size(),
                                     std::vector<double>(n + 1, 0.0));
  for (std::size_t g = 0; g < sfs.size(); ++g) {
    fpm::SpeedCurve curve = section_at_plane(*sfs[g], n);
    for (int d = 1; d <= n; ++d)
      t[g][d] = fpm::transform_flops(d, n) /
                curve.speed_at(static_cast<double>(d));
  }
  return t;
}

RowDistribution solve_core(const std::vector<const fpm::SpeedFunction*>& sfs,
                           int n, bool allow_zero) {
  const int p = static_cast<int>(sfs.size());
  if (p < 1) throw DomainError("at least one group is required");
  if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
  if (!allow_zero && n < p)
    throw DomainError("infeasible: " + std::to_string(n) + " rows for " +
                      std::to_string(p) +
                      " groups with zero counts disallowed");

  std::vector<std::vector<double>> t = build_time_tables(sfs, n);
  const int dlo = allow_zero ? 0 : 1;
  const int stride = n + 1;

  // f[i][r]: best achievable makespan distributing r rows over groups i..p-1.
  std::vector<double> f(static_cast<std::size_t>(p + 1) * stride, kInf);
  f[static_cast<std::size_t>(p) * stride + 0] = 0.0;
  for (int i = p - 1; i >= 0; --i) {
    const double* fnext = &f[static_cast<std::size_t>(i + 1) * stride];
    double* fcur = &f[static_cast<std::size_t>(i) * stride];
    const std::vector<double>& ti = t[i];
    for (int r = 0; r <= n; ++r) {
      double best = kInf;
      for (int d = dlo; d <= r; ++d) {
        double rest = fnext[r - d];
        if (rest == kInf) continue;
        double cand = std::max(ti[d], rest);
        if (cand < best) best = cand;
      }
      fcur[r] = best;
    }
  }

  double target = f[n];
  if (!(target < kInf))
    throw DomainError("partition infeasible for n=" + std::to_string(n));

  // Forward reconstruction: the smallest d keeping the completion at the
  // optimum yields the lexicographically smallest optimal counts. All values
  // compared here were computed once above, so the comparisons are exact.
  RowDistribution out;
  out.counts.assign(p, 0);
  out.objective_time_s = target;
  int r = n;
  for (int i = 0; i < p; ++i) {
    const double* fnext = &f[static_cast<std::size_t>(i + 1) * stride];
    bool found = false;
    for (int d = dlo; d <= r; ++d) {
      double rest = fnext[r - d];
      if (rest == kInf) continue;
      if (std::max(t[i][d], rest) <= target) {
        out.counts[i] = d;
        r -= d;
        found = true;
        break;
      }
    }
    if (!found) throw Error("partition reconstruction failed");
  }
  return out;
}

}  // namespace

const char* to_string(PartitionPath p) {
  switch (p) {
    case PartitionPath::Homogeneous: return "homogeneous";
    case PartitionPath::Heterogeneous: return "heterogeneous";
  }
  return "unknown";
}

HomogeneityReport homogeneity_check(const std::vector<fpm::SpeedCurve>& curves,
                                    double epsilon) {
  if (curves.empty()) throw DomainError("at least one curve is required");
  if (!(epsilon >= 0)) throw DomainError("epsilon must be >= 0");
  for (const fpm::SpeedCurve& c : curves)
    if (c.empty()) throw DomainError("homogeneity check on an empty curve");

  // Common sampled x values across every curve.
  std::vector<int> common;
  for (const auto& [x, s] : curves[0].samples) common.push_back(x);
  for (std::size_t i = 1; i < curves.size(); ++i) {
    std::vector<int> xs, merged;
    for (const auto& [x, s] : curves[i].samples) xs.push_back(x);
    std::set_intersection(common.begin(), common.end(), xs.begin(), xs.end(),
                          std::back_inserter(merged));
    common.swap(merged);
  }
  if (common.empty())
    throw DomainError("curves share no sampled x values");

  auto speed_of = [](const fpm::SpeedCurve& c, int x) {
    auto it = std::lower_bound(
        c.samples.begin(), c.samples.end(), x,
        [](const std::pair<int, double>& s, int key) { return s.first < key; });
    return it->second;  // exact hit guaranteed: x came from the intersection
  };

  HomogeneityReport rep;
  rep.worst_rdiff = -1.0;
  for (int x : common) {
    double lo = kInf, hi = -kInf;
    for (const fpm::SpeedCurve& c : curves) {
      double s = speed_of(c, x);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (!(lo > 0)) throw DomainError("curve speeds must be positive");
    double rdiff = (hi - lo) / lo;
    if (rdiff > rep.worst_rdiff) {
      rep.worst_rdiff = rdiff;
      rep.worst_x = x;
    }
  }
  rep.identical = rep.worst_rdiff <= epsilon;
  return rep;
}

fpm::SpeedCurve harmonic_mean_curve(const std::vector<fpm::SpeedCurve>& curves) {
  if (curves.empty()) throw DomainError("at least one curve is required");
  for (const fpm::SpeedCurve& c : curves) {
    if (c.empty()) throw DomainError("harmonic mean of an empty curve");
    if (c.axis != curves[0].axis)
      throw DomainError("harmonic mean across mixed curve axes");
  }
  std::vector<int> common;
  for (const auto& [x, s] : curves[0].samples) common.push_back(x);
  for (std::size_t i = 1; i < curves.size(); ++i) {
    std::vector<int> xs, merged;
    for (const auto& [x, s] : curves[i].samples) xs.push_back(x);
    std::set_intersection(common.begin(), common.end(), xs.begin(), xs.end(),
                          std::back_inserter(merged));
    common.swap(merged);
  }
  if (common.empty()) throw DomainError("curves share no sampled x values");

  fpm::SpeedCurve out;
  out.axis = curves[0].axis;
  out.fixed = curves[0].fixed;
  const double p = static_cast<double>(curves.size());
  for (int x : common) {
    double denom = 0.0;
    for (const fpm::SpeedCurve& c : curves) {
      auto it = std::lower_bound(
          c.samples.begin(), c.samples.end(), x,
          [](const std::pair<int, double>& s, int key) { return s.first < key; });
      if (!(it->second > 0)) throw DomainError("curve speeds must be positive");
      denom += 1.0 / it->second;
    }
    out.samples.emplace_back(x, p / denom);
  }
  return out;
}

double predicted_time(const fpm::SpeedFunction& sf, int x, int n) {
  if (x < 0) throw DomainError("row count must be >= 0");
  if (x == 0) return 0.0;
  return fpm::transform_flops(x, n) / sf.speed_at(x, n);
}

RowDistribution solve_heterogeneous(std::span<const fpm::SpeedFunction> sfs,
                                    int n, bool allow_zero) {
  std::vector<const fpm::SpeedFunction*> ptrs;
  ptrs.reserve(sfs.size());
  for (const fpm::SpeedFunction& sf : sfs) ptrs.push_back(&sf);
  return solve_core(ptrs, n, allow_zero);
}

RowDistribution solve_homogeneous(const fpm::SpeedFunction& avg, int p, int n,
                                  bool allow_zero) {
  if (p < 1) throw DomainError("group count must be >= 1");
  std::vector<const fpm::SpeedFunction*> ptrs(p, &avg);
  return solve_core(ptrs, n, allow_zero);
}

PartitionResult partition(std::span<const fpm::SpeedFunction> sfs, int n,
                          double epsilon, bool allow_zero) {
  if (sfs.empty()) throw DomainError("at least one speed function is required");
  if (n < 2) throw DomainError("n must be >= 2, got " + std::to_string(n));

  std::vector<fpm::SpeedCurve> curves;
  curves.reserve(sfs.size());
  for (const fpm::SpeedFunction& sf : sfs)
    curves.push_back(section_at_plane(sf, n));

  PartitionResult res;
  res.homogeneity = homogeneity_check(curves, epsilon);
  if (res.homogeneity.identical) {
    // Groups are effectively equal: average them and split evenly by the
    // averaged model.
    fpm::SpeedCurve avg = harmonic_mean_curve(curves);
    fpm::SpeedFunction avg_fn(-1);
    for (const auto& [x, s] : avg.samples)
      avg_fn.insert(fpm::SpeedPoint::from_speed(x, n, s));
    res.dist = solve_homogeneous(avg_fn, static_cast<int>(sfs.size()), n,
                                 allow_zero);
    res.path = PartitionPath::Homogeneous;
  } else {
    res.dist = solve_heterogeneous(sfs, n, allow_zero);
    res.path = PartitionPath::Heterogeneous;
  }
  return res;
}

RowDistribution brute_force_partition(std::span<const fpm::SpeedFunction> sfs,
                                      int n, bool allow_zero) {
  const int p = static_cast<int>(sfs.size());
  if (p < 1) throw DomainError("at least one group is required");
  if (n < 1) throw DomainError("n must be >= 1");
  if (!allow_zero && n < p) throw DomainError("infeasible instance");

  // Composition count C(n + p - 1, p - 1); refuse oversized enumerations.
  double states = 1.0;
  for (int k = 1; k <= p - 1; ++k)
    states *= static_cast<double>(n + k) / k;
  if (states > 1e7)
    throw DomainError("brute force refused: ~" + std::to_string(states) +
                      " states exceeds 1e7");

  std::vector<const fpm::SpeedFunction*> ptrs;
  for (const fpm::SpeedFunction& sf : sfs) ptrs.push_back(&sf);
  std::vector<std::vector<double>> t = build_time_tables(ptrs, n);

  std::vector<int> cur(p, 0), best;
  double best_obj = kInf;
  const int dlo = allow_zero ? 0 : 1;

  // Enumerates counts in lexicographic order; strict improvement keeps the
  // first optimum found, i.e. the lexicographically smallest one.
  auto rec = [&](auto&& self, int i, int remaining, double running_max) -> void {
    if (i == p - 1) {
      if (remaining < dlo) return;
      cur[i] = remaining;
      double obj = std::max(running_max, t[i][remaining]);
      if (obj < best_obj) {
        best_obj = obj;
        best = cur;
      }
      return;
    }
    int reserve = dlo * (p - 1 - i);  // rows the remaining groups still need
    for (int d = dlo; d <= remaining - reserve; ++d) {
      cur[i] = d;
      self(self, i + 1, remaining - d, std::max(running_max, t[i][d]));
    }
  };
  rec(rec, 0, n, 0.0);

  if (best.empty()) throw DomainError("infeasible instance");
  RowDistribution out;
  out.counts = std::move(best);
  out.objective_time_s = best_obj;
  return out;
}

fpm::SpeedFunction speed_function_from_curve(const fpm::SpeedCurve& curve,
                                             int processor_id) {
  if (curve.axis != fpm::CurveAxis::FixedY)
    throw DomainError("expected a fixed-y curve");
  fpm::SpeedFunction fn(processor_id);
  for (const auto& [x, s] : curve.samples)
    fn.insert(fpm::SpeedPoint::from_speed(x, curve.fixed, s));
  return fn;
}

}  // namespace pfft::part
