#pragma once

#include <span>
#include <vector>

#include "pfft/fpm/speed_model.hpp"

namespace pfft::part {

// How many rows each group receives, and the predicted makespan, i.e. the
// max over groups of predicted_time(group, rows, n).
struct RowDistribution {
  std::vector<int> counts;
  double objective_time_s = 0;
};

enum class PartitionPath { Homogeneous, Heterogeneous };
const char* to_string(PartitionPath p);

struct HomogeneityReport {
  bool identical = false;  // worst_rdiff <= epsilon
  double worst_rdiff = 0;  // max over common x of (max speed - min) / min
  int worst_x = 0;         // x where worst_rdiff occurs (first on ties)
};

struct PartitionResult {
  RowDistribution dist;
  PartitionPath path = PartitionPath::Heterogeneous;
  HomogeneityReport homogeneity;
};

// Compares per-group speed curves point-by-point over their common sampled x
// values. Groups count as identical when every relative spread is <= epsilon.
HomogeneityReport homogeneity_check(const std::vector<fpm::SpeedCurve>& curves,
                                    double epsilon);

// Pointwise harmonic mean over the common sampled x values:
// s_avg(x) = p / sum_i(1 / s_i(x)). The result keeps curves[0]'s pinned
// coordinate.
fpm::SpeedCurve harmonic_mean_curve(const std::vector<fpm::SpeedCurve>& curves);

// Predicted wall time for one group to transform x rows of length n:
// transform_flops(x, n) / speed_at(sf, x, n); exactly 0 when x == 0.
double predicted_time(const fpm::SpeedFunction& sf, int x, int n);

// Exact min-max row partition via dynamic programming over (group index,
// rows remaining): O(p * n^2) model lookups. Returns the lexicographically
// smallest optimal counts vector. allow_zero = false forces every group to
// receive at least one row (infeasible when n < p).
RowDistribution solve_heterogeneous(std::span<const fpm::SpeedFunction> sfs,
                                    int n, bool allow_zero = true);

// Same solver with p copies of a single averaged speed function.
RowDistribution solve_homogeneous(const fpm::SpeedFunction& avg, int p, int n,
                                  bool allow_zero = true);

// Top-level partition: sections every speed function at the plane y = n
// (snapping down per function), routes through the homogeneity check, and
// solves on the heterogeneous or harmonic-mean path accordingly.
PartitionResult partition(std::span<const fpm::SpeedFunction> sfs, int n,
                          double epsilon = 0.05, bool allow_zero = true);

// Oracle-grade exhaustive enumeration of every composition of n into p
// parts. Refuses instances beyond ~1e7 states. Ties resolve to the
// lexicographically smallest counts, matching the DP.
RowDistribution brute_force_partition(std::span<const fpm::SpeedFunction> sfs,
                                      int n, bool allow_zero = true);

// Lifts a fixed-y section back into a single-row SpeedFunction (used to feed
// solve_homogeneous with the averaged curve).
fpm::SpeedFunction speed_function_from_curve(const fpm::SpeedCurve& curve,
                                             int processor_id = 0);

}  // namespace pfft::part
