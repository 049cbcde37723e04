#pragma once

#include <span>
#include <string>
#include <vector>

#include "pfft/fpm/speed_model.hpp"
#include "pfft/part/partition.hpp"

namespace pfft::pad {

// What to minimize when weighing padded transform lengths.
// StoredTime: predicted seconds, transform_flops(x, V) / speed(x, V).
// ElementProxy: the element-count proxy x * V / speed(x, V).
enum class PadObjective { StoredTime, ElementProxy };
const char* to_string(PadObjective o);

struct PadDecision {
  int group_id = 0;
  int rows = 0;            // rows this group transforms
  int base_length = 0;     // the unpadded transform length n
  int padded_length = 0;   // chosen length; == base_length when not padding
  double predicted_gain = 0;  // objective(base) - objective(chosen), > 0 iff padded
  std::string note;        // explains degenerate decisions; empty otherwise
};

// Chooses the transform length for one group of `rows` rows with base length
// n. Candidates are the sampled y values of sf strictly greater than n; the
// candidate with the smallest predicted objective wins, ties resolving to the
// smallest length, and padding only happens on strict improvement over the
// unpadded prediction. Degenerate cases (no rows, no candidates, baseline not
// modeled) return padded_length == n with an explanatory note.
PadDecision determine_pad_length(const fpm::SpeedFunction& sf, int rows, int n,
                                 PadObjective objective = PadObjective::StoredTime);

// Per-group decisions for a whole row distribution.
std::vector<PadDecision> plan_padding(std::span<const fpm::SpeedFunction> sfs,
                                      const part::RowDistribution& dist, int n,
                                      PadObjective objective = PadObjective::StoredTime);

}  // namespace pfft::pad
