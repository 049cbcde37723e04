#pragma once

#include <functional>

namespace pfft::bench {

// Controls the adaptive measurement loop. The loop runs the workload at least
// min_reps + 1 times and at most max_reps times; starting with the first
// repetition beyond min_reps it computes the Student-t confidence half-width
// of the running mean and stops as soon as half-width / mean < precision,
// or once the accumulated workload time exceeds max_time_s.
struct MeasurementPolicy {
  int min_reps = 5;
  int max_reps = 50;
  double max_time_s = 3600.0;
  double confidence_level = 0.95;  // quantile level for the half-width
  double precision = 0.025;        // target relative half-width
  bool two_sided = false;          // confidence-interval convention

  void validate() const;
};

enum class StopReason { PrecisionReached, MaxRepsExceeded, MaxTimeExceeded };
const char* to_string(StopReason r);

struct MeasurementResult {
  int reps_done = 0;
  double mean_s = 0;                // running mean of the timed spans
  double precision_achieved = 0;    // relative half-width at stop
  double confidence_halfwidth = 0;  // absolute half-width at stop, seconds
  double elapsed_s = 0;             // sum of timed spans only
  StopReason stop_reason = StopReason::MaxRepsExceeded;
};

// Monotonic time source returning seconds. Injected so tests can script the
// timeline deterministically.
using Clock = std::function<double()>;
Clock steady_clock_seconds();

// Runs one untimed warm-up execution, then the adaptive loop. Elapsed
// accounting covers only the timed spans (clock() around the workload).
// A throwing workload surfaces as WorkloadFailure carrying the number of
// repetitions that had completed.
MeasurementResult mean_using_ttest(const std::function<void()>& workload,
                                   const Clock& clock,
                                   const MeasurementPolicy& policy);

// Repetition budget tiers by problem size (the longest transform dimension):
// n <= 1024 -> (10000, 100000); 1024 < n <= 5120 -> (100, 1000);
// n > 5120 -> (5, 50). All tiers share max_time_s 3600, confidence 0.95,
// precision 0.025.
MeasurementPolicy policy_for_problem_size(int n);

}  // namespace pfft::bench
