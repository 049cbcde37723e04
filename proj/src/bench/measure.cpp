#include "pfft/bench/measure.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "pfft/bench/student_t.hpp"
#include "pfft/errors.hpp"

namespace pfft::bench {

void MeasurementPolicy::validate() const {
  if (min_reps < 1)
    throw DomainError("min_reps must be >= 1, got " + std::to_string(min_reps));
  if (max_reps <= min_reps)
    throw DomainError("max_reps must exceed min_reps, got min=" +
                      std::to_string(min_reps) +
                      " max=" + std::to_string(max_reps));
  if (!(max_time_s > 0))
    throw DomainError("max_time_s must be positive");
  if (!(confidence_level > 0.0) || !(confidence_level < 1.0))
    throw DomainError("confidence_level must lie in (0, 1)");
  if (!(precision > 0))
    throw DomainError("precision must be positive");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::PrecisionReached: return "precision_reached";
    case StopReason::MaxRepsExceeded: return "max_reps_exceeded";
    case StopReason::MaxTimeExceeded: return "max_time_exceeded";
  }
  return "unknown";
}

Clock steady_clock_seconds() {
  return [] {
    auto now = std::chrono::steady_clock::now().time_since_epoch();
    return std::chrono::duration<double>(now).count();
  };
}

MeasurementResult mean_using_ttest(const std::function<void()>& workload,
                                   const Clock& clock,
                                   const MeasurementPolicy& policy) {
  policy.validate();

  auto run_workload = [&](int reps_completed) {
    try {
      workload();
    } catch (const std::exception& e) {
      throw WorkloadFailure(
          std::string("workload failed after ") +
              std::to_string(reps_completed) + " completed repetitions: " +
              e.what(),
          reps_completed);
    } catch (...) {
      throw WorkloadFailure("workload failed after " +
                                std::to_string(reps_completed) +
                                " completed repetitions",
                            reps_completed);
    }
  };

  run_workload(0);  // warm-up, untimed, excluded from the statistics

  // Welford running mean/variance: keeps the mean of identical samples exact
  // and avoids catastrophic cancellation in the deviation sum.
  double mean = 0.0;
  double m2 = 0.0;
  double etime = 0.0;
  int reps = 0;
  double halfwidth = 0.0;
  double rel = std::numeric_limits<double>::infinity();
  StopReason reason = StopReason::MaxRepsExceeded;

  while (reps < policy.max_reps) {
    double st = clock();
    run_workload(reps);
    double et = clock();
    double sample = et - st;
    etime += sample;
    ++reps;
    double delta = sample - mean;
    mean += delta / reps;
    m2 += delta * (sample - mean);

    if (reps > policy.min_reps) {
      double sd = std::sqrt(std::max(m2, 0.0) / (reps - 1));
      halfwidth = t_critical(policy.confidence_level, reps - 1,
                             policy.two_sided) *
                  sd / std::sqrt(static_cast<double>(reps));
      if (mean > 0)
        rel = halfwidth / mean;
      else
        rel = (halfwidth == 0.0) ? 0.0
                                 : std::numeric_limits<double>::infinity();
      if (rel < policy.precision) {
        reason = StopReason::PrecisionReached;
        break;
      }
      if (etime > policy.max_time_s) {
        reason = StopReason::MaxTimeExceeded;
        break;
      }
    }
  }

  MeasurementResult r;
  r.reps_done = reps;
  r.mean_s = mean;
  r.confidence_halfwidth = halfwidth;
  r.precision_achieved = rel;
  r.elapsed_s = etime;
  r.stop_reason = reason;
  return r;
}

MeasurementPolicy policy_for_problem_size(int n) {
  if (n <= 0)
    throw DomainError("problem size must be positive, got " + std::to_string(n));
  MeasurementPolicy p;
  if (n <= 1024) {
    p.min_reps = 10000;
    p.max_reps = 100000;
  } else if (n <= 5120) {
    p.min_reps = 100;
    p.max_reps = 1000;
  } else {
    p.min_reps = 5;
    p.max_reps = 50;
  }
  p.max_time_s = 3600.0;
  p.confidence_level = 0.95;
  p.precision = 0.025;
  return p;
}

}  // namespace pfft::bench
