#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pfft/bench/measure.hpp"
#include "pfft/fpm/speed_model.hpp"

namespace pfft::bench {

// Sweep domain: the cross product of x_values and y_values filtered by
// `constraint` (default x <= y). Points whose combined working set
// group_count * x * y * 16 bytes exceeds memory_budget_bytes are skipped
// and logged rather than attempted.
struct SweepSpec {
  std::vector<int> x_values;  // strictly increasing, positive
  std::vector<int> y_values;  // strictly increasing, positive
  std::function<bool(int x, int y)> constraint;  // default: x <= y
  std::uint64_t memory_budget_bytes = UINT64_MAX;

  void validate() const;
};

// Builds an arithmetic sequence first..last step `step`, for grid specs.
std::vector<int> arithmetic_values(int first, int last, int step);

struct SkipRecord {
  int x = 0;
  int y = 0;
  std::string reason;
};

// Streaming observer; used by the CLI to flush each completed point to disk
// so an interrupted sweep loses at most the point in flight.
class SweepSink {
 public:
  virtual ~SweepSink() = default;
  virtual void on_point(int group, const fpm::SpeedPoint& point,
                        const MeasurementResult& result) {
    (void)group; (void)point; (void)result;
  }
  virtual void on_skip(const SkipRecord& record) { (void)record; }
};

// Per-sweep-point hook: returns one timed workload per group for problem
// size (x rows, y-length transforms). All returned workloads are executed
// concurrently, released together by a barrier, and each is measured with
// its own adaptive loop.
using EngineHook =
    std::function<std::vector<std::function<void()>>(int x, int y)>;

struct SweepOptions {
  int group_count = 1;
  // Time source per (group, x, y); defaults to the steady clock everywhere.
  std::function<Clock(int group, int x, int y)> clock_factory;
  // Measurement policy per point; defaults to policy_for_problem_size(max(x, y)).
  std::function<MeasurementPolicy(int x, int y)> policy;
  // Resume support: points reported already done are not re-measured.
  std::function<bool(int x, int y)> already_done;
  SweepSink* sink = nullptr;
};

struct SweepOutcome {
  std::vector<fpm::SpeedFunction> functions;  // one per group, ids 0..p-1
  std::vector<SkipRecord> skipped;            // budget-capped points
  std::vector<SkipRecord> failed;             // engine or workload failures
};

// Measures every admissible sweep point and assembles per-group speed
// functions. A failing point is recorded and the sweep continues.
SweepOutcome build_speed_functions(const SweepSpec& sweep,
                                   const EngineHook& engine,
                                   const SweepOptions& options = {});

}  // namespace pfft::bench
