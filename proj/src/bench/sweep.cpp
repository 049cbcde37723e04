#include "pfft/bench/sweep.hpp"

#include <algorithm>
#include <barrier>
#include <exception>
#include <string>
#include <thread>

#include "pfft/errors.hpp"

namespace pfft::bench {

namespace {

void validate_axis(const char* name, const std::vector<int>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= 0)
      throw DomainError(std::string(name) + " values must be positive");
    if (i > 0 && v[i] <= v[i - 1])
      throw DomainError(std::string(name) +
                        " values must be strictly increasing");
  }
}

constexpr std::uint64_t kBytesPerElement = 16;  // one complex<double>

}  // namespace

void SweepSpec::validate() const {
  validate_axis("x", x_values);
  validate_axis("y", y_values);
}

std::vector<int> arithmetic_values(int first, int last, int step) {
  if (first <= 0 || step <= 0 || last < first)
    throw DomainError("invalid range " + std::to_string(first) + ":" +
                      std::to_string(last) + ":" + std::to_string(step));
  std::vector<int> out;
  for (long v = first; v <= last; v += step) out.push_back(static_cast<int>(v));
  return out;
}

SweepOutcome build_speed_functions(const SweepSpec& sweep,
                                   const EngineHook& engine,
                                   const SweepOptions& options) {
  sweep.validate();
  if (options.group_count < 1)
    throw DomainError("group_count must be >= 1");
  if (!engine) throw DomainError("engine hook is required");

  const int p = options.group_count;
  auto constraint = sweep.constraint
                        ? sweep.constraint
                        : [](int x, int y) { return x <= y; };
  auto clock_factory = options.clock_factory
                           ? options.clock_factory
                           : [](int, int, int) { return steady_clock_seconds(); };
  auto policy = options.policy ? options.policy : [](int x, int y) {
    return policy_for_problem_size(std::max(x, y));
  };

  SweepOutcome out;
  out.functions.reserve(p);
  for (int g = 0; g < p; ++g) out.functions.emplace_back(g);

  auto record_skip = [&](std::vector<SkipRecord>& list, int x, int y,
                         std::string reason) {
    SkipRecord rec{x, y, std::move(reason)};
    if (options.sink) options.sink->on_skip(rec);
    list.push_back(std::move(rec));
  };

  for (int y : sweep.y_values) {
    for (int x : sweep.x_values) {
      if (!constraint(x, y)) continue;
      if (options.already_done && options.already_done(x, y)) continue;

      std::uint64_t bytes = static_cast<std::uint64_t>(p) * x * y *
                            kBytesPerElement;
      if (bytes > sweep.memory_budget_bytes) {
        record_skip(out.skipped, x, y,
                    "memory budget: needs " + std::to_string(bytes) +
                        " bytes, budget " +
                        std::to_string(sweep.memory_budget_bytes));
        continue;
      }

      std::vector<std::function<void()>> workloads;
      try {
        workloads = engine(x, y);
      } catch (const std::exception& e) {
        record_skip(out.failed, x, y, std::string("engine hook: ") + e.what());
        continue;
      }
      if (static_cast<int>(workloads.size()) != p)
        throw Error("engine hook returned " +
                    std::to_string(workloads.size()) + " workloads for " +
                    std::to_string(p) + " groups");

      MeasurementPolicy pol = policy(x, y);

      // All groups measure the same point concurrently; the barrier releases
      // them together so the contention being measured is realistic.
      std::vector<MeasurementResult> results(p);
      std::vector<std::exception_ptr> errors(p);
      std::barrier start_line(p);
      {
        std::vector<std::jthread> threads;
        threads.reserve(p);
        for (int g = 0; g < p; ++g) {
          threads.emplace_back([&, g] {
            Clock clk = clock_factory(g, x, y);
            start_line.arrive_and_wait();
            try {
              results[g] = mean_using_ttest(workloads[g], clk, pol);
            } catch (...) {
              errors[g] = std::current_exception();
            }
          });
        }
      }

      std::string failure;
      for (int g = 0; g < p; ++g) {
        if (!errors[g]) continue;
        try {
          std::rethrow_exception(errors[g]);
        } catch (const std::exception& e) {
          failure += (failure.empty() ? "" : "; ");
          failure += "group " + std::to_string(g) + ": " + e.what();
        }
      }
      std::vector<fpm::SpeedPoint> pts;
      if (failure.empty()) {
        // SpeedPoint construction rejects non-positive means; treat that as a
        // point failure too so a broken timer cannot poison the model. All
        // groups are validated before any is committed.
        try {
          pts.reserve(p);
          for (int g = 0; g < p; ++g)
            pts.push_back(fpm::SpeedPoint::from_time(x, y, results[g].mean_s));
        } catch (const std::exception& e) {
          failure = e.what();
          pts.clear();
        }
      }
      if (!failure.empty()) {
        record_skip(out.failed, x, y, failure);
        continue;
      }
      for (int g = 0; g < p; ++g) {
        out.functions[g].insert(pts[g]);
        if (options.sink) options.sink->on_point(g, pts[g], results[g]);
      }
    }
  }
  return out;
}

}  // namespace pfft::bench
