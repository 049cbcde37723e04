#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "pfft/bench/measure.hpp"
#include "pfft/errors.hpp"
#include "../support/test_support.hpp"

using namespace pfft;
using namespace pfft::bench;

namespace {

// Clock scripted by per-repetition durations: call k*2 is the start of
// repetition k, call k*2+1 its end, separated by spans[k] (cycled). Being
// cumulative it rounds like a real clock, so delivered spans match the
// script only to ~1e-14 relative.
Clock scripted_clock(std::vector<double> spans) {
  auto state = std::make_shared<std::pair<std::size_t, double>>(0, 0.0);
  auto sp = std::make_shared<std::vector<double>>(std::move(spans));
  return [state, sp]() {
    auto& [calls, now] = *state;
    if (calls % 2 == 1) {
      // end of a repetition: advance by its span
      std::size_t rep = calls / 2;
      now += (*sp)[rep % sp->size()];
    } else if (calls > 0) {
      now += 1e-4;  // some dead time between repetitions
    }
    ++calls;
    return now;
  };
}

// Degenerate clock delivering bit-identical spans: start reads 0, end reads
// `span`. Not monotone across repetitions, which the loop never relies on;
// it only ever subtracts paired readings.
Clock pair_clock(double span) {
  auto calls = std::make_shared<int>(0);
  return [calls, span] { return ((*calls)++ % 2) ? span : 0.0; };
}

void no_op() {}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("zero variance stops at min_reps+1 with the exact mean") {
  MeasurementPolicy pol;
  pol.min_reps = 5;
  pol.max_reps = 50;
  MeasurementResult r = mean_using_ttest(no_op, pair_clock(0.125), pol);
  CHECK(r.reps_done == 6);  // first check fires
  CHECK(r.stop_reason == StopReason::PrecisionReached);
  CHECK(r.mean_s == 0.125);  // bitwise
  CHECK(r.confidence_halfwidth == 0.0);
  CHECK(r.precision_achieved == 0.0);
  CHECK(r.elapsed_s == 0.75);  // six dyadic spans sum exactly
}

TEST_CASE("zero variance with a non-dyadic span is still exact") {
  MeasurementPolicy pol;
  pol.min_reps = 10;
  pol.max_reps = 100;
  MeasurementResult r = mean_using_ttest(no_op, pair_clock(0.1), pol);
  CHECK(r.reps_done == 11);
  CHECK(r.mean_s == 0.1);  // bitwise: the running mean of constants is exact
  CHECK(r.elapsed_s == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("noisy samples run longer and stop on precision") {
  // relative sd ~10%: needs roughly (1.65*0.1/0.025)^2 ~ 45 reps at eps=2.5%
  testsup::Rng rng(42);
  std::vector<double> spans;
  for (int i = 0; i < 200; ++i)
    spans.push_back(std::max(0.01, rng.normal(1.0, 0.1)));
  MeasurementPolicy pol;
  pol.min_reps = 5;
  pol.max_reps = 200;
  MeasurementResult r = mean_using_ttest(no_op, scripted_clock(spans), pol);
  CHECK(r.stop_reason == StopReason::PrecisionReached);
  CHECK(r.reps_done > pol.min_reps);
  CHECK(r.reps_done <= pol.max_reps);
  CHECK(r.precision_achieved < pol.precision);
  CHECK(r.confidence_halfwidth > 0.0);
  // the mean is the arithmetic mean of the consumed spans (the cumulative
  // clock rounds each delivered span by ~1 ulp, hence the tolerance)
  double sum = 0;
  for (int i = 0; i < r.reps_done; ++i) sum += spans[i];
  CHECK(r.mean_s == doctest::Approx(sum / r.reps_done).epsilon(1e-12));
  CHECK(r.elapsed_s == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("max_reps exhaustion") {
  MeasurementPolicy pol;
  pol.min_reps = 3;
  pol.max_reps = 6;
  // alternating fast/slow never reaches 2.5% precision
  MeasurementResult r = mean_using_ttest(no_op, scripted_clock({1.0, 2.0}), pol);
  CHECK(r.stop_reason == StopReason::MaxRepsExceeded);
  CHECK(r.reps_done == 6);
  CHECK(r.precision_achieved >= pol.precision);
}

TEST_CASE("max accumulated workload time trips the time stop") {
  MeasurementPolicy pol;
  pol.min_reps = 3;
  pol.max_reps = 50;
  pol.max_time_s = 3600.0;
  // noisy enough to never reach precision; 1500 s per repetition
  MeasurementResult r =
      mean_using_ttest(no_op, scripted_clock({1500.0, 500.0}), pol);
  CHECK(r.stop_reason == StopReason::MaxTimeExceeded);
  CHECK(r.elapsed_s > pol.max_time_s);
  CHECK(r.reps_done == 4);  // first check at rep 4: etime = 4000 > 3600
}

TEST_CASE("precision wins over the time check") {
  // constant samples of 5000 s: at the first check both precision (sd = 0)
  // and time (10000+ s) hold; the loop reports precision.
  MeasurementPolicy pol;
  pol.min_reps = 2;
  pol.max_reps = 50;
  pol.max_time_s = 3600.0;
  MeasurementResult r = mean_using_ttest(no_op, scripted_clock({5000.0}), pol);
  CHECK(r.stop_reason == StopReason::PrecisionReached);
  CHECK(r.reps_done == 3);
}

TEST_CASE("no checks happen at or below min_reps") {
  // constant samples would stop at the very first check; with min_reps = 8
  // that check happens at rep 9, never earlier
  MeasurementPolicy pol;
  pol.min_reps = 8;
  pol.max_reps = 20;
  MeasurementResult r = mean_using_ttest(no_op, scripted_clock({2.0}), pol);
  CHECK(r.reps_done == 9);
}

TEST_CASE("two-sided intervals are wider, so stopping is later or equal") {
  testsup::Rng rng(7);
  std::vector<double> spans;
  for (int i = 0; i < 400; ++i)
    spans.push_back(std::max(0.01, rng.normal(1.0, 0.25)));
  MeasurementPolicy pol;
  pol.min_reps = 5;
  pol.max_reps = 400;
  MeasurementResult one = mean_using_ttest(no_op, scripted_clock(spans), pol);
  pol.two_sided = true;
  MeasurementResult two = mean_using_ttest(no_op, scripted_clock(spans), pol);
  CHECK(two.reps_done >= one.reps_done);
}

TEST_CASE("scripted runs are bit-reproducible") {
  testsup::Rng rng(19);
  std::vector<double> spans;
  for (int i = 0; i < 100; ++i)
    spans.push_back(std::max(0.001, rng.normal(0.5, 0.1)));
  MeasurementPolicy pol;
  pol.min_reps = 4;
  pol.max_reps = 100;
  MeasurementResult a = mean_using_ttest(no_op, scripted_clock(spans), pol);
  MeasurementResult b = mean_using_ttest(no_op, scripted_clock(spans), pol);
  CHECK(a.reps_done == b.reps_done);
  CHECK(a.mean_s == b.mean_s);
  CHECK(a.confidence_halfwidth == b.confidence_halfwidth);
  CHECK(a.elapsed_s == b.elapsed_s);
}

TEST_CASE("workload failures carry completed repetition counts") {
  int calls = 0;
  auto flaky = [&] {
    // warm-up + 3 repetitions succeed, the 4th timed repetition throws
    if (++calls == 5) throw std::runtime_error("backend fault");
  };
  MeasurementPolicy pol;
  pol.min_reps = 2;
  pol.max_reps = 50;
  // high-variance spans so the loop does not stop before the fault
  try {
    mean_using_ttest(flaky, scripted_clock({1.0, 3.0}), pol);
    FAIL("expected WorkloadFailure");
  } catch (const WorkloadFailure& e) {
    CHECK(e.reps_completed() == 3);
    CHECK(std::string(e.what()).find("backend fault") != std::string::npos);
  }

  auto broken = []() { throw std::runtime_error("boom"); };
  try {
    mean_using_ttest(broken, scripted_clock({1.0}), pol);
    FAIL("expected WorkloadFailure");
  } catch (const WorkloadFailure& e) {
    CHECK(e.reps_completed() == 0);  // warm-up
  }
}

TEST_CASE("policy tiers by problem size") {
  auto check_tier = [](int n, int mn, int mx) {
    MeasurementPolicy p = policy_for_problem_size(n);
    CHECK(p.min_reps == mn);
    CHECK(p.max_reps == mx);
    CHECK(p.max_time_s == 3600.0);
    CHECK(p.confidence_level == 0.95);
    CHECK(p.precision == 0.025);
  };
  check_tier(16, 10000, 100000);  // small sizes share the first tier
  check_tier(1024, 10000, 100000);
  check_tier(1025, 100, 1000);
  check_tier(5120, 100, 1000);
  check_tier(5121, 5, 50);
  check_tier(64000, 5, 50);
  CHECK_THROWS_AS(policy_for_problem_size(0), DomainError);
}

TEST_CASE("policy validation") {
  MeasurementPolicy p;
  p.min_reps = 10;
  p.max_reps = 10;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.precision = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.confidence_level = 1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.min_reps = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.max_time_s = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("steady clock is monotone") {
  Clock c = steady_clock_seconds();
  double a = c();
  double b = c();
  CHECK(b >= a);
}

}  // TEST_SUITE
