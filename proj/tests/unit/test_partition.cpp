#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pfft/errors.hpp"
#include "pfft/part/partition.hpp"
#include "../support/test_support.hpp"

using namespace pfft;
using namespace pfft::part;
using fpm::SpeedFunction;
using fpm::SpeedPoint;
using fpm::SpeedCurve;

namespace {

// Speed function covering the plane y = n: constant speed at every x 1..n.
SpeedFunction flat_fn(int id, int n, double speed) {
  SpeedFunction fn(id);
  for (int x = 1; x <= n; ++x)
    fn.insert(SpeedPoint::from_speed(x, n, speed));
  return fn;
}

SpeedCurve curve_of(std::initializer_list<std::pair<int, double>> samples) {
  SpeedCurve c;
  c.axis = fpm::CurveAxis::FixedY;
  c.fixed = 64;
  c.samples = samples;
  return c;
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("worked two-group example") {
  // constant speeds 10 and 5 at n = 4: optimum is (3, 1) with makespan 6
  std::vector<SpeedFunction> sfs{flat_fn(0, 4, 10.0), flat_fn(1, 4, 5.0)};
  RowDistribution d = solve_heterogeneous(sfs, 4);
  CHECK(d.counts == std::vector<int>{3, 1});
  CHECK(d.objective_time_s == 6.0);  // exact: 2.5*3*4*2/10
}

TEST_CASE("predicted_time basics") {
  SpeedFunction fn = flat_fn(0, 4, 20.0);
  CHECK(predicted_time(fn, 3, 4) == 3.0);  // 2.5*3*4*2/20
  CHECK(predicted_time(fn, 0, 4) == 0.0);
  CHECK_THROWS_AS(predicted_time(fn, -1, 4), DomainError);
}

TEST_CASE("objective is recomputable from predicted_time") {
  testsup::Rng rng(123);
  for (int iter = 0; iter < 50; ++iter) {
    int p = rng.uniform_int(1, 4);
    int n = rng.uniform_int(2, 48);
    std::vector<SpeedFunction> sfs;
    for (int g = 0; g < p; ++g)
      sfs.push_back(testsup::random_plane_model(rng, n, g));
    RowDistribution d = solve_heterogeneous(sfs, n);
    int total = 0;
    double worst = 0.0;
    for (int g = 0; g < p; ++g) {
      total += d.counts[g];
      worst = std::max(worst, predicted_time(sfs[g], d.counts[g], n));
    }
    CHECK(total == n);
    CHECK(d.objective_time_s == worst);  // bitwise: same lookups, same math
  }
}

TEST_CASE("DP equals the brute-force oracle") {
  testsup::Rng rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    int p = rng.uniform_int(1, 4);
    int n = rng.uniform_int(2, 40);
    std::vector<SpeedFunction> sfs;
    for (int g = 0; g < p; ++g)
      sfs.push_back(testsup::random_plane_model(rng, n, g));
    RowDistribution dp = solve_heterogeneous(sfs, n);
    RowDistribution bf = brute_force_partition(sfs, n);
    CHECK(std::abs(dp.objective_time_s - bf.objective_time_s) <=
          1e-12 * std::max(1.0, bf.objective_time_s));
    // both tie-break lexicographically, so the witnesses agree too
    CHECK(dp.counts == bf.counts);
  }
}

TEST_CASE("homogeneity check boundary cases") {
  // worst spread 4.9% with epsilon 5% -> identical
  std::vector<SpeedCurve> close{curve_of({{1, 1000.0}, {2, 1000.0}}),
                                curve_of({{1, 1049.0}, {2, 1000.0}})};
  HomogeneityReport rep = homogeneity_check(close, 0.05);
  CHECK(rep.identical);
  CHECK(rep.worst_rdiff == doctest::Approx(0.049).epsilon(1e-12));
  CHECK(rep.worst_x == 1);

  // worst spread 5.1% -> distinct
  std::vector<SpeedCurve> apart{curve_of({{1, 1000.0}, {2, 1000.0}}),
                                curve_of({{1, 1051.0}, {2, 1000.0}})};
  rep = homogeneity_check(apart, 0.05);
  CHECK_FALSE(rep.identical);
  CHECK(rep.worst_rdiff == doctest::Approx(0.051).epsilon(1e-12));

  // exactly equal curves pass epsilon = 0
  std::vector<SpeedCurve> same{curve_of({{1, 10.0}}), curve_of({{1, 10.0}})};
  CHECK(homogeneity_check(same, 0.0).identical);

  // disjoint supports are an error
  std::vector<SpeedCurve> disjoint{curve_of({{1, 10.0}}), curve_of({{2, 10.0}})};
  CHECK_THROWS_AS(homogeneity_check(disjoint, 0.05), DomainError);
}

TEST_CASE("harmonic mean curve") {
  std::vector<SpeedCurve> curves{curve_of({{1, 50.0}, {2, 64.0}}),
                                 curve_of({{1, 100.0}, {2, 64.0}})};
  SpeedCurve avg = harmonic_mean_curve(curves);
  REQUIRE(avg.samples.size() == 2);
  CHECK(std::abs(avg.samples[0].second - 200.0 / 3.0) <= 1e-12);
  CHECK(avg.samples[1].second == 64.0);  // dyadic: exactly recovered
  CHECK(avg.fixed == curves[0].fixed);
}

TEST_CASE("partition routes by homogeneity") {
  // identical constant models -> homogeneous path, even split
  std::vector<SpeedFunction> same{flat_fn(0, 10, 40.0), flat_fn(1, 10, 40.0)};
  PartitionResult hom = partition(same, 10, 0.05);
  CHECK(hom.path == PartitionPath::Homogeneous);
  CHECK(hom.homogeneity.identical);
  CHECK(hom.dist.counts == std::vector<int>{5, 5});
  CHECK(std::string(to_string(hom.path)) == "homogeneous");

  // clearly different speeds -> heterogeneous path
  std::vector<SpeedFunction> diff{flat_fn(0, 4, 10.0), flat_fn(1, 4, 5.0)};
  PartitionResult het = partition(diff, 4, 0.05);
  CHECK(het.path == PartitionPath::Heterogeneous);
  CHECK_FALSE(het.homogeneity.identical);
  CHECK(het.dist.counts == std::vector<int>{3, 1});

  // near-equal speeds (2% spread) stay on the homogeneous path at eps 5%
  std::vector<SpeedFunction> close{flat_fn(0, 10, 100.0), flat_fn(1, 10, 102.0)};
  PartitionResult near = partition(close, 10, 0.05);
  CHECK(near.path == PartitionPath::Homogeneous);
  CHECK(near.homogeneity.worst_rdiff == doctest::Approx(0.02).epsilon(1e-9));
  // ... and on the heterogeneous path with a tighter epsilon
  CHECK(partition(close, 10, 0.01).path == PartitionPath::Heterogeneous);
}

TEST_CASE("homogeneous objective recomputes against the averaged model") {
  std::vector<SpeedFunction> close{flat_fn(0, 12, 100.0), flat_fn(1, 12, 102.0)};
  PartitionResult res = partition(close, 12, 0.05);
  REQUIRE(res.path == PartitionPath::Homogeneous);
  // rebuild the averaged function the same way partition does
  std::vector<SpeedCurve> curves{close[0].section_at_y(12),
                                 close[1].section_at_y(12)};
  SpeedCurve avg = harmonic_mean_curve(curves);
  SpeedFunction avg_fn(-1);
  for (auto& [x, s] : avg.samples)
    avg_fn.insert(SpeedPoint::from_speed(x, 12, s));
  double worst = 0.0;
  for (int c : res.dist.counts)
    worst = std::max(worst, predicted_time(avg_fn, c, 12));
  CHECK(res.dist.objective_time_s == worst);
}

TEST_CASE("ties resolve to the lexicographically smallest counts") {
  // speeds proportional to row count make every split time-equal: the times
  // are 2.5*d*4*2/ (64*d) = 20/64 * (d/d), all exactly 0.3125
  SpeedFunction fn(0);
  for (int d = 1; d <= 4; ++d)
    fn.insert(SpeedPoint::from_speed(d, 4, 64.0 * d));
  std::vector<SpeedFunction> sfs{fn, fn};
  RowDistribution d = solve_heterogeneous(sfs, 4);
  CHECK(d.counts == std::vector<int>{0, 4});
  CHECK(d.objective_time_s == 0.3125);

  RowDistribution strict = solve_heterogeneous(sfs, 4, /*allow_zero=*/false);
  CHECK(strict.counts == std::vector<int>{1, 3});

  RowDistribution bf = brute_force_partition(sfs, 4);
  CHECK(bf.counts == d.counts);
}

TEST_CASE("scaling every speed leaves the split unchanged") {
  testsup::Rng rng(5);
  for (int iter = 0; iter < 25; ++iter) {
    int p = rng.uniform_int(2, 4);
    int n = rng.uniform_int(4, 32);
    std::vector<SpeedFunction> sfs, scaled;
    for (int g = 0; g < p; ++g) {
      SpeedFunction fn = testsup::random_plane_model(rng, n, g);
      SpeedFunction fn4(g);
      for (const SpeedPoint& pt : fn.points())
        fn4.insert(SpeedPoint::from_speed(pt.x, pt.y, pt.speed * 4.0));
      sfs.push_back(fn);
      scaled.push_back(fn4);
    }
    RowDistribution a = solve_heterogeneous(sfs, n);
    RowDistribution b = solve_heterogeneous(scaled, n);
    // scaling by a power of two is exact, so the tie structure is identical
    CHECK(a.counts == b.counts);
    CHECK(b.objective_time_s == a.objective_time_s / 4.0);
  }
}

TEST_CASE("permuting groups permutes the work but not the makespan") {
  testsup::Rng rng(77);
  for (int iter = 0; iter < 25; ++iter) {
    int n = rng.uniform_int(4, 32);
    std::vector<SpeedFunction> sfs;
    for (int g = 0; g < 3; ++g)
      sfs.push_back(testsup::random_plane_model(rng, n, g));
    RowDistribution fwd = solve_heterogeneous(sfs, n);
    std::vector<SpeedFunction> rev(sfs.rbegin(), sfs.rend());
    RowDistribution bwd = solve_heterogeneous(rev, n);
    CHECK(fwd.objective_time_s == bwd.objective_time_s);
  }
}

TEST_CASE("strict positivity") {
  // plane at y=2 so that n=3 snaps down to a sampled plane
  std::vector<SpeedFunction> sfs{flat_fn(0, 2, 10.0), flat_fn(1, 2, 10.0),
                                 flat_fn(2, 2, 10.0)};
  CHECK_THROWS_AS(solve_heterogeneous(std::span(sfs.data(), 3), 2, false),
                  DomainError);
  RowDistribution d = solve_heterogeneous(std::span(sfs.data(), 3), 3, false);
  CHECK(d.counts == std::vector<int>{1, 1, 1});
}

TEST_CASE("solve_homogeneous equals heterogeneous with copies") {
  testsup::Rng rng(31);
  SpeedFunction fn = testsup::random_plane_model(rng, 20, 0);
  RowDistribution hom = solve_homogeneous(fn, 3, 20);
  std::vector<SpeedFunction> copies{fn, fn, fn};
  RowDistribution het = solve_heterogeneous(copies, 20);
  CHECK(hom.counts == het.counts);
  CHECK(hom.objective_time_s == het.objective_time_s);
}

TEST_CASE("brute force refuses oversized instances") {
  std::vector<SpeedFunction> sfs{flat_fn(0, 8, 10.0), flat_fn(1, 8, 10.0),
                                 flat_fn(2, 8, 10.0), flat_fn(3, 8, 10.0)};
  // the guard depends on n, not the sampled grid
  CHECK_THROWS_AS(brute_force_partition(sfs, 3000), DomainError);
}

TEST_CASE("partition domain errors") {
  std::vector<SpeedFunction> none;
  CHECK_THROWS_AS(partition(none, 8), DomainError);
  std::vector<SpeedFunction> one{flat_fn(0, 8, 10.0)};
  CHECK_THROWS_AS(partition(one, 1), DomainError);
  // model only covers y = 8; partitioning at n = 4 has nothing to snap to
  CHECK_THROWS_AS(partition(one, 4), NotFoundError);
}

TEST_CASE("speed_function_from_curve round trip") {
  SpeedCurve c = curve_of({{1, 10.0}, {4, 64.0}});
  SpeedFunction fn = speed_function_from_curve(c, 7);
  CHECK(fn.processor_id() == 7);
  REQUIRE(fn.size() == 2);
  CHECK(fn.find(4, 64)->speed == 64.0);
  SpeedCurve bad;
  bad.axis = fpm::CurveAxis::FixedX;
  bad.samples = {{2, 1.0}};
  CHECK_THROWS_AS(speed_function_from_curve(bad), DomainError);
}

}  // TEST_SUITE
