#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pfft/fpm/speed_model.hpp"

// Helpers shared by the unit and acceptance suites. Everything here is
// deliberately independent of the library's numerics: oracles re-derive
// results from first principles so agreement is meaningful.
namespace testsup {

// Deterministic, platform-independent RNG (splitmix64 core).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform01();                      // [0, 1)
  double uniform(double a, double b);      // [a, b)
  int uniform_int(int a, int b);           // inclusive
  double normal(double mu, double sigma);  // Box-Muller

 private:
  std::uint64_t state_;
};

// Student-t quantile by adaptive Simpson integration of the density plus
// bisection. Shares no code with the library's incomplete-beta route.
double t_cdf_by_quadrature(double t, int dof);
double t_quantile_by_quadrature(double p, int dof);

// Random speed function whose sampled plane covers y = n: x values are a
// random ascending subset of 1..n, speeds uniform in [1, 100] with
// occasional sharp dips so the min-max optimum is nontrivial.
pfft::fpm::SpeedFunction random_plane_model(Rng& rng, int n, int processor_id);

// Random model for pad-rule checks: sampled y values both at/below and above
// the base length n, a shared x grid, speeds in [1, 100] with dips.
pfft::fpm::SpeedFunction random_pad_model(Rng& rng, int n, int processor_id);

// Textbook O(L^2) DFT of one row, forward sign convention
// X[k] = sum_j x[j] * exp(-2*pi*i*j*k / L).
std::vector<std::complex<double>> naive_dft_1d(
    const std::vector<std::complex<double>>& x);

}  // namespace testsup
