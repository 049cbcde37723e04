#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfft/dft/backend.hpp"
#include "pfft/errors.hpp"

namespace pfft::dft {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Iterative radix-2 decimation-in-time plan: bit-reversal permutation plus
// a twiddle table w^k = exp(-2*pi*i*k/length), k < length/2.
struct Pow2Plan {
  int length = 1;
  std::vector<int> bitrev;
  std::vector<cplx> twiddle;
};

Pow2Plan make_pow2_plan(int length) {
  Pow2Plan p;
  p.length = length;
  p.bitrev.resize(length);
  int bits = 0;
  while ((1 << bits) < length) ++bits;
  for (int i = 0; i < length; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b)
      if (i & (1 << b)) r |= 1 << (bits - 1 - b);
    p.bitrev[i] = r;
  }
  p.twiddle.resize(length / 2);
  for (int k = 0; k < length / 2; ++k)
    p.twiddle[k] = std::polar(1.0, -2.0 * kPi * k / length);
  return p;
}

void fft_pow2(const Pow2Plan& p, cplx* x) {
  const int n = p.length;
  for (int i = 0; i < n; ++i) {
    int j = p.bitrev[i];
    if (j > i) std::swap(x[i], x[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int base = 0; base < n; base += len)
      for (int k = 0; k < half; ++k) {
        cplx u = x[base + k];
        cplx v = x[base + k + half] * p.twiddle[k * step];
        x[base + k] = u + v;
        x[base + k + half] = u - v;
      }
  }
}

// Arbitrary length L via Bluestein: X[k] = c[k] * (a (*) b)[k] where
// a[j] = x[j]*c[j], b[j] = conj(c[j]), c[j] = exp(-i*pi*j^2/L), and the
// circular convolution runs over a power-of-two length m >= 2L-1. The chirp
// angle uses j^2 mod 2L in integer arithmetic so large j lose no precision.
struct Plan {
  int length = 1;
  bool pow2 = true;
  Pow2Plan base;            // the transform itself, or the conv sub-plan
  int m = 0;                // convolution length (Bluestein only)
  std::vector<cplx> chirp;  // c[j], j < length
  std::vector<cplx> bfft;   // forward FFT of the b sequence, length m
};

std::shared_ptr<const Plan> make_plan(int length) {
  auto plan = std::make_shared<Plan>();
  plan->length = length;
  if (is_pow2(length)) {
    plan->base = make_pow2_plan(length);
    return plan;
  }
  plan->pow2 = false;
  int m = 1;
  while (m < 2 * length - 1) m <<= 1;
  plan->m = m;
  plan->base = make_pow2_plan(m);
  plan->chirp.resize(length);
  const std::int64_t two_l = 2 * std::int64_t(length);
  for (std::int64_t j = 0; j < length; ++j)
    plan->chirp[j] = std::polar(1.0, -kPi * double((j * j) % two_l) / length);
  std::vector<cplx> b(m, cplx(0.0, 0.0));
  b[0] = std::conj(plan->chirp[0]);
  for (int j = 1; j < length; ++j)
    b[j] = b[m - j] = std::conj(plan->chirp[j]);
  fft_pow2(plan->base, b.data());
  plan->bfft = std::move(b);
  return plan;
}

void transform_one(const Plan& p, cplx* x, std::vector<cplx>& scratch) {
  if (p.pow2) {
    fft_pow2(p.base, x);
    return;
  }
  scratch.assign(p.m, cplx(0.0, 0.0));
  for (int j = 0; j < p.length; ++j) scratch[j] = x[j] * p.chirp[j];
  fft_pow2(p.base, scratch.data());
  for (int j = 0; j < p.m; ++j)
    scratch[j] = std::conj(scratch[j] * p.bfft[j]);
  fft_pow2(p.base, scratch.data());
  const double inv = 1.0 / p.m;
  for (int j = 0; j < p.length; ++j)
    x[j] = p.chirp[j] * std::conj(scratch[j]) * inv;
}

void validate_spec(const BatchSpec& spec) {
  if (spec.length < 1)
    throw DomainError("transform length must be >= 1, got " +
                      std::to_string(spec.length));
  if (spec.count < 0)
    throw DomainError("batch count must be >= 0, got " +
                      std::to_string(spec.count));
  if (spec.stride < 1)
    throw DomainError("stride must be >= 1, got " +
                      std::to_string(spec.stride));
  if (spec.distance < 0)
    throw DomainError("distance must be >= 0, got " +
                      std::to_string(spec.distance));
}

class BuiltinBackend final : public FftBackend {
 public:
  std::string name() const override { return "builtin"; }

  void forward(const BatchSpec& spec, cplx* data) override {
    validate_spec(spec);
    if (spec.count == 0) return;
    std::shared_ptr<const Plan> plan = plan_for(spec.length, spec.cache_plan);
    const std::size_t distance =
        spec.distance > 0 ? std::size_t(spec.distance)
                          : std::size_t(spec.length) * spec.stride;
    std::vector<cplx> scratch;
    std::vector<cplx> gathered;
    for (int t = 0; t < spec.count; ++t) {
      cplx* row = data + t * distance;
      if (spec.stride == 1) {
        transform_one(*plan, row, scratch);
        continue;
      }
      gathered.resize(spec.length);
      for (int j = 0; j < spec.length; ++j)
        gathered[j] = row[std::size_t(j) * spec.stride];
      transform_one(*plan, gathered.data(), scratch);
      for (int j = 0; j < spec.length; ++j)
        row[std::size_t(j) * spec.stride] = gathered[j];
    }
  }

 private:
  std::shared_ptr<const Plan> plan_for(int length, bool cache) {
    if (!cache) return make_plan(length);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(length);
    if (it != cache_.end()) return it->second;
    auto plan = make_plan(length);
    cache_.emplace(length, plan);
    return plan;
  }

  std::mutex mu_;
  std::unordered_map<int, std::shared_ptr<const Plan>> cache_;
};

}  // namespace

std::unique_ptr<FftBackend> make_builtin_backend() {
  return std::make_unique<BuiltinBackend>();
}

}  // namespace pfft::dft
