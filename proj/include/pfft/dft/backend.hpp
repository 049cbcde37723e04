#pragma once

#include <memory>
#include <string>

#include "pfft/dft/signal_matrix.hpp"

namespace pfft::dft {

// One batched in-place forward transform request: `count` independent
// length-`length` 1D transforms over interleaved complex doubles. Transform
// t starts at data + t*distance and its elements sit `stride` apart.
struct BatchSpec {
  int length = 0;
  int count = 1;
  int stride = 1;
  int distance = 0;        // defaults to length when 0
  int workers = 1;         // intra-transform parallelism hint
  bool cache_plan = true;  // false: plan fresh and discard, so callers timing
                           // the call see planning cost too
};

// Batched 1D FFT engine. Implementations must accept arbitrary positive
// lengths and be safe to call concurrently from several threads, provided
// the data regions are disjoint.
class FftBackend {
 public:
  virtual ~FftBackend() = default;
  virtual std::string name() const = 0;
  // In-place forward DFT of every transform described by spec.
  virtual void forward(const BatchSpec& spec, cplx* data) = 0;
};

// Self-contained backend: iterative radix-2 for powers of two, Bluestein's
// algorithm otherwise. Output bits depend only on the input values and the
// length, never on batching or the workers hint, which makes scheduling
// variants bit-comparable in tests.
std::unique_ptr<FftBackend> make_builtin_backend();

// FFTW3-backed engine (plans serialized globally, execution concurrent).
// Throws pfft::Error when this build does not link FFTW.
std::unique_ptr<FftBackend> make_fftw_backend();
bool fftw_available() noexcept;

// name: "builtin" or "fftw".
std::unique_ptr<FftBackend> make_backend(const std::string& name);

}  // namespace pfft::dft
