#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include <fftw3.h>

#include "pfft/dft/backend.hpp"
#include "pfft/errors.hpp"

namespace pfft::dft {

namespace {

// FFTW guarantees thread safety only for fftw_execute*; planning and
// destruction must be globally serialized, including across backend
// instances.
std::mutex& plan_mutex() {
  static std::mutex mu;
  return mu;
}

#ifdef PFFT_HAVE_FFTW_THREADS
std::once_flag g_threads_once;
#endif

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

class FftwBackend final : public FftBackend {
 public:
  FftwBackend() {
#ifdef PFFT_HAVE_FFTW_THREADS
    std::call_once(g_threads_once, [] { fftw_init_threads(); });
#endif
  }

  ~FftwBackend() override {
    std::lock_guard<std::mutex> lock(plan_mutex());
    for (auto& [key, plan] : cache_) fftw_destroy_plan(plan);
  }

  std::string name() const override { return "fftw"; }

  void forward(const BatchSpec& spec, cplx* data) override {
    validate_spec(spec);
    if (spec.count == 0) return;
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    if (!spec.cache_plan) {
      // Deliberately uncached: callers timing this call are charged for
      // plan construction and destruction, matching a plan/execute/destroy
      // usage pattern.
      fftw_plan plan;
      {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = create_plan(spec, ptr);
      }
      fftw_execute(plan);
      std::lock_guard<std::mutex> lock(plan_mutex());
      fftw_destroy_plan(plan);
      return;
    }
    fftw_plan plan = cached_plan(spec, ptr);
    fftw_execute_dft(plan, ptr, ptr);
  }

 private:
  using Key = std::tuple<int, int, int, int, int>;

  static Key key_of(const BatchSpec& s) {
    return {s.length, s.count, s.stride, s.distance, s.workers};
  }

  // Plans use FFTW_UNALIGNED so they stay valid for any array handed to
  // fftw_execute_dft later, and FFTW_ESTIMATE so the array contents are
  // never touched during planning.
  static fftw_plan create_plan(const BatchSpec& s, fftw_complex* ptr) {
#ifdef PFFT_HAVE_FFTW_THREADS
    fftw_plan_with_nthreads(s.workers > 0 ? s.workers : 1);
#endif
    int length = s.length;
    const int dist =
        s.distance > 0 ? s.distance : s.length * s.stride;
    fftw_plan plan = fftw_plan_many_dft(
        1, &length, s.count, ptr, nullptr, s.stride, dist, ptr, nullptr,
        s.stride, dist, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("fftw_plan_many_dft returned no plan");
    return plan;
  }

  fftw_plan cached_plan(const BatchSpec& s, fftw_complex* ptr) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto it = cache_.find(key_of(s));
    if (it != cache_.end()) return it->second;
    fftw_plan plan = create_plan(s, ptr);
    cache_.emplace(key_of(s), plan);
    return plan;
  }

  std::map<Key, fftw_plan> cache_;
};

}  // namespace

std::unique_ptr<FftBackend> make_fftw_backend() {
  return std::make_unique<FftwBackend>();
}

}  // namespace pfft::dft
