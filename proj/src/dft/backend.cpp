#include <memory>
#include <string>

#include "pfft/dft/backend.hpp"
#include "pfft/errors.hpp"

namespace pfft::dft {

bool fftw_available() noexcept {
#ifdef PFFT_HAVE_FFTW
  return true;
#else
  return false;
#endif
}

#ifndef PFFT_HAVE_FFTW
std::unique_ptr<FftBackend> make_fftw_backend() {
  throw Error("this build does not include the fftw backend");
}
#endif

std::unique_ptr<FftBackend> make_backend(const std::string& name) {
  if (name == "builtin") return make_builtin_backend();
  if (name == "fftw") return make_fftw_backend();
  throw DomainError("unknown backend '" + name +
                    "' (expected builtin or fftw)");
}

}  // namespace pfft::dft
