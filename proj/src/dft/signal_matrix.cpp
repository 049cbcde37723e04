#include "pfft/dft/signal_matrix.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pfft/errors.hpp"

namespace pfft::dft {

SignalMatrix::SignalMatrix(int n, int row_stride)
    : n_(n), row_stride_(row_stride == 0 ? n : row_stride) {
  if (n < 1) throw DomainError("matrix side must be >= 1, got " + std::to_string(n));
  if (row_stride_ < n)
    throw DomainError("row_stride " + std::to_string(row_stride_) +
                      " is smaller than n " + std::to_string(n));
  data_.assign(std::size_t(n_) * row_stride_, cplx(0.0, 0.0));
}

SignalMatrix random_signal_matrix(int n, std::uint64_t seed) {
  SignalMatrix m(n);
  std::mt19937_64 gen(seed);
  auto uniform_pm1 = [&gen] {
    // top 53 bits -> [0,1), affinely mapped; avoids the distribution
    // classes whose output is implementation-defined
    return double(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re = uniform_pm1();
      double im = uniform_pm1();
      m.at(i, j) = cplx(re, im);
    }
  return m;
}

double relative_rms_error(const SignalMatrix& a, const SignalMatrix& b) {
  if (a.n() != b.n())
    throw DomainError("matrix sides differ: " + std::to_string(a.n()) +
                      " vs " + std::to_string(b.n()));
  double num = 0, den = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      cplx d = a.at(i, j) - b.at(i, j);
      num += std::norm(d);
      den += std::norm(b.at(i, j));
    }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace pfft::dft
