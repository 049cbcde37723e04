#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pfft::dft {

using cplx = std::complex<double>;

// Square complex signal matrix, row-major, interleaved re/im doubles.
// row_stride is the physical row length in complex elements; it exceeds n
// only inside padded execution paths, never on matrices handed to users.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  explicit SignalMatrix(int n, int row_stride = 0);  // 0 means stride == n

  int n() const noexcept { return n_; }
  int row_stride() const noexcept { return row_stride_; }
  std::size_t size() const noexcept { return data_.size(); }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  cplx* row(int i) noexcept { return data_.data() + std::size_t(i) * row_stride_; }
  const cplx* row(int i) const noexcept {
    return data_.data() + std::size_t(i) * row_stride_;
  }
  cplx& at(int i, int j) noexcept { return row(i)[j]; }
  const cplx& at(int i, int j) const noexcept { return row(i)[j]; }

  // Set when a pipeline aborts mid-flight: the element values are then
  // unspecified and must not be interpreted as a transform result.
  bool indeterminate() const noexcept { return indeterminate_; }
  void mark_indeterminate() noexcept { indeterminate_ = true; }

  bool operator==(const SignalMatrix& o) const = default;

 private:
  int n_ = 0;
  int row_stride_ = 0;
  bool indeterminate_ = false;
  std::vector<cplx> data_;
};

// Deterministic test/benchmark input: uniform re and im in [-1, 1], fully
// reproducible from the seed on any platform (mt19937_64 plus a fixed
// 53-bit mapping).
SignalMatrix random_signal_matrix(int n, std::uint64_t seed);

// || a - b ||_2 / || b ||_2 over the logical n x n region (the norm of the
// difference alone when b is all-zero). Sides must match.
double relative_rms_error(const SignalMatrix& a, const SignalMatrix& b);

// Binary format: 8-byte magic "PFFTMAT1", then n and row_stride as unsigned
// 32-bit little-endian, then n*row_stride complex elements as little-endian
// doubles (re, im). Text format: first line "n row_stride", then one line
// per row of whitespace-separated "re im" pairs, full precision.
void save_matrix(const SignalMatrix& m, const std::string& path);
SignalMatrix load_matrix(const std::string& path);
void save_matrix_text(const SignalMatrix& m, std::ostream& out);
SignalMatrix load_matrix_text(std::istream& in);

// Text when the path ends in ".txt", binary otherwise.
void save_matrix_auto(const SignalMatrix& m, const std::string& path);
SignalMatrix load_matrix_auto(const std::string& path);

}  // namespace pfft::dft
