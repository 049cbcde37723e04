#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "pfft/dft/signal_matrix.hpp"
#include "pfft/errors.hpp"

namespace pfft::dft {

namespace {

constexpr char kMagic[8] = {'P', 'F', 'F', 'T', 'M', 'A', 'T', '1'};

static_assert(std::endian::native == std::endian::little,
              "matrix files are little-endian; add byte swapping before "
              "building on a big-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.write(buf, 4);
}

std::uint32_t get_u32(std::istream& in) {
  char buf[4];
  in.read(buf, 4);
  std::uint32_t v;
  std::memcpy(&v, buf, 4);
  return v;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void save_matrix(const SignalMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, std::uint32_t(m.n()));
  put_u32(out, std::uint32_t(m.row_stride()));
  out.write(reinterpret_cast<const char*>(m.data()),
            std::streamsize(m.size() * sizeof(cplx)));
  if (!out) throw Error("short write to " + path);
}

SignalMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw DomainError(path + ": not a matrix file (bad magic)");
  std::uint32_t n = get_u32(in);
  std::uint32_t stride = get_u32(in);
  if (!in || n < 1 || stride < n)
    throw DomainError(path + ": corrupt matrix header");
  SignalMatrix m(static_cast<int>(n), static_cast<int>(stride));
  in.read(reinterpret_cast<char*>(m.data()),
          std::streamsize(m.size() * sizeof(cplx)));
  if (!in) throw DomainError(path + ": truncated matrix data");
  return m;
}

void save_matrix_text(const SignalMatrix& m, std::ostream& out) {
  out << m.n() << ' ' << m.row_stride() << '\n';
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.row_stride(); ++j) {
      if (j) out << ' ';
      out << fmt_double(m.at(i, j).real()) << ' '
          << fmt_double(m.at(i, j).imag());
    }
    out << '\n';
  }
}

SignalMatrix load_matrix_text(std::istream& in) {
  int n = 0, stride = 0;
  if (!(in >> n >> stride) || n < 1 || stride < n)
    throw DomainError("text matrix: bad header line");
  SignalMatrix m(n, stride);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < stride; ++j) {
      double re, im;
      if (!(in >> re >> im))
        throw DomainError("text matrix: short data at row " +
                          std::to_string(i));
      m.at(i, j) = cplx(re, im);
    }
  return m;
}

namespace {
bool is_text_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0;
}
}  // namespace

void save_matrix_auto(const SignalMatrix& m, const std::string& path) {
  if (!is_text_path(path)) return save_matrix(m, path);
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_matrix_text(m, out);
  if (!out) throw Error("short write to " + path);
}

SignalMatrix load_matrix_auto(const std::string& path) {
  if (!is_text_path(path)) return load_matrix(path);
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_matrix_text(in);
}

}  // namespace pfft::dft
