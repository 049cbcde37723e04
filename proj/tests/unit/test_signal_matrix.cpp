#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pfft/dft/signal_matrix.hpp"
#include "pfft/errors.hpp"

using namespace pfft;
using namespace pfft::dft;

namespace {

// unique temp path per test; removed on scope exit
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() /
            ("pfft_test_" + name)).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("signal_matrix") {

TEST_CASE("construction and layout") {
  SignalMatrix m(3);
  CHECK(m.n() == 3);
  CHECK(m.row_stride() == 3);
  CHECK(m.size() == 9);
  CHECK(!m.indeterminate());
  m.at(1, 2) = cplx(4.0, -1.0);
  CHECK(m.row(1)[2] == cplx(4.0, -1.0));
  CHECK(m.data()[1 * 3 + 2] == cplx(4.0, -1.0));

  SignalMatrix padded(3, 5);
  CHECK(padded.row_stride() == 5);
  CHECK(padded.size() == 15);

  CHECK_THROWS_AS(SignalMatrix(0), DomainError);
  CHECK_THROWS_AS(SignalMatrix(4, 2), DomainError);
}

TEST_CASE("random matrices are reproducible and in range") {
  SignalMatrix a = random_signal_matrix(16, 42);
  SignalMatrix b = random_signal_matrix(16, 42);
  CHECK(a == b);  // bitwise: same seed, same bits
  SignalMatrix c = random_signal_matrix(16, 43);
  CHECK(a != c);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      CHECK(a.at(i, j).real() >= -1.0);
      CHECK(a.at(i, j).real() <= 1.0);
      CHECK(a.at(i, j).imag() >= -1.0);
      CHECK(a.at(i, j).imag() <= 1.0);
    }
}

TEST_CASE("relative rms error") {
  SignalMatrix a = random_signal_matrix(8, 1);
  CHECK(relative_rms_error(a, a) == 0.0);
  SignalMatrix b = a;
  b.at(0, 0) += cplx(1e-7, 0.0);
  CHECK(relative_rms_error(a, b) > 0.0);
  CHECK(relative_rms_error(a, b) < 1e-6);
  SignalMatrix z(8);
  CHECK(relative_rms_error(z, z) == 0.0);  // zero baseline falls back to abs
  SignalMatrix y(4);
  CHECK_THROWS_AS(relative_rms_error(a, y), DomainError);
}

TEST_CASE("binary round trip is bit exact") {
  TempFile f("mat.bin");
  SignalMatrix m = random_signal_matrix(7, 99);
  m.at(2, 3) = cplx(1.0 / 3.0, -1e-300);  // awkward values survive
  save_matrix(m, f.path);
  SignalMatrix back = load_matrix(f.path);
  CHECK(back.n() == 7);
  CHECK(back.row_stride() == 7);
  CHECK(back == m);
}

TEST_CASE("text round trip is bit exact") {
  SignalMatrix m = random_signal_matrix(5, 7);
  m.at(0, 1) = cplx(1.0 / 3.0, 2.0 / 7.0);
  std::stringstream ss;
  save_matrix_text(m, ss);
  SignalMatrix back = load_matrix_text(ss);
  CHECK(back == m);  // %.17g is enough for exact double round trips
}

TEST_CASE("auto format dispatches on extension") {
  TempFile t("mat.txt");
  TempFile b("mat2.bin");
  SignalMatrix m = random_signal_matrix(4, 5);
  save_matrix_auto(m, t.path);
  save_matrix_auto(m, b.path);
  CHECK(load_matrix_auto(t.path) == m);
  CHECK(load_matrix_auto(b.path) == m);
  // the text file is human readable, the binary one is not
  std::ifstream txt(t.path);
  int n = 0;
  txt >> n;
  CHECK(n == 4);
}

TEST_CASE("binary loader rejects garbage") {
  TempFile f("mat_bad.bin");
  {
    std::ofstream out(f.path, std::ios::binary);
    out << "definitely not a matrix";
  }
  CHECK_THROWS_AS(load_matrix(f.path), DomainError);
  CHECK_THROWS_AS(load_matrix("/nonexistent/path/m.bin"), Error);
}

TEST_CASE("text loader rejects short data") {
  std::stringstream ss("3 3\n1 2 3 4");
  CHECK_THROWS_AS(load_matrix_text(ss), DomainError);
  std::stringstream bad_header("0 0\n");
  CHECK_THROWS_AS(load_matrix_text(bad_header), DomainError);
}

}  // TEST_SUITE
