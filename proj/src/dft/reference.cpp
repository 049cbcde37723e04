#include "pfft/dft/reference.hpp"

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "pfft/errors.hpp"

namespace pfft::dft {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cplx> roots_of_unity(int length) {
  std::vector<cplx> w(length);
  for (int k = 0; k < length; ++k)
    w[k] = std::polar(1.0, -2.0 * kPi * k / length);
  return w;
}

}  // namespace

SignalMatrix dft2d_naive(const SignalMatrix& m) {
  const int n = m.n();
  if (n > 256)
    throw DomainError("dft2d_naive is an oracle; refusing n=" +
                      std::to_string(n) + " (guard: 256)");
  if (m.row_stride() != n)
    throw DomainError("dft2d_naive requires row_stride == n");
  const std::vector<cplx> w = roots_of_unity(n);
  SignalMatrix out(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cplx acc(0.0, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc += m.at(i, j) * w[(k * i + l * j) % n];
      out.at(k, l) = acc;
    }
  return out;
}

SignalMatrix dft2d_padded_reference(const SignalMatrix& m,
                                    const ExecutionPlan& plan) {
  plan.validate();
  const int n = m.n();
  if (n != plan.n)
    throw DomainError("plan is for n=" + std::to_string(plan.n) +
                      " but the matrix has n=" + std::to_string(m.n()));
  if (m.row_stride() != n)
    throw DomainError("padded reference requires row_stride == n");
  if (n > 64)
    throw DomainError("padded reference is an oracle; refusing n=" +
                      std::to_string(n) + " (guard: 64)");
  for (const PlanGroup& g : plan.groups)
    if (g.padded_length > 4096)
      throw DomainError("padded reference refuses padded length " +
                        std::to_string(g.padded_length) + " (guard: 4096)");

  SignalMatrix cur = m;
  // One padded row pass: each group's rows, zero-extended to its padded
  // length, transformed by the defining sum at that length, truncated to
  // the first n outputs.
  auto padded_pass = [&] {
    SignalMatrix next(n);
    for (const PlanGroup& g : plan.groups) {
      const int len = g.padded_length;
      const std::vector<cplx> w = roots_of_unity(len);
      for (int r = g.row_start; r < g.row_start + g.row_count; ++r)
        for (int k = 0; k < n; ++k) {
          cplx acc(0.0, 0.0);
          for (int j = 0; j < n; ++j)  // columns >= n are zero
            acc += cur.at(r, j) * w[int(std::int64_t(j) * k % len)];
          next.at(r, k) = acc;
        }
    }
    cur = next;
  };
  auto transpose_naive = [&] {
    SignalMatrix next(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) next.at(j, i) = cur.at(i, j);
    cur = next;
  };

  padded_pass();
  transpose_naive();
  padded_pass();
  transpose_naive();
  return cur;
}

}  // namespace pfft::dft
