#include "pfft/dft/engine.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pfft/errors.hpp"

namespace pfft::dft {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Sequential: return "seq";
    case Variant::LB: return "lb";
    case Variant::FPM: return "fpm";
    case Variant::FPM_PAD: return "fpm-pad";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  if (name == "seq" || name == "sequential") return Variant::Sequential;
  if (name == "lb") return Variant::LB;
  if (name == "fpm") return Variant::FPM;
  if (name == "fpm-pad" || name == "fpm_pad") return Variant::FPM_PAD;
  throw DomainError("unknown variant '" + name +
                    "' (expected seq, lb, fpm, or fpm-pad)");
}

void ExecutionPlan::validate() const {
  if (n < 1) throw DomainError("plan n must be >= 1, got " + std::to_string(n));
  if (block_size < 1)
    throw DomainError("block_size must be >= 1, got " +
                      std::to_string(block_size));
  if (groups.empty()) throw DomainError("plan has no groups");
  if (variant == Variant::Sequential && groups.size() != 1)
    throw DomainError("a sequential plan must have exactly one group");
  int next_row = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const PlanGroup& g = groups[i];
    if (g.workers < 1)
      throw DomainError("group " + std::to_string(i) + ": workers must be >= 1");
    if (g.row_count < 0)
      throw DomainError("group " + std::to_string(i) + ": negative row count");
    if (g.row_start != next_row)
      throw DomainError("group " + std::to_string(i) +
                        ": row ranges must be contiguous and ordered (expected "
                        "start " + std::to_string(next_row) + ", got " +
                        std::to_string(g.row_start) + ")");
    next_row += g.row_count;
    if (variant == Variant::FPM_PAD) {
      if (g.padded_length < n)
        throw DomainError("group " + std::to_string(i) +
                          ": padded length " + std::to_string(g.padded_length) +
                          " is below n " + std::to_string(n));
    } else if (g.padded_length != n) {
      throw DomainError("group " + std::to_string(i) +
                        ": only fpm-pad plans may pad");
    }
    if (variant == Variant::LB) {
      // every share within one row of the even split
      long lo = long(n) / long(groups.size());
      long hi = lo + (n % long(groups.size()) ? 1 : 0);
      if (g.row_count < lo || g.row_count > hi)
        throw DomainError("group " + std::to_string(i) +
                          ": row count " + std::to_string(g.row_count) +
                          " is not load-balanced for n=" + std::to_string(n));
    }
  }
  if (next_row != n)
    throw DomainError("groups cover " + std::to_string(next_row) +
                      " rows, expected " + std::to_string(n));
}

ExecutionPlan make_sequential_plan(int n, int workers) {
  ExecutionPlan plan;
  plan.n = n;
  plan.variant = Variant::Sequential;
  plan.groups.push_back({0, workers, 0, n, n});
  plan.validate();
  return plan;
}

ExecutionPlan make_lb_plan(int n, int p, int workers) {
  if (p < 1) throw DomainError("group count must be >= 1, got " + std::to_string(p));
  ExecutionPlan plan;
  plan.n = n;
  plan.variant = Variant::LB;
  int base = n / p, rem = n % p, row = 0;
  for (int g = 0; g < p; ++g) {
    int d = base + (g < rem ? 1 : 0);
    plan.groups.push_back({g, workers, row, d, n});
    row += d;
  }
  plan.validate();
  return plan;
}

ExecutionPlan make_fpm_plan(int n, const part::RowDistribution& dist,
                            int workers) {
  if (dist.counts.empty()) throw DomainError("empty row distribution");
  ExecutionPlan plan;
  plan.n = n;
  plan.variant = Variant::FPM;
  int row = 0;
  for (std::size_t g = 0; g < dist.counts.size(); ++g) {
    plan.groups.push_back({int(g), workers, row, dist.counts[g], n});
    row += dist.counts[g];
  }
  plan.validate();
  return plan;
}

ExecutionPlan make_fpm_pad_plan(int n, const part::RowDistribution& dist,
                                std::span<const pad::PadDecision> pads,
                                int workers) {
  if (dist.counts.size() != pads.size())
    throw DomainError("distribution has " + std::to_string(dist.counts.size()) +
                      " groups but " + std::to_string(pads.size()) +
                      " pad decisions");
  ExecutionPlan plan;
  plan.n = n;
  plan.variant = Variant::FPM_PAD;
  int row = 0;
  for (std::size_t g = 0; g < dist.counts.size(); ++g) {
    if (pads[g].rows != dist.counts[g] || pads[g].base_length != n)
      throw DomainError("pad decision " + std::to_string(g) +
                        " was made for a different distribution");
    plan.groups.push_back({int(g), workers, row, dist.counts[g],
                           pads[g].padded_length});
    row += dist.counts[g];
  }
  plan.validate();
  return plan;
}

void rows_fft_batch(FftBackend& backend, SignalMatrix& m, int row_start,
                    int row_count, int length_s, int workers,
                    bool cache_plan) {
  if (row_start < 0 || row_count < 0 || row_start + row_count > m.n())
    throw DomainError("row range [" + std::to_string(row_start) + ", " +
                      std::to_string(row_start + row_count) +
                      ") is outside the matrix");
  if (length_s < 1 || length_s > m.row_stride())
    throw DomainError("transform length " + std::to_string(length_s) +
                      " does not fit the row stride " +
                      std::to_string(m.row_stride()));
  if (row_count == 0) return;
  BatchSpec spec;
  spec.length = length_s;
  spec.count = row_count;
  spec.stride = 1;
  spec.distance = m.row_stride();
  spec.workers = workers;
  spec.cache_plan = cache_plan;
  try {
    backend.forward(spec, m.row(row_start));
  } catch (const std::exception& e) {
    throw EngineError("row FFT batch over rows [" + std::to_string(row_start) +
                      ", " + std::to_string(row_start + row_count) +
                      ") failed: " + e.what());
  }
}

namespace {

// Swaps tile (ti, tj) with its mirror; diagonal tiles swap their own upper
// triangle. Tiles are disjoint, so workers can process them without locks
// as long as each (ti, tj) pair is handled exactly once.
void transpose_tile(SignalMatrix& m, int ti, int tj, int block) {
  const int n = m.n();
  const int ph = std::min(n - ti, block);
  if (ti == tj) {
    for (int p = 0; p < ph; ++p)
      for (int q = p + 1; q < ph; ++q)
        std::swap(m.at(ti + p, ti + q), m.at(ti + q, ti + p));
    return;
  }
  const int qh = std::min(n - tj, block);
  for (int p = 0; p < ph; ++p)
    for (int q = 0; q < qh; ++q)
      std::swap(m.at(ti + p, tj + q), m.at(tj + q, ti + p));
}

// Upper-triangle tile walk shared by the serial entry point and the
// engine's workers: worker w takes tiles w, w+stride, w+2*stride, ...
void transpose_tiles_stride(SignalMatrix& m, int block, int worker,
                            int stride) {
  const int n = m.n();
  long index = 0;
  for (int ti = 0; ti < n; ti += block)
    for (int tj = ti; tj < n; tj += block, ++index)
      if (index % stride == worker) transpose_tile(m, ti, tj, block);
}

}  // namespace

void transpose_blocked(SignalMatrix& m, int block_size) {
  if (block_size < 1)
    throw DomainError("block_size must be >= 1, got " +
                      std::to_string(block_size));
  if (m.row_stride() != m.n())
    throw DomainError("transpose requires row_stride == n");
  transpose_tiles_stride(m, block_size, 0, 1);
}

std::size_t pad_workspace_size(const ExecutionPlan& plan) {
  std::size_t total = 0;
  for (const PlanGroup& g : plan.groups)
    if (g.padded_length > plan.n)
      total += std::size_t(g.row_count) * g.padded_length;
  return total;
}

namespace detail {

void pad_rows_into(const SignalMatrix& m, int row_start, int row_count,
                   int padded_length, cplx* dest) {
  const int n = m.n();
  for (int r = 0; r < row_count; ++r) {
    cplx* out = dest + std::size_t(r) * padded_length;
    std::memcpy(out, m.row(row_start + r), std::size_t(n) * sizeof(cplx));
    std::fill(out + n, out + padded_length, cplx(0.0, 0.0));
  }
}

}  // namespace detail

namespace {

void copy_back_rows(SignalMatrix& m, int row_start, int row_count,
                    int padded_length, const cplx* src) {
  const int n = m.n();
  for (int r = 0; r < row_count; ++r)
    std::memcpy(m.row(row_start + r), src + std::size_t(r) * padded_length,
                std::size_t(n) * sizeof(cplx));
}

// Four-step pipeline over p = plan.groups.size() threads: concurrent row
// passes and transposes separated by barriers. ws_offsets[i] locates group
// i's workspace slice (only meaningful when its padded_length > n). On the
// first failure remaining steps are skipped — every thread still reaches
// every barrier — and the error is rethrown after join.
void run_pipeline(const ExecutionPlan& plan, SignalMatrix& m,
                  FftBackend& backend, std::span<cplx> workspace,
                  const std::vector<std::size_t>& ws_offsets) {
  const int p = int(plan.groups.size());
  std::barrier bar(p);
  std::atomic<bool> failed{false};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto record_failure = [&](std::exception_ptr e) {
    {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!first_error) first_error = e;
    }
    failed.store(true, std::memory_order_release);
  };

  auto row_pass = [&](int idx) {
    if (failed.load(std::memory_order_acquire)) return;
    const PlanGroup& g = plan.groups[idx];
    try {
      if (g.padded_length > plan.n) {
        if (g.row_count == 0) return;
        cplx* slice = workspace.data() + ws_offsets[idx];
        detail::pad_rows_into(m, g.row_start, g.row_count, g.padded_length,
                              slice);
        BatchSpec spec;
        spec.length = g.padded_length;
        spec.count = g.row_count;
        spec.stride = 1;
        spec.distance = g.padded_length;
        spec.workers = g.workers;
        backend.forward(spec, slice);
        copy_back_rows(m, g.row_start, g.row_count, g.padded_length, slice);
      } else {
        rows_fft_batch(backend, m, g.row_start, g.row_count, plan.n,
                       g.workers);
      }
    } catch (...) {
      record_failure(std::current_exception());
    }
  };

  auto transpose_pass = [&](int idx) {
    if (failed.load(std::memory_order_acquire)) return;
    try {
      transpose_tiles_stride(m, plan.block_size, idx, p);
    } catch (...) {
      record_failure(std::current_exception());
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(p);
    for (int i = 0; i < p; ++i)
      threads.emplace_back([&, i] {
        row_pass(i);
        bar.arrive_and_wait();
        transpose_pass(i);
        bar.arrive_and_wait();
        row_pass(i);
        bar.arrive_and_wait();
        transpose_pass(i);
      });
  }

  if (first_error) {
    m.mark_indeterminate();
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw EngineError(std::string("pipeline aborted; matrix contents are "
                                    "indeterminate: ") + e.what());
    }
  }
}

}  // namespace

void execute(const ExecutionPlan& plan, SignalMatrix& m, FftBackend& backend) {
  plan.validate();
  if (m.n() != plan.n)
    throw DomainError("plan is for n=" + std::to_string(plan.n) +
                      " but the matrix has n=" + std::to_string(m.n()));
  if (plan.variant == Variant::FPM_PAD) {
    std::vector<cplx> workspace(pad_workspace_size(plan));
    execute_fpm_pad(plan, m, backend, workspace);
    return;
  }
  if (m.row_stride() != m.n())
    throw DomainError("non-padded variants require row_stride == n");
  run_pipeline(plan, m, backend, {},
               std::vector<std::size_t>(plan.groups.size(), 0));
}

void execute_fpm_pad(const ExecutionPlan& plan, SignalMatrix& m,
                     FftBackend& backend, std::span<cplx> workspace) {
  plan.validate();
  if (plan.variant != Variant::FPM_PAD)
    throw DomainError("execute_fpm_pad needs an fpm-pad plan");
  if (m.n() != plan.n)
    throw DomainError("plan is for n=" + std::to_string(plan.n) +
                      " but the matrix has n=" + std::to_string(m.n()));
  if (m.row_stride() != m.n())
    throw DomainError("the padded pipeline keeps the matrix at "
                      "row_stride == n; padding lives in the workspace");
  const std::size_t required = pad_workspace_size(plan);
  if (workspace.size() < required)
    throw DomainError("workspace has " + std::to_string(workspace.size()) +
                      " complex elements but the plan needs " +
                      std::to_string(required));
  std::vector<std::size_t> offsets(plan.groups.size(), 0);
  std::size_t at = 0;
  for (std::size_t i = 0; i < plan.groups.size(); ++i) {
    const PlanGroup& g = plan.groups[i];
    if (g.padded_length > plan.n) {
      offsets[i] = at;
      at += std::size_t(g.row_count) * g.padded_length;
    }
  }
  run_pipeline(plan, m, backend, workspace, offsets);
}

}  // namespace pfft::dft
