#pragma once

#include <span>
#include <string>
#include <vector>

#include "pfft/dft/backend.hpp"
#include "pfft/dft/signal_matrix.hpp"
#include "pfft/pad/planner.hpp"
#include "pfft/part/partition.hpp"

namespace pfft::dft {

enum class Variant { Sequential, LB, FPM, FPM_PAD };
const char* to_string(Variant v);
Variant variant_from_name(const std::string& name);  // seq|lb|fpm|fpm-pad

// One abstract processor's share of the pipeline: a contiguous row range
// plus the transform length its row passes use (padded_length == n except
// for FPM_PAD groups that chose to pad).
struct PlanGroup {
  int group_id = 0;
  int workers = 1;
  int row_start = 0;
  int row_count = 0;
  int padded_length = 0;
};

// Full description of one pipeline run. Group row ranges must be disjoint,
// contiguous, ordered, and cover exactly rows 0..n-1.
struct ExecutionPlan {
  int n = 0;
  Variant variant = Variant::Sequential;
  int block_size = 64;  // transpose tile side
  std::vector<PlanGroup> groups;

  void validate() const;  // throws DomainError on any broken invariant
};

ExecutionPlan make_sequential_plan(int n, int workers = 1);
// Balanced split into p contiguous ranges, every |d_i - n/p| <= 1.
ExecutionPlan make_lb_plan(int n, int p, int workers = 1);
ExecutionPlan make_fpm_plan(int n, const part::RowDistribution& dist,
                            int workers = 1);
ExecutionPlan make_fpm_pad_plan(int n, const part::RowDistribution& dist,
                                std::span<const pad::PadDecision> pads,
                                int workers = 1);

// Forward-transforms rows [row_start, row_start+row_count) of m in place,
// each over its first length_s elements. Backend errors are rethrown with
// the row range attached.
void rows_fft_batch(FftBackend& backend, SignalMatrix& m, int row_start,
                    int row_count, int length_s, int workers = 1,
                    bool cache_plan = true);

// In-place transpose of the logical n x n region, processed in block_size^2
// tiles with ragged edges. Requires row_stride == n.
void transpose_blocked(SignalMatrix& m, int block_size = 64);

// Scratch space execute() needs for an FPM_PAD plan: the sum over padding
// groups of row_count * padded_length complex elements (groups that keep
// padded_length == n run in place and need none).
std::size_t pad_workspace_size(const ExecutionPlan& plan);

// Runs the four-step pipeline (row FFTs, transpose, row FFTs, transpose)
// with one thread per group and barriers between steps, leaving m equal to
// the variant's transform of its input. FPM_PAD plans allocate their own
// workspace here. On any group failure the pipeline finishes its in-flight
// step, marks m indeterminate, and throws EngineError.
void execute(const ExecutionPlan& plan, SignalMatrix& m, FftBackend& backend);

// FPM_PAD pipeline with caller-provided workspace (see pad_workspace_size).
// Too-small workspace throws DomainError before any mutation.
void execute_fpm_pad(const ExecutionPlan& plan, SignalMatrix& m,
                     FftBackend& backend, std::span<cplx> workspace);

namespace detail {
// Copies rows [row_start, row_start+row_count) of m into dest as rows of
// width padded_length and zeroes columns n..padded_length-1. Exposed so
// tests can assert the zeroing postcondition directly.
void pad_rows_into(const SignalMatrix& m, int row_start, int row_count,
                   int padded_length, cplx* dest);
}  // namespace detail

}  // namespace pfft::dft
