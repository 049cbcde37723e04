#pragma once

#include "pfft/dft/engine.hpp"
#include "pfft/dft/signal_matrix.hpp"

namespace pfft::dft {

// Direct evaluation of X[k][l] = sum_i sum_j M[i][j] w^(ki) w^(lj) with
// w = exp(-2*pi*i/N): the defining double sum, Theta(N^4), sharing no code
// with the FFT pipeline. Oracle for tests and --check; refuses n > 256.
SignalMatrix dft2d_naive(const SignalMatrix& m);

// Direct evaluation of what the padded pipeline computes: per group, each of
// its rows is zero-extended to that group's padded_length, transformed at
// that length by the naive sum, truncated to the first n outputs; then an
// index-swap transpose, the same padded row pass again, and a final
// transpose. Route-independent oracle for the padded variant. Refuses
// n > 64 or padded lengths > 4096.
SignalMatrix dft2d_padded_reference(const SignalMatrix& m,
                                    const ExecutionPlan& plan);

}  // namespace pfft::dft
