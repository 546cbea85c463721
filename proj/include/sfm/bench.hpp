#pragma once

#include <vector>

#include "sfm/infer.hpp"

namespace sfm {

/// Evaluation counts for one tweak, comparing full re-inference against
/// change-driven inference from the same reference world.
struct BenchRow {
    Assignment tweak;
    int vfi_evals{0};
    int cfi_evals{0};
    int saved{0};
};

struct BenchTable {
    std::vector<BenchRow> rows;
    int vfi_total{0};
    int cfi_total{0};
    int saved_total{0};
};

/// Runs every tweak both ways against `reference` and tallies function
/// evaluations.  Change-driven inference never evaluates more than full
/// inference; a row that would violate that aborts the run.
BenchTable bench_eval_counts(const Sfm& model, const Assignment& reference,
                             const std::vector<Assignment>& tweaks);

} // namespace sfm
