#include "sfm/bench.hpp"

#include "sfm/errors.hpp"

namespace sfm {

BenchTable bench_eval_counts(const Sfm& model, const Assignment& reference,
                             const std::vector<Assignment>& tweaks) {
    BenchTable table;
    Assignment reference_exo = reference.restrict_to(model.exo_nodes());
    for (const auto& tweak : tweaks) {
        InferResult full = vfi(model, reference_exo.overlaid_with(tweak));
        InferResult incremental = cfi(model, reference, tweak);
        if (incremental.world != full.world) {
            throw SfmError("change-driven inference disagrees with full inference");
        }
        BenchRow row;
        row.tweak = tweak;
        row.vfi_evals = full.total_evals();
        row.cfi_evals = incremental.total_evals();
        row.saved = row.vfi_evals - row.cfi_evals;
        if (row.saved < 0) {
            throw SfmError("change-driven inference evaluated more than full inference");
        }
        table.vfi_total += row.vfi_evals;
        table.cfi_total += row.cfi_evals;
        table.saved_total += row.saved;
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace sfm
