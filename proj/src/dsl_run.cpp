#include "sfm/dsl.hpp"
#include "sfm/infer.hpp"

namespace sfm::dsl {

ScenarioResult run_scenario(const ScenarioDoc& doc, std::size_t csp_limit) {
    ScenarioResult result;
    result.kind = doc.kind;
    switch (doc.kind) {
        case ScenarioKind::contrast_default: {
            Contrast c = contrast_default(doc.model, doc.default_world, doc.actual_world);
            result.utterance = utterance_of(c);
            result.rendered = render_utterance(*result.utterance, doc.model);
            break;
        }
        case ScenarioKind::contrast_tweak: {
            Contrast c = contrast_tweak(doc.model, doc.actual_world, doc.tweak);
            result.utterance = utterance_of(c);
            result.rendered = render_utterance(*result.utterance, doc.model);
            break;
        }
        case ScenarioKind::query_vfi: {
            InferResult r = vfi(doc.model, doc.query_exo);
            result.answers.push_back(r.world);
            result.evals = r.evals;
            break;
        }
        case ScenarioKind::query_csp: {
            result.answers =
                csp_solve(doc.model, doc.csp_known, doc.csp_targets, csp_limit);
            break;
        }
    }
    if (doc.expected) {
        const Expectation& e = *doc.expected;
        if (e.kind == Expectation::Kind::utterance) {
            result.passed = result.utterance &&
                            result.utterance->cause == e.cause &&
                            result.utterance->effect == e.effect;
        } else {
            result.passed = result.answers == e.answers;
        }
    }
    return result;
}

Sfm make_switch_circuit(int n, std::uint64_t function_index) {
    if (n < 1 || n > 3) {
        throw PreconditionError("switch circuit size must lie in [1, 3]");
    }
    std::uint64_t table_size = 1ull << n;
    if (function_index >= (1ull << table_size)) {
        throw PreconditionError("function index out of range for circuit size");
    }
    Domain bits = Domain::finite({Value::integer(0), Value::integer(1)});
    SfmBuilder builder;
    std::vector<NodeId> params;
    for (int i = 1; i <= n; ++i) {
        NodeId x("X" + std::to_string(i));
        builder.exo(x, bits);
        params.push_back(x);
    }
    StructuralFunction::Rows rows;
    for (std::uint64_t code = 0; code < table_size; ++code) {
        std::vector<Value> key;
        for (int i = 0; i < n; ++i) {
            key.push_back(Value::integer((code >> (n - 1 - i)) & 1));
        }
        long long out = (function_index >> code) & 1;
        rows.insert({std::move(key), Value::integer(out)});
    }
    builder.endo(NodeId("Y"), bits, StructuralFunction::table(params, std::move(rows)));
    return builder.build();
}

} // namespace sfm::dsl
