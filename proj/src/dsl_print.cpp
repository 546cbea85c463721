#include <sstream>

#include "sfm/dsl.hpp"
#include "sfm/expr.hpp"

namespace sfm::dsl {

namespace {

void print_domain(std::ostream& out, const Domain& d) {
    if (!d.is_finite()) {
        out << "real";
        return;
    }
    out << "{ ";
    bool first = true;
    for (const auto& v : d.values()) {
        if (!first) out << ", ";
        first = false;
        out << v.str();
    }
    out << " }";
}

void print_function(std::ostream& out, const StructuralFunction& f) {
    if (f.kind() == StructuralFunction::Kind::expr) {
        out << "expr " << print_expr(*f.expression());
        return;
    }
    out << "table {\n";
    for (const auto& [key, value] : f.rows()) {
        out << "    (";
        bool first = true;
        for (const auto& v : key) {
            if (!first) out << ", ";
            first = false;
            out << v.str();
        }
        out << ") -> " << value.str() << "\n";
    }
    out << "  }";
}

void print_block(std::ostream& out, const Assignment& a) {
    if (a.empty()) {
        out << "{}";
        return;
    }
    out << "{ ";
    bool first = true;
    for (const auto& [u, v] : a) {
        if (!first) out << ", ";
        first = false;
        out << u.name << ": " << v.str();
    }
    out << " }";
}

} // namespace

std::string print_model(const Sfm& model) {
    std::ostringstream out;
    out << "model {\n";
    for (const auto& u : topological_order(model)) {
        out << "  node " << u.name << " ";
        if (model.is_exo(u)) {
            out << "exo";
        } else {
            out << "endo parents (";
            bool first = true;
            for (const auto& p : model.function(u).params()) {
                if (!first) out << ", ";
                first = false;
                out << p.name;
            }
            out << ")";
        }
        out << " domain ";
        print_domain(out, model.domain(u));
        if (!model.is_exo(u)) {
            out << " ";
            print_function(out, model.function(u));
        }
        out << "\n";
    }
    out << "}\n";
    return out.str();
}

std::string print_scenario(const ScenarioDoc& doc) {
    std::ostringstream out;
    out << print_model(doc.model);
    switch (doc.kind) {
        case ScenarioKind::contrast_default:
            out << "default ";
            print_block(out, doc.default_world);
            out << "\nactual ";
            print_block(out, doc.actual_world);
            out << "\n";
            break;
        case ScenarioKind::contrast_tweak:
            out << "actual ";
            print_block(out, doc.actual_world);
            out << "\ntweak ";
            print_block(out, doc.tweak);
            out << "\n";
            break;
        case ScenarioKind::query_vfi:
            out << "vfi ";
            print_block(out, doc.query_exo);
            out << "\n";
            break;
        case ScenarioKind::query_csp: {
            out << "csp known ";
            print_block(out, doc.csp_known);
            out << " targets (";
            bool first = true;
            for (const auto& t : doc.csp_targets) {
                if (!first) out << ", ";
                first = false;
                out << t.name;
            }
            out << ")\n";
            break;
        }
    }
    if (doc.expected) {
        const Expectation& e = *doc.expected;
        if (e.kind == Expectation::Kind::utterance) {
            out << "expect cause ";
            print_block(out, e.cause);
            out << " effect ";
            print_block(out, e.effect);
            out << "\n";
        } else {
            out << "expect answer";
            for (const auto& a : e.answers) {
                out << " ";
                print_block(out, a);
            }
            out << "\n";
        }
    }
    return out.str();
}

} // namespace sfm::dsl
