#include "sfm/function.hpp"

#include <algorithm>

#include "sfm/errors.hpp"

namespace sfm {

namespace {

void check_params(const std::vector<NodeId>& params) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].name.empty()) throw PreconditionError("empty parameter name");
        for (std::size_t j = i + 1; j < params.size(); ++j) {
            if (params[i] == params[j]) {
                throw PreconditionError("duplicate parameter " + params[i].name);
            }
        }
    }
}

} // namespace

StructuralFunction StructuralFunction::table(std::vector<NodeId> params, Rows rows) {
    check_params(params);
    for (const auto& [tuple, value] : rows) {
        if (tuple.size() != params.size()) {
            throw PreconditionError("table row arity does not match parameter count");
        }
    }
    StructuralFunction f(Kind::table, std::move(params));
    f.rows_ = std::move(rows);
    return f;
}

StructuralFunction StructuralFunction::expr(std::vector<NodeId> params, ExprPtr e) {
    check_params(params);
    if (!e) throw PreconditionError("null expression");
    StructuralFunction f(Kind::expr, std::move(params));
    f.expr_ = std::move(e);
    return f;
}

const StructuralFunction::Rows& StructuralFunction::rows() const {
    if (kind_ != Kind::table) throw PreconditionError("function is not a table");
    return rows_;
}

const ExprPtr& StructuralFunction::expression() const {
    if (kind_ != Kind::expr) throw PreconditionError("function is not an expression");
    return expr_;
}

Value StructuralFunction::apply(const Assignment& parent_values) const {
    if (kind_ == Kind::expr) return eval_expr(*expr_, parent_values);
    std::vector<Value> tuple;
    tuple.reserve(params_.size());
    for (const auto& p : params_) tuple.push_back(parent_values.at(p));
    auto it = rows_.find(tuple);
    if (it == rows_.end()) {
        std::string key = "(";
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) key += ", ";
            key += tuple[i].str();
        }
        key += ")";
        throw EvalError("no table row for parent tuple " + key);
    }
    return it->second;
}

bool StructuralFunction::operator==(const StructuralFunction& o) const {
    if (kind_ != o.kind_ || params_ != o.params_) return false;
    if (kind_ == Kind::table) return rows_ == o.rows_;
    return expr_equal(*expr_, *o.expr_);
}

} // namespace sfm
