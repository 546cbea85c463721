#pragma once

#include <map>
#include <vector>

#include "sfm/domain.hpp"
#include "sfm/expr.hpp"

namespace sfm {

/// Structural function of an endo-node: either an explicit lookup table over
/// the parent-domain product or an expression.  `params` fixes the parent
/// order used by table row tuples; as a set it must equal the node's parents
/// per the model's edge set.
class StructuralFunction {
public:
    enum class Kind { table, expr };

    using Rows = std::map<std::vector<Value>, Value>;

    static StructuralFunction table(std::vector<NodeId> params, Rows rows);
    static StructuralFunction expr(std::vector<NodeId> params, ExprPtr e);

    Kind kind() const { return kind_; }
    const std::vector<NodeId>& params() const { return params_; }
    const Rows& rows() const;
    const ExprPtr& expression() const;

    /// Applies the function to one parent valuation.  Missing table row or a
    /// non-evaluable expression throws EvalError.
    Value apply(const Assignment& parent_values) const;

    bool operator==(const StructuralFunction& o) const;

private:
    StructuralFunction(Kind kind, std::vector<NodeId> params)
        : kind_(kind), params_(std::move(params)) {}

    Kind kind_;
    std::vector<NodeId> params_;
    Rows rows_;
    ExprPtr expr_;
};

} // namespace sfm
