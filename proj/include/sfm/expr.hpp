#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sfm/assignment.hpp"
#include "sfm/node.hpp"
#include "sfm/value.hpp"

namespace sfm {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression over parent values.  The operator set is total by
/// construction: there is no division.
///
/// Evaluation rules:
///  - logical ops take boolean or integer operands (integer truth is
///    nonzero); the result is boolean when every operand is boolean and
///    integer 0/1 otherwise
///  - arithmetic is exact over integers and rationals
///  - `pow` requires a non-negative integer exponent
///  - `eq`/`ne` compare any values (cross-tag compares unequal); order
///    comparisons require numeric operands
///  - `ite` evaluates the chosen branch only
struct Expr {
    enum class Op {
        parent, literal,
        not_, and_, or_,
        neg, add, sub, mul, pow,
        eq, ne, lt, le, gt, ge,
        ite,
    };

    Op op;
    NodeId ref;                  // op == parent
    Value lit;                   // op == literal
    std::vector<ExprPtr> kids;

    static ExprPtr parent(NodeId node);
    static ExprPtr literal(Value v);
    static ExprPtr unary(Op op, ExprPtr a);
    static ExprPtr binary(Op op, ExprPtr a, ExprPtr b);
    static ExprPtr ite(ExprPtr cond, ExprPtr then_e, ExprPtr else_e);
};

Value eval_expr(const Expr& e, const Assignment& parent_values);
bool expr_equal(const Expr& a, const Expr& b);
void collect_parent_refs(const Expr& e, std::set<NodeId>& out);
/// Canonical text form with minimal parentheses.
std::string print_expr(const Expr& e);

} // namespace sfm
