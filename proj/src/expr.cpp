#include "sfm/expr.hpp"

#include "sfm/errors.hpp"

namespace sfm {

ExprPtr Expr::parent(NodeId node) {
    auto e = std::make_shared<Expr>();
    e->op = Op::parent;
    e->ref = std::move(node);
    return e;
}

ExprPtr Expr::literal(Value v) {
    auto e = std::make_shared<Expr>();
    e->op = Op::literal;
    e->lit = std::move(v);
    return e;
}

ExprPtr Expr::unary(Op op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->kids = {std::move(a)};
    return e;
}

ExprPtr Expr::binary(Op op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::ite(ExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
    auto e = std::make_shared<Expr>();
    e->op = Op::ite;
    e->kids = {std::move(cond), std::move(then_e), std::move(else_e)};
    return e;
}

namespace {

bool truth(const Value& v) {
    switch (v.tag()) {
        case ValueTag::boolean: return v.as_bool();
        case ValueTag::integer: return v.as_int() != 0;
        default:
            throw EvalError("logical operand is not boolean or integer: " + v.str());
    }
}

Value logical_result(bool b, bool all_bool) {
    if (all_bool) return Value::boolean(b);
    return Value::integer(b ? 1 : 0);
}

bool numeric_less(const Value& a, const Value& b) {
    return a.numeric() < b.numeric();
}

} // namespace

Value eval_expr(const Expr& e, const Assignment& parent_values) {
    using Op = Expr::Op;
    switch (e.op) {
        case Op::parent:
            return parent_values.at(e.ref);
        case Op::literal:
            return e.lit;
        case Op::not_: {
            Value a = eval_expr(*e.kids[0], parent_values);
            return logical_result(!truth(a), a.tag() == ValueTag::boolean);
        }
        case Op::and_:
        case Op::or_: {
            Value a = eval_expr(*e.kids[0], parent_values);
            Value b = eval_expr(*e.kids[1], parent_values);
            bool all_bool = a.tag() == ValueTag::boolean && b.tag() == ValueTag::boolean;
            bool r = e.op == Op::and_ ? (truth(a) && truth(b)) : (truth(a) || truth(b));
            return logical_result(r, all_bool);
        }
        case Op::neg:
            return Value::rational(-eval_expr(*e.kids[0], parent_values).numeric());
        case Op::add:
        case Op::sub:
        case Op::mul: {
            Rational a = eval_expr(*e.kids[0], parent_values).numeric();
            Rational b = eval_expr(*e.kids[1], parent_values).numeric();
            Rational r = e.op == Op::add ? a + b : e.op == Op::sub ? a - b : a * b;
            return Value::rational(r);
        }
        case Op::pow: {
            Rational base = eval_expr(*e.kids[0], parent_values).numeric();
            Value ev = eval_expr(*e.kids[1], parent_values);
            if (ev.tag() != ValueTag::integer) {
                throw EvalError("exponent must be an integer: " + ev.str());
            }
            return Value::rational(Rational::pow(base, ev.as_int()));
        }
        case Op::eq:
        case Op::ne: {
            Value a = eval_expr(*e.kids[0], parent_values);
            Value b = eval_expr(*e.kids[1], parent_values);
            bool r = a == b;
            return Value::boolean(e.op == Op::eq ? r : !r);
        }
        case Op::lt:
        case Op::le:
        case Op::gt:
        case Op::ge: {
            Value a = eval_expr(*e.kids[0], parent_values);
            Value b = eval_expr(*e.kids[1], parent_values);
            bool lt = numeric_less(a, b);
            bool gt = numeric_less(b, a);
            switch (e.op) {
                case Op::lt: return Value::boolean(lt);
                case Op::le: return Value::boolean(!gt);
                case Op::gt: return Value::boolean(gt);
                default: return Value::boolean(!lt);
            }
        }
        case Op::ite: {
            bool c = truth(eval_expr(*e.kids[0], parent_values));
            return eval_expr(*e.kids[c ? 1 : 2], parent_values);
        }
    }
    throw EvalError("unknown expression operator");
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.op != b.op) return false;
    if (a.op == Expr::Op::parent) return a.ref == b.ref;
    if (a.op == Expr::Op::literal) return a.lit == b.lit;
    if (a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
        if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
    }
    return true;
}

void collect_parent_refs(const Expr& e, std::set<NodeId>& out) {
    if (e.op == Expr::Op::parent) out.insert(e.ref);
    for (const auto& k : e.kids) collect_parent_refs(*k, out);
}

namespace {

// Higher binds tighter.  `ite` is lowest and always parenthesized when
// nested under an operator.
int level(Expr::Op op) {
    using Op = Expr::Op;
    switch (op) {
        case Op::ite: return 0;
        case Op::or_: return 1;
        case Op::and_: return 2;
        case Op::eq: case Op::ne: case Op::lt:
        case Op::le: case Op::gt: case Op::ge: return 3;
        case Op::add: case Op::sub: return 4;
        case Op::mul: return 5;
        case Op::not_: case Op::neg: return 6;
        case Op::pow: return 7;
        case Op::parent: case Op::literal: return 8;
    }
    return 8;
}

std::string cmp_token(Expr::Op op) {
    using Op = Expr::Op;
    switch (op) {
        case Op::eq: return "==";
        case Op::ne: return "!=";
        case Op::lt: return "<";
        case Op::le: return "<=";
        case Op::gt: return ">";
        default: return ">=";
    }
}

std::string print_at(const Expr& e, int min_level) {
    using Op = Expr::Op;
    int lv = level(e.op);
    std::string body;
    switch (e.op) {
        case Op::parent:
            body = e.ref.name;
            break;
        case Op::literal:
            if (e.lit.tag() == ValueTag::symbol) {
                body = "'" + e.lit.as_symbol() + "'";
            } else if (e.lit.is_numeric() && e.lit.numeric() < Rational(0)) {
                // A negative literal prints as a unary minus expression.
                body = print_at(*Expr::unary(Op::neg, Expr::literal(
                           Value::rational(-e.lit.numeric()))), 0);
                lv = level(Op::neg);
            } else {
                body = e.lit.str();
            }
            break;
        case Op::not_:
            body = "!" + print_at(*e.kids[0], lv);
            break;
        case Op::neg:
            body = "-" + print_at(*e.kids[0], lv);
            break;
        case Op::and_:
            body = print_at(*e.kids[0], lv) + " & " + print_at(*e.kids[1], lv + 1);
            break;
        case Op::or_:
            body = print_at(*e.kids[0], lv) + " | " + print_at(*e.kids[1], lv + 1);
            break;
        case Op::add:
            body = print_at(*e.kids[0], lv) + " + " + print_at(*e.kids[1], lv + 1);
            break;
        case Op::sub:
            body = print_at(*e.kids[0], lv) + " - " + print_at(*e.kids[1], lv + 1);
            break;
        case Op::mul:
            body = print_at(*e.kids[0], lv) + " * " + print_at(*e.kids[1], lv + 1);
            break;
        case Op::pow:
            body = print_at(*e.kids[0], lv + 1) + " ^ " + print_at(*e.kids[1], lv);
            break;
        case Op::eq: case Op::ne: case Op::lt:
        case Op::le: case Op::gt: case Op::ge:
            body = print_at(*e.kids[0], lv + 1) + " " + cmp_token(e.op) + " " +
                   print_at(*e.kids[1], lv + 1);
            break;
        case Op::ite:
            body = "if " + print_at(*e.kids[0], 0) + " then " +
                   print_at(*e.kids[1], 0) + " else " + print_at(*e.kids[2], 0);
            break;
    }
    if (lv < min_level) return "(" + body + ")";
    return body;
}

} // namespace

std::string print_expr(const Expr& e) { return print_at(e, 0); }

} // namespace sfm
