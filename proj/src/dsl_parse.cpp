#include <cctype>
#include <fstream>
#include <sstream>

#include "sfm/dsl.hpp"
#include "sfm/errors.hpp"

namespace sfm::dsl {

std::string ParseError::str() const {
    std::string s = std::to_string(line) + ":" + std::to_string(col) + ": " + message;
    if (!expected.empty()) {
        s += " (expected ";
        bool first = true;
        for (const auto& e : expected) {
            if (!first) s += ", ";
            first = false;
            s += e;
        }
        s += ")";
    }
    return s;
}

bool ScenarioDoc::operator==(const ScenarioDoc& o) const {
    return model == o.model && kind == o.kind && default_world == o.default_world &&
           actual_world == o.actual_world && tweak == o.tweak &&
           query_exo == o.query_exo && csp_known == o.csp_known &&
           csp_targets == o.csp_targets && expected == o.expected;
}

namespace {

enum class Tok {
    ident, integer, string, quoted_symbol,
    lbrace, rbrace, lparen, rparen, comma, colon, arrow,
    bang, amp, pipe, plus, minus, star, caret, slash,
    eq, ne, lt, le, gt, ge,
    end,
};

struct Token {
    Tok kind;
    std::string text;   // ident name, symbol name, or string body
    long long number{0};
    int line{1};
    int col{1};
};

[[noreturn]] void fail(int line, int col, std::string message,
                       std::set<std::string> expected = {}) {
    throw ParseException(ParseError{line, col, std::move(message), std::move(expected)});
}

const std::set<std::string> kKeywords = {
    "model", "node", "exo", "endo", "parents", "domain", "expr", "table", "real",
    "include", "default", "actual", "tweak", "vfi", "csp", "known", "targets",
    "expect", "cause", "effect", "answer", "if", "then", "else", "true", "false",
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t = next();
            bool end = t.kind == Tok::end;
            out.push_back(std::move(t));
            if (end) return out;
        }
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                return;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    Token next() {
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::end;
            return t;
        }
        unsigned char c = text_[pos_];
        if (std::isalpha(c) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                name += text_[pos_];
                advance();
            }
            t.kind = Tok::ident;
            t.text = std::move(name);
            return t;
        }
        if (std::isdigit(c)) {
            std::string digits;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                advance();
            }
            errno = 0;
            char* rest = nullptr;
            long long v = std::strtoll(digits.c_str(), &rest, 10);
            if (errno == ERANGE || rest != digits.c_str() + digits.size()) {
                fail(t.line, t.col, "integer literal too large");
            }
            t.kind = Tok::integer;
            t.number = v;
            t.text = std::move(digits);
            return t;
        }
        if (c == '"') {
            advance();
            std::string body;
            while (!at('"')) {
                if (pos_ >= text_.size() || text_[pos_] == '\n') {
                    fail(t.line, t.col, "unterminated string");
                }
                body += text_[pos_];
                advance();
            }
            advance();
            t.kind = Tok::string;
            t.text = std::move(body);
            return t;
        }
        if (c == '\'') {
            advance();
            std::string body;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                body += text_[pos_];
                advance();
            }
            if (!at('\'')) fail(t.line, t.col, "unterminated symbol quote");
            advance();
            if (body.empty()) fail(t.line, t.col, "empty symbol");
            t.kind = Tok::quoted_symbol;
            t.text = std::move(body);
            return t;
        }

        auto two = [&](char second, Tok yes, Tok no) {
            advance();
            if (at(second)) {
                advance();
                t.kind = yes;
            } else {
                t.kind = no;
            }
            return t;
        };
        switch (c) {
            case '{': advance(); t.kind = Tok::lbrace; return t;
            case '}': advance(); t.kind = Tok::rbrace; return t;
            case '(': advance(); t.kind = Tok::lparen; return t;
            case ')': advance(); t.kind = Tok::rparen; return t;
            case ',': advance(); t.kind = Tok::comma; return t;
            case ':': advance(); t.kind = Tok::colon; return t;
            case '&': advance(); t.kind = Tok::amp; return t;
            case '|': advance(); t.kind = Tok::pipe; return t;
            case '+': advance(); t.kind = Tok::plus; return t;
            case '*': advance(); t.kind = Tok::star; return t;
            case '^': advance(); t.kind = Tok::caret; return t;
            case '/': advance(); t.kind = Tok::slash; return t;
            case '-':
                advance();
                if (at('>')) {
                    advance();
                    t.kind = Tok::arrow;
                } else {
                    t.kind = Tok::minus;
                }
                return t;
            case '=':
                advance();
                if (at('=')) {
                    advance();
                    t.kind = Tok::eq;
                    return t;
                }
                fail(t.line, t.col, "unexpected character '='", {"=="});
            case '!': return two('=', Tok::ne, Tok::bang);
            case '<': return two('=', Tok::le, Tok::lt);
            case '>': return two('=', Tok::ge, Tok::gt);
            default:
                fail(t.line, t.col,
                     "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_{0};
    int line_{1};
    int col_{1};
};

std::string token_name(const Token& t) {
    switch (t.kind) {
        case Tok::ident: return "'" + t.text + "'";
        case Tok::integer: return "integer";
        case Tok::string: return "string";
        case Tok::quoted_symbol: return "symbol";
        case Tok::end: return "end of input";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::comma: return "','";
        case Tok::colon: return "':'";
        case Tok::arrow: return "'->'";
        case Tok::bang: return "'!'";
        case Tok::amp: return "'&'";
        case Tok::pipe: return "'|'";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::caret: return "'^'";
        case Tok::slash: return "'/'";
        case Tok::eq: return "'=='";
        case Tok::ne: return "'!='";
        case Tok::lt: return "'<'";
        case Tok::le: return "'<='";
        case Tok::gt: return "'>'";
        case Tok::ge: return "'>='";
    }
    return "token";
}

class Parser {
public:
    Parser(std::string_view text, const std::filesystem::path* base_dir)
        : tokens_(Lexer(text).run()), base_dir_(base_dir) {}

    ScenarioDoc scenario() {
        ScenarioDoc doc;
        doc.model = model_or_include();
        section(doc);
        if (peek_keyword("expect")) doc.expected = expectation(doc);
        expect_end();
        check_doc(doc);
        return doc;
    }

    Sfm model_only() {
        Sfm model = model_section();
        expect_end();
        check_model(model);
        return model;
    }

    Assignment assignment_literal() {
        Assignment a;
        bool braced = peek(Tok::lbrace);
        if (braced) take();
        if (!peek(Tok::rbrace) && !peek(Tok::end)) {
            for (;;) {
                Token name = expect(Tok::ident, "node name");
                expect(Tok::colon, "':'");
                a.set(NodeId(name.text), value());
                if (peek(Tok::comma)) {
                    take();
                    if (peek(Tok::rbrace) || peek(Tok::end)) break;
                    continue;
                }
                break;
            }
        }
        if (braced) expect(Tok::rbrace, "'}'");
        expect_end();
        return a;
    }

private:
    const Token& cur() const { return tokens_[pos_]; }
    bool peek(Tok kind) const { return cur().kind == kind; }
    bool peek_keyword(const char* kw) const {
        return cur().kind == Tok::ident && cur().text == kw;
    }
    Token take() { return tokens_[pos_++]; }

    Token expect(Tok kind, const std::string& what) {
        if (!peek(kind)) {
            fail(cur().line, cur().col, "unexpected " + token_name(cur()), {what});
        }
        return take();
    }

    Token keyword(const char* kw) {
        if (!peek_keyword(kw)) {
            fail(cur().line, cur().col, "unexpected " + token_name(cur()),
                 {std::string("'") + kw + "'"});
        }
        return take();
    }

    void expect_end() {
        if (!peek(Tok::end)) {
            fail(cur().line, cur().col, "unexpected " + token_name(cur()),
                 {"end of input"});
        }
    }

    bool is_keyword(const std::string& name) const { return kKeywords.count(name) != 0; }

    Sfm model_or_include() {
        if (peek_keyword("include")) {
            Token inc = take();
            Token path = expect(Tok::string, "file path");
            if (!base_dir_) {
                fail(inc.line, inc.col, "include requires a file context");
            }
            std::filesystem::path target = *base_dir_ / path.text;
            std::ifstream in(target);
            if (!in) {
                fail(path.line, path.col, "cannot open include file " + path.text);
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            try {
                return parse_model(buffer.str());
            } catch (const ParseException& e) {
                fail(path.line, path.col,
                     "in include file " + path.text + ": " + e.error().str());
            }
        }
        return model_section();
    }

    Sfm model_section() {
        Token head = keyword("model");
        expect(Tok::lbrace, "'{'");
        std::set<NodeId> nodes;
        std::set<Edge> edges;
        std::map<NodeId, Domain> domains;
        std::map<NodeId, StructuralFunction> functions;
        if (!peek_keyword("node")) {
            fail(cur().line, cur().col, "unexpected " + token_name(cur()), {"'node'"});
        }
        while (peek_keyword("node")) {
            take();
            Token name = node_name();
            NodeId node(name.text);
            if (nodes.count(node)) {
                fail(name.line, name.col, "node " + name.text + " declared twice");
            }
            nodes.insert(node);

            std::vector<NodeId> parents;
            bool endo = false;
            if (peek_keyword("exo")) {
                take();
            } else if (peek_keyword("endo")) {
                take();
                endo = true;
                keyword("parents");
                parents = ident_list();
            } else {
                fail(cur().line, cur().col, "unexpected " + token_name(cur()),
                     {"'exo'", "'endo'"});
            }

            keyword("domain");
            domains.insert({node, domain_spec()});

            if (endo) {
                for (const auto& p : parents) edges.insert({p, node});
                functions.insert({node, function_spec(parents)});
            }
        }
        expect(Tok::rbrace, "'}'");
        head_line_ = head.line;
        head_col_ = head.col;
        return Sfm(std::move(nodes), std::move(edges), std::move(domains),
                   std::move(functions));
    }

    Token node_name() {
        Token name = expect(Tok::ident, "node name");
        if (is_keyword(name.text)) {
            fail(name.line, name.col, "keyword '" + name.text + "' cannot name a node");
        }
        return name;
    }

    std::vector<NodeId> ident_list() {
        expect(Tok::lparen, "'('");
        std::vector<NodeId> out;
        if (!peek(Tok::rparen)) {
            for (;;) {
                Token name = node_name();
                out.push_back(NodeId(name.text));
                if (peek(Tok::comma)) {
                    take();
                    continue;
                }
                break;
            }
        }
        expect(Tok::rparen, "')'");
        return out;
    }

    Domain domain_spec() {
        if (peek_keyword("real")) {
            take();
            return Domain::real_line();
        }
        Token open = expect(Tok::lbrace, "'{'");
        std::vector<Value> values;
        while (!peek(Tok::rbrace)) {
            values.push_back(value());
            if (peek(Tok::comma)) take();
        }
        expect(Tok::rbrace, "'}'");
        if (values.empty()) {
            fail(open.line, open.col, "domain must list at least one value");
        }
        try {
            return Domain::finite(std::move(values));
        } catch (const SfmError& e) {
            fail(open.line, open.col, e.what());
        }
    }

    Value value() {
        if (peek_keyword("true")) {
            take();
            return Value::boolean(true);
        }
        if (peek_keyword("false")) {
            take();
            return Value::boolean(false);
        }
        bool negative = false;
        if (peek(Tok::minus)) {
            take();
            negative = true;
        }
        if (peek(Tok::integer)) {
            Token num = take();
            long long n = negative ? -num.number : num.number;
            if (peek(Tok::slash)) {
                take();
                Token den = expect(Tok::integer, "denominator");
                if (den.number == 0) {
                    fail(den.line, den.col, "zero denominator");
                }
                return Value::rational(n, den.number);
            }
            return Value::integer(n);
        }
        if (negative) {
            fail(cur().line, cur().col, "unexpected " + token_name(cur()), {"integer"});
        }
        if (peek(Tok::quoted_symbol)) {
            return Value::symbol(take().text);
        }
        if (peek(Tok::ident) && !is_keyword(cur().text)) {
            return Value::symbol(take().text);
        }
        fail(cur().line, cur().col, "unexpected " + token_name(cur()),
             {"value (integer, rational, true, false, or symbol)"});
    }

    StructuralFunction function_spec(const std::vector<NodeId>& parents) {
        if (peek_keyword("expr")) {
            take();
            depth_ = 0;
            ExprPtr e = expr();
            return StructuralFunction::expr(parents, std::move(e));
        }
        if (peek_keyword("table")) {
            take();
            expect(Tok::lbrace, "'{'");
            StructuralFunction::Rows rows;
            while (!peek(Tok::rbrace)) {
                Token open = expect(Tok::lparen, "'('");
                std::vector<Value> key;
                if (!peek(Tok::rparen)) {
                    for (;;) {
                        key.push_back(value());
                        if (peek(Tok::comma)) {
                            take();
                            continue;
                        }
                        break;
                    }
                }
                expect(Tok::rparen, "')'");
                expect(Tok::arrow, "'->'");
                Value out = value();
                if (key.size() != parents.size()) {
                    fail(open.line, open.col, "table row arity does not match parents");
                }
                if (!rows.insert({std::move(key), std::move(out)}).second) {
                    fail(open.line, open.col, "duplicate table row");
                }
                if (peek(Tok::comma)) take();
            }
            expect(Tok::rbrace, "'}'");
            return StructuralFunction::table(parents, std::move(rows));
        }
        fail(cur().line, cur().col, "unexpected " + token_name(cur()),
             {"'expr'", "'table'"});
    }

    // --- expressions -----------------------------------------------------

    struct DepthGuard {
        explicit DepthGuard(int& depth) : depth_(depth) {
            if (++depth_ > 256) {
                throw ParseException(
                    ParseError{0, 0, "expression nests too deeply", {}});
            }
        }
        ~DepthGuard() { --depth_; }
        int& depth_;
    };

    ExprPtr expr() {
        DepthGuard guard(depth_);
        if (peek_keyword("if")) {
            take();
            ExprPtr c = expr();
            keyword("then");
            ExprPtr t = expr();
            keyword("else");
            ExprPtr e = expr();
            return Expr::ite(std::move(c), std::move(t), std::move(e));
        }
        return or_expr();
    }

    ExprPtr or_expr() {
        ExprPtr e = and_expr();
        while (peek(Tok::pipe)) {
            take();
            e = Expr::binary(Expr::Op::or_, std::move(e), and_expr());
        }
        return e;
    }

    ExprPtr and_expr() {
        ExprPtr e = cmp_expr();
        while (peek(Tok::amp)) {
            take();
            e = Expr::binary(Expr::Op::and_, std::move(e), cmp_expr());
        }
        return e;
    }

    ExprPtr cmp_expr() {
        ExprPtr e = add_expr();
        Expr::Op op;
        switch (cur().kind) {
            case Tok::eq: op = Expr::Op::eq; break;
            case Tok::ne: op = Expr::Op::ne; break;
            case Tok::lt: op = Expr::Op::lt; break;
            case Tok::le: op = Expr::Op::le; break;
            case Tok::gt: op = Expr::Op::gt; break;
            case Tok::ge: op = Expr::Op::ge; break;
            default: return e;
        }
        take();
        return Expr::binary(op, std::move(e), add_expr());
    }

    ExprPtr add_expr() {
        ExprPtr e = mul_expr();
        while (peek(Tok::plus) || peek(Tok::minus)) {
            Expr::Op op = take().kind == Tok::plus ? Expr::Op::add : Expr::Op::sub;
            e = Expr::binary(op, std::move(e), mul_expr());
        }
        return e;
    }

    ExprPtr mul_expr() {
        ExprPtr e = unary_expr();
        while (peek(Tok::star)) {
            take();
            e = Expr::binary(Expr::Op::mul, std::move(e), unary_expr());
        }
        return e;
    }

    ExprPtr unary_expr() {
        DepthGuard guard(depth_);
        if (peek(Tok::bang)) {
            take();
            return Expr::unary(Expr::Op::not_, unary_expr());
        }
        if (peek(Tok::minus)) {
            take();
            return Expr::unary(Expr::Op::neg, unary_expr());
        }
        return pow_expr();
    }

    ExprPtr pow_expr() {
        ExprPtr e = atom();
        if (peek(Tok::caret)) {
            take();
            return Expr::binary(Expr::Op::pow, std::move(e), unary_expr());
        }
        return e;
    }

    ExprPtr atom() {
        DepthGuard guard(depth_);
        if (peek(Tok::lparen)) {
            take();
            ExprPtr e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        if (peek(Tok::integer)) {
            Token num = take();
            if (peek(Tok::slash)) {
                take();
                Token den = expect(Tok::integer, "denominator");
                if (den.number == 0) fail(den.line, den.col, "zero denominator");
                return Expr::literal(Value::rational(num.number, den.number));
            }
            return Expr::literal(Value::integer(num.number));
        }
        if (peek(Tok::quoted_symbol)) {
            return Expr::literal(Value::symbol(take().text));
        }
        if (peek_keyword("true")) {
            take();
            return Expr::literal(Value::boolean(true));
        }
        if (peek_keyword("false")) {
            take();
            return Expr::literal(Value::boolean(false));
        }
        if (peek(Tok::ident) && !is_keyword(cur().text)) {
            return Expr::parent(NodeId(take().text));
        }
        fail(cur().line, cur().col, "unexpected " + token_name(cur()),
             {"expression"});
    }

    // --- sections ---------------------------------------------------------

    Assignment block() {
        expect(Tok::lbrace, "'{'");
        Assignment a;
        while (!peek(Tok::rbrace)) {
            Token name = node_name();
            expect(Tok::colon, "':'");
            NodeId node(name.text);
            if (a.contains(node)) {
                fail(name.line, name.col, "node " + name.text + " bound twice");
            }
            a.set(node, value());
            if (peek(Tok::comma)) take();
        }
        expect(Tok::rbrace, "'}'");
        return a;
    }

    void section(ScenarioDoc& doc) {
        if (peek_keyword("default")) {
            take();
            doc.kind = ScenarioKind::contrast_default;
            doc.default_world = block();
            keyword("actual");
            doc.actual_world = block();
            return;
        }
        if (peek_keyword("actual")) {
            take();
            doc.kind = ScenarioKind::contrast_tweak;
            doc.actual_world = block();
            keyword("tweak");
            doc.tweak = block();
            return;
        }
        if (peek_keyword("vfi")) {
            take();
            doc.kind = ScenarioKind::query_vfi;
            doc.query_exo = block();
            return;
        }
        if (peek_keyword("csp")) {
            take();
            doc.kind = ScenarioKind::query_csp;
            keyword("known");
            doc.csp_known = block();
            keyword("targets");
            for (const auto& t : ident_list()) doc.csp_targets.insert(t);
            return;
        }
        fail(cur().line, cur().col, "unexpected " + token_name(cur()),
             {"'default'", "'actual'", "'vfi'", "'csp'"});
    }

    Expectation expectation(const ScenarioDoc& doc) {
        keyword("expect");
        Expectation e;
        if (peek_keyword("cause")) {
            if (doc.kind != ScenarioKind::contrast_default &&
                doc.kind != ScenarioKind::contrast_tweak) {
                fail(cur().line, cur().col,
                     "cause/effect expectation requires a contrast section");
            }
            take();
            e.kind = Expectation::Kind::utterance;
            e.cause = block();
            keyword("effect");
            e.effect = block();
            return e;
        }
        if (peek_keyword("answer")) {
            if (doc.kind != ScenarioKind::query_vfi &&
                doc.kind != ScenarioKind::query_csp) {
                fail(cur().line, cur().col, "answer expectation requires a query section");
            }
            take();
            e.kind = Expectation::Kind::answers;
            e.answers.push_back(block());
            while (peek(Tok::lbrace)) e.answers.push_back(block());
            return e;
        }
        fail(cur().line, cur().col, "unexpected " + token_name(cur()),
             {"'cause'", "'answer'"});
    }

    // --- post-parse checks --------------------------------------------------

    void check_model(const Sfm& model) {
        ValidationReport report = validate(model);
        if (!report.valid()) {
            fail(head_line_, head_col_,
                 "model does not validate: " + report.violations.front().message);
        }
    }

    void check_nodes_exist(const Sfm& model, const Assignment& a, const char* where) {
        for (const auto& [u, v] : a) {
            if (!model.nodes().count(u)) {
                fail(head_line_, head_col_,
                     std::string(where) + " references undeclared node " + u.name);
            }
        }
    }

    void check_doc(const ScenarioDoc& doc) {
        check_model(doc.model);
        check_nodes_exist(doc.model, doc.default_world, "default block");
        check_nodes_exist(doc.model, doc.actual_world, "actual block");
        check_nodes_exist(doc.model, doc.tweak, "tweak block");
        check_nodes_exist(doc.model, doc.query_exo, "vfi block");
        check_nodes_exist(doc.model, doc.csp_known, "known block");
        for (const auto& t : doc.csp_targets) {
            if (!doc.model.nodes().count(t)) {
                fail(head_line_, head_col_,
                     "targets list references undeclared node " + t.name);
            }
        }
        if (doc.expected) {
            check_nodes_exist(doc.model, doc.expected->cause, "expected cause");
            check_nodes_exist(doc.model, doc.expected->effect, "expected effect");
            for (const auto& a : doc.expected->answers) {
                check_nodes_exist(doc.model, a, "expected answer");
            }
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_{0};
    const std::filesystem::path* base_dir_;
    int depth_{0};
    int head_line_{1};
    int head_col_{1};
};

ScenarioDoc parse_scenario_impl(std::string_view text,
                                const std::filesystem::path* base_dir) {
    return Parser(text, base_dir).scenario();
}

} // namespace

Sfm parse_model(std::string_view text) {
    return Parser(text, nullptr).model_only();
}

ScenarioDoc parse_scenario(std::string_view text) {
    return parse_scenario_impl(text, nullptr);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

Sfm load_model_file(const std::filesystem::path& path) {
    return parse_model(read_file(path));
}

ScenarioDoc load_scenario_file(const std::filesystem::path& path) {
    std::filesystem::path base = path.parent_path();
    return parse_scenario_impl(read_file(path), &base);
}

Assignment parse_assignment_literal(std::string_view text) {
    return Parser(text, nullptr).assignment_literal();
}

} // namespace sfm::dsl
