#pragma once

// Arithmetic expressions over the free variables x and lt (= log(t/a)):
// Pratt parser, IEEE-double evaluator, minimal-parenthesis printer.
// Grammar: numbers, x, lt, pi, + - * / ^ (right-assoc ^, tighter than unary
// minus), parentheses, calls sin|cos|exp|log|sqrt|pow|gamma.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "special_functions.hpp"

namespace hcq {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::runtime_error("syntax error at byte " + std::to_string(off) + ": " + what),
          offset(off) {}
};

struct EvalError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NonAnalyticError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace expr_detail {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Number, Var, Pi, Unary, Binary, Call } kind;
    double value = 0.0;    // Number
    std::string name;      // Var ("x"/"lt") or Call name
    char op = 0;           // Binary/Unary operator
    std::vector<NodePtr> args;
};

struct Token {
    enum class Kind { Number, Ident, Op, LParen, RParen, Comma, End } kind;
    double value = 0.0;
    std::string text;
    char op = 0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& cur() const { return cur_; }
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        cur_.offset = pos_;
        if (pos_ >= src_.size()) {
            cur_.kind = Token::Kind::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            cur_.kind = Token::Kind::Ident;
            cur_.text = src_.substr(start, pos_ - start);
            return;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                cur_.kind = Token::Kind::Op;
                cur_.op = c;
                ++pos_;
                return;
            case '(':
                cur_.kind = Token::Kind::LParen;
                ++pos_;
                return;
            case ')':
                cur_.kind = Token::Kind::RParen;
                ++pos_;
                return;
            case ',':
                cur_.kind = Token::Kind::Comma;
                ++pos_;
                return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
    }

private:
    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark; // 'e' belongs to a following identifier, not this number
            }
        }
        cur_.kind = Token::Kind::Number;
        cur_.text = src_.substr(start, pos_ - start);
        cur_.value = std::strtod(cur_.text.c_str(), nullptr);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token cur_;
};

inline bool is_unary_function(const std::string& n) {
    return n == "sin" || n == "cos" || n == "exp" || n == "log" || n == "sqrt" || n == "gamma";
}

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    NodePtr parse_all() {
        NodePtr e = parse_expr(0);
        if (lex_.cur().kind != Token::Kind::End)
            throw ParseError("expected end of input or an operator", lex_.cur().offset);
        return e;
    }

private:
    static int lbp(char op) {
        switch (op) {
            case '+': case '-': return 1;
            case '*': case '/': return 3;
            case '^': return 7;
        }
        return -1;
    }
    static int rbp(char op) {
        switch (op) {
            case '+': case '-': return 2;
            case '*': case '/': return 4;
            case '^': return 6; // right associative
        }
        return -1;
    }

    NodePtr parse_expr(int min_bp) {
        NodePtr lhs = parse_prefix();
        while (lex_.cur().kind == Token::Kind::Op && lbp(lex_.cur().op) >= min_bp) {
            char op = lex_.cur().op;
            lex_.advance();
            NodePtr rhs = parse_expr(rbp(op));
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Binary;
            n->op = op;
            n->args = {lhs, rhs};
            lhs = n;
        }
        return lhs;
    }

    NodePtr parse_prefix() {
        const Token& t = lex_.cur();
        switch (t.kind) {
            case Token::Kind::Number: {
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::Number;
                n->value = t.value;
                lex_.advance();
                return n;
            }
            case Token::Kind::Op:
                if (t.op == '-') {
                    lex_.advance();
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Kind::Unary;
                    n->op = '-';
                    n->args = {parse_expr(5)}; // unary minus binds looser than ^
                    return n;
                }
                throw ParseError("expected a number, name, '(', or unary '-'", t.offset);
            case Token::Kind::LParen: {
                lex_.advance();
                NodePtr e = parse_expr(0);
                expect(Token::Kind::RParen, "expected ')'");
                return e;
            }
            case Token::Kind::Ident:
                return parse_ident();
            default:
                throw ParseError("expected a number, name, '(', or unary '-'", t.offset);
        }
    }

    NodePtr parse_ident() {
        Token t = lex_.cur();
        lex_.advance();
        if (t.text == "x" || t.text == "lt") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Var;
            n->name = t.text;
            return n;
        }
        if (t.text == "pi") {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Pi;
            return n;
        }
        if (is_unary_function(t.text) || t.text == "pow") {
            expect(Token::Kind::LParen, "expected '(' after function name");
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Call;
            n->name = t.text;
            n->args.push_back(parse_expr(0));
            if (t.text == "pow") {
                expect(Token::Kind::Comma, "expected ',' between pow arguments");
                n->args.push_back(parse_expr(0));
            }
            expect(Token::Kind::RParen, "expected ')'");
            return n;
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.offset);
    }

    void expect(Token::Kind k, const char* msg) {
        if (lex_.cur().kind != k) throw ParseError(msg, lex_.cur().offset);
        lex_.advance();
    }

    Lexer lex_;
};

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// prec: atoms 100, ^ 7, unary- 5, * / 3, + - 1
inline int node_prec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Binary:
            return (n.op == '^') ? 7 : (n.op == '*' || n.op == '/') ? 3 : 1;
        case Node::Kind::Unary:
            return 5;
        default:
            return 100;
    }
}

inline void print_node(const Node& n, int ctx, std::string& out) {
    int prec = node_prec(n);
    bool wrap = prec < ctx;
    if (wrap) out += '(';
    switch (n.kind) {
        case Node::Kind::Number:
            out += format_number(n.value);
            break;
        case Node::Kind::Var:
            out += n.name;
            break;
        case Node::Kind::Pi:
            out += "pi";
            break;
        case Node::Kind::Unary:
            out += '-';
            print_node(*n.args[0], 5, out);
            break;
        case Node::Kind::Binary: {
            int lctx = (n.op == '^') ? prec + 1 : prec;
            int rctx = (n.op == '^') ? prec : prec + 1;
            print_node(*n.args[0], lctx, out);
            out += n.op;
            print_node(*n.args[1], rctx, out);
            break;
        }
        case Node::Kind::Call:
            out += n.name;
            out += '(';
            print_node(*n.args[0], 0, out);
            if (n.args.size() > 1) {
                out += ',';
                print_node(*n.args[1], 0, out);
            }
            out += ')';
            break;
    }
    if (wrap) out += ')';
}

inline std::string describe(const Node& n) {
    std::string s;
    print_node(n, 0, s);
    return s;
}

inline double eval_node(const Node& n, double x, double lt);

inline double eval_pow(const Node& site, double base, double expo) {
    if (base == 0.0 && expo < 0.0)
        throw EvalError("zero raised to a negative power in '" + describe(site) + "'");
    if (base < 0.0 && expo != std::floor(expo))
        throw EvalError("negative base with non-integer exponent in '" + describe(site) + "'");
    return std::pow(base, expo);
}

inline double eval_node(const Node& n, double x, double lt) {
    switch (n.kind) {
        case Node::Kind::Number:
            return n.value;
        case Node::Kind::Var:
            return (n.name == "x") ? x : lt;
        case Node::Kind::Pi:
            return std::numbers::pi;
        case Node::Kind::Unary:
            return -eval_node(*n.args[0], x, lt);
        case Node::Kind::Binary: {
            double a = eval_node(*n.args[0], x, lt);
            double b = eval_node(*n.args[1], x, lt);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) throw EvalError("division by zero in '" + describe(n) + "'");
                    return a / b;
                case '^': return eval_pow(n, a, b);
            }
            throw EvalError("bad operator");
        }
        case Node::Kind::Call: {
            double a = eval_node(*n.args[0], x, lt);
            if (n.name == "sin") return std::sin(a);
            if (n.name == "cos") return std::cos(a);
            if (n.name == "exp") return std::exp(a);
            if (n.name == "log") {
                if (a <= 0.0)
                    throw EvalError("log of a nonpositive value in '" + describe(n) + "'");
                return std::log(a);
            }
            if (n.name == "sqrt") {
                if (a < 0.0)
                    throw EvalError("sqrt of a negative value in '" + describe(n) + "'");
                return std::sqrt(a);
            }
            if (n.name == "gamma") {
                if (a <= 0.0 && a == std::floor(a))
                    throw EvalError("gamma pole in '" + describe(n) + "'");
                return gamma<double>(a);
            }
            double b = eval_node(*n.args[1], x, lt);
            return eval_pow(n, a, b); // pow
        }
    }
    throw EvalError("bad node");
}

} // namespace expr_detail

struct Expression {
    expr_detail::NodePtr root;
};

inline Expression parse(const std::string& src) {
    expr_detail::Parser p(src);
    return Expression{p.parse_all()};
}

inline double eval(const Expression& e, double x, double lt) {
    return expr_detail::eval_node(*e.root, x, lt);
}

inline std::string pretty_print(const Expression& e) { return expr_detail::describe(*e.root); }

} // namespace hcq
