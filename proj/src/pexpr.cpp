#include "cpic/pexpr.hpp"

#include <cctype>

namespace cpic {

namespace {
constexpr unsigned long kMaxExponent = 1000000;
}

class PExprParser {
public:
    explicit PExprParser(std::string_view text) : text_(text) {}

    PExpr run() {
        PExpr e;
        e.text_ = std::string(text_);
        nodes_ = &e.nodes_;
        e.root_ = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
    std::vector<PExpr::Node>* nodes_ = nullptr;

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    int add(PExpr::Node n) {
        nodes_->push_back(std::move(n));
        return static_cast<int>(nodes_->size() - 1);
    }

    int binary(PExpr::Node::Op op, int a, int b) {
        PExpr::Node n;
        n.op = op;
        n.a = a;
        n.b = b;
        return add(std::move(n));
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = binary(PExpr::Node::Op::Add, lhs, parse_term());
            else if (eat('-'))
                lhs = binary(PExpr::Node::Op::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        for (;;) {
            if (eat('*'))
                lhs = binary(PExpr::Node::Op::Mul, lhs, parse_factor());
            else if (eat('/'))
                lhs = binary(PExpr::Node::Op::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    int parse_factor() {
        int base = parse_base();
        if (!eat('^'))
            return base;
        unsigned long exp = parse_uint();
        PExpr::Node n;
        n.op = PExpr::Node::Op::Pow;
        n.a = base;
        n.exp = exp;
        return add(std::move(n));
    }

    int parse_base() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            int inner = parse_expr();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (c == 'p') {
            ++pos_;
            PExpr::Node n;
            n.op = PExpr::Node::Op::Sym;
            return add(std::move(n));
        }
        if (c == '-') {
            ++pos_;
            PExpr::Node n;
            n.op = PExpr::Node::Op::Neg;
            n.a = parse_base();
            return add(std::move(n));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            PExpr::Node n;
            n.op = PExpr::Node::Op::Lit;
            n.lit = mpz_class(parse_digits(), 10);
            return add(std::move(n));
        }
        fail("expected integer, 'p' or '('");
    }

    std::string parse_digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    unsigned long parse_uint() {
        std::string digits = parse_digits();
        mpz_class v(digits, 10);
        if (v > kMaxExponent)
            fail("exponent too large (limit " + std::to_string(kMaxExponent) + ")");
        return v.get_ui();
    }
};

PExpr PExpr::parse(std::string_view text) {
    return PExprParser(text).run();
}

Rational PExpr::eval_node(int id, const Rational& p) const {
    const Node& n = nodes_[static_cast<size_t>(id)];
    switch (n.op) {
    case Node::Op::Lit:
        return Rational(n.lit);
    case Node::Op::Sym:
        return p;
    case Node::Op::Neg:
        return -eval_node(n.a, p);
    case Node::Op::Add:
        return eval_node(n.a, p) + eval_node(n.b, p);
    case Node::Op::Sub:
        return eval_node(n.a, p) - eval_node(n.b, p);
    case Node::Op::Mul:
        return eval_node(n.a, p) * eval_node(n.b, p);
    case Node::Op::Div:
        return eval_node(n.a, p) / eval_node(n.b, p);
    case Node::Op::Pow:
        return pow_int(eval_node(n.a, p), n.exp);
    }
    throw ValidationError("corrupt expression node");
}

Rational PExpr::eval(const mpz_class& p) const {
    if (root_ < 0)
        throw ValidationError("empty expression");
    return eval_node(root_, Rational(p));
}

Rational eval_p_expr(std::string_view text, const mpz_class& p) {
    require_odd_prime(p);
    return PExpr::parse(text).eval(p);
}

} // namespace cpic
