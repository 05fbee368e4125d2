#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpic/rational.hpp"

namespace cpic {

// Arithmetic expression in a formal prime p, e.g. "1 + 2*p^8".
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' uint)?
//   base   := int | 'p' | '(' expr ')'
//
// Whitespace is insignificant. Integer literals may carry a sign.
class PExpr {
public:
    static PExpr parse(std::string_view text);

    // Substitutes a concrete prime and evaluates exactly.
    Rational eval(const mpz_class& p) const;

    const std::string& text() const { return text_; }

private:
    struct Node {
        enum class Op { Lit, Sym, Neg, Add, Sub, Mul, Div, Pow };
        Op op;
        mpz_class lit;
        int a = -1;
        int b = -1;
        unsigned long exp = 0;
    };

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string text_;

    Rational eval_node(int id, const Rational& p) const;

    friend class PExprParser;
};

// parse + eval; p must be an odd prime.
Rational eval_p_expr(std::string_view text, const mpz_class& p);

} // namespace cpic
