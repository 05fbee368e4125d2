#include "cpic/rational.hpp"

namespace cpic {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0)
        throw InputError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return InputError("invalid rational \"" + std::string(text) + "\""); };
    size_t slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    auto is_int = [](std::string_view s) {
        if (!s.empty() && s.front() == '-')
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    if (!is_int(num_part))
        throw bad();
    mpz_class num(std::string(num_part), 10);
    mpz_class den(1);
    if (slash != std::string_view::npos) {
        std::string_view den_part = text.substr(slash + 1);
        if (!is_int(den_part) || den_part.front() == '-')
            throw bad();
        den = mpz_class(std::string(den_part), 10);
        if (den == 0)
            throw bad();
    }
    return Rational(num, den);
}

bool Rational::is_even_integer() const {
    return is_integer() && mpz_even_p(q_.get_num().get_mpz_t());
}

std::string Rational::str() const {
    return q_.get_str();
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw InputError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational pow_int(const Rational& q, unsigned long k) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.den().get_mpz_t(), k);
    return Rational(num, den);
}

const Rational& Valuation::finite() const {
    if (!finite_)
        throw ValidationError("valuation is infinite");
    return value_;
}

Valuation Valuation::operator+(const Valuation& o) const {
    if (!finite_ || !o.finite_)
        return infinity();
    return Valuation(value_ + o.value_);
}

Valuation Valuation::min(const Valuation& a, const Valuation& b) {
    return a < b ? a : b;
}

bool operator==(const Valuation& a, const Valuation& b) {
    if (a.finite_ != b.finite_)
        return false;
    return !a.finite_ || a.value_ == b.value_;
}

bool operator<(const Valuation& a, const Valuation& b) {
    if (!a.finite_)
        return false;  // infinity is greatest
    if (!b.finite_)
        return true;
    return a.value_ < b.value_;
}

bool is_odd_prime(const mpz_class& p) {
    if (p <= 2 || mpz_even_p(p.get_mpz_t()))
        return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

void require_odd_prime(const mpz_class& p) {
    if (!is_odd_prime(p))
        throw InputError("p = " + p.get_str() + " is not an odd prime");
}

Valuation val_p(const Rational& q, const mpz_class& p) {
    require_odd_prime(p);
    if (q.is_zero())
        return Valuation::infinity();
    mpz_class stripped;
    long vnum = static_cast<long>(
        mpz_remove(stripped.get_mpz_t(), q.num().get_mpz_t(), p.get_mpz_t()));
    long vden = static_cast<long>(
        mpz_remove(stripped.get_mpz_t(), q.den().get_mpz_t(), p.get_mpz_t()));
    return Valuation(Rational(vnum - vden));
}

} // namespace cpic
