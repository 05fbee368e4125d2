#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "cpic/errors.hpp"

namespace cpic {

// Exact rational number. Always stored in lowest terms with positive
// denominator; every operation is exact. Division by zero throws.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(n) {}
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& num, const mpz_class& den);

    // Accepts "a" or "a/b" with optional leading '-'; b must be positive.
    static Rational parse(std::string_view text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_even_integer() const;
    int sign() const { return sgn(q_); }

    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

private:
    mpq_class q_;
};

// q^k for a non-negative integer exponent.
Rational pow_int(const Rational& q, unsigned long k);

// Value of the normalised valuation: a rational, or infinity (v(0) only).
class Valuation {
public:
    explicit Valuation(Rational v) : finite_(true), value_(std::move(v)) {}
    static Valuation infinity() { return Valuation(); }

    bool is_infinity() const { return !finite_; }
    const Rational& finite() const;

    std::string str() const { return finite_ ? value_.str() : "inf"; }

    Valuation operator+(const Valuation& o) const;
    static Valuation min(const Valuation& a, const Valuation& b);

    friend bool operator==(const Valuation& a, const Valuation& b);
    friend bool operator<(const Valuation& a, const Valuation& b);
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

private:
    Valuation() : finite_(false) {}
    bool finite_;
    Rational value_;
};

bool is_odd_prime(const mpz_class& p);
void require_odd_prime(const mpz_class& p);

// Exponent of the odd prime p in q; infinity iff q = 0. Exact, negative allowed.
Valuation val_p(const Rational& q, const mpz_class& p);

} // namespace cpic
