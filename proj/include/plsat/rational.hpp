#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace plsat {

// Exact rational on int64 with canonical form (den > 0, gcd-reduced).
// Layout code never touches floating point; comparisons cross-multiply
// in 128 bits so grid coordinates up to ~1e9 are safe.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational: divide by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_integer() const { return den == 1; }

    // Round half away from zero; deterministic everywhere it is used.
    std::int64_t rounded() const {
        std::int64_t q = num / den, r = num % den;
        if (2 * (r < 0 ? -r : r) >= den) q += (num < 0 ? -1 : 1);
        return q;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num;
        if (r.den != 1) os << '/' << r.den;
        return os;
    }
};

inline Rational rat_abs(const Rational& r) { return r.num < 0 ? -r : r; }

}  // namespace plsat
