#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <functional>
#include <cmath>

namespace coarse {

/// Exact rational on 64-bit numerator/denominator with 128-bit intermediates.
/// Denominator is always positive, gcd(num,den) == 1. Overflow throws.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) { assign(n, d); }

    static Rat from_string(const std::string& s);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rat operator-() const { return Rat(-num_, den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat abs() const { return num_ < 0 ? -*this : *this; }

    /// Largest integer <= value.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const { return -((-*this).floor()); }

    double to_double() const { return double(num_) / double(den_); }

    /// Exact conversion of a finite double (doubles are dyadic rationals).
    /// Throws if the value does not fit in 64/64 bits.
    static Rat from_double_exact(double x);

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;
    long long num_, den_;

    void assign(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n; den_ = d;
    }

    static Rat from_i128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: 64-bit overflow");
        Rat r; r.num_ = (long long)n; r.den_ = (long long)d;
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a;
    }
};

inline Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("Rat: cannot parse '" + s + "'");
    }
}

inline Rat Rat::from_double_exact(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rat: non-finite double");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);     // x = m * 2^exp, |m| in [0.5, 1)
    long long mant = (long long)std::ldexp(m, 53);
    exp -= 53;
    Rat r(mant);
    while (exp > 0) { r *= Rat(2); --exp; }
    while (exp < 0) { r /= Rat(2); ++exp; }
    return r;
}

/// Rational extended with an infinite sentinel ordered above all rationals.
/// Distances between points in different components are Ext::inf().
class Ext {
public:
    Ext() : inf_(false), v_() {}
    Ext(const Rat& v) : inf_(false), v_(v) {}
    Ext(long long v) : inf_(false), v_(v) {}
    static Ext inf() { Ext e; e.inf_ = true; return e; }

    bool is_inf() const { return inf_; }
    const Rat& finite() const {
        if (inf_) throw std::domain_error("Ext: infinite value where finite required");
        return v_;
    }

    friend Ext operator+(const Ext& a, const Ext& b) {
        if (a.inf_ || b.inf_) return inf();
        return Ext(a.v_ + b.v_);
    }

    friend bool operator==(const Ext& a, const Ext& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.v_ == b.v_;
    }
    friend bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }
    friend bool operator<(const Ext& a, const Ext& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const Ext& a, const Ext& b) { return b < a; }
    friend bool operator<=(const Ext& a, const Ext& b) { return !(b < a); }
    friend bool operator>=(const Ext& a, const Ext& b) { return !(a < b); }

    friend bool operator<(const Ext& a, const Rat& b) { return a < Ext(b); }
    friend bool operator>=(const Ext& a, const Rat& b) { return a >= Ext(b); }
    friend bool operator<=(const Ext& a, const Rat& b) { return a <= Ext(b); }

    std::string str() const { return inf_ ? "inf" : v_.str(); }

    static Ext from_string(const std::string& s) {
        if (s == "inf") return inf();
        return Ext(Rat::from_string(s));
    }

private:
    bool inf_;
    Rat v_;
};

} // namespace coarse
