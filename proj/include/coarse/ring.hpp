#pragma once

#include "coarse/rational.hpp"
#include "coarse/error.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

/// Exponent vector of a (Laurent) monomial in up to MAX_VARS variables.
constexpr int MAX_VARS = 4;
using Mono = std::array<int, MAX_VARS>;

inline Mono mono_one() { return {0, 0, 0, 0}; }
inline Mono mono_var(int v, int e = 1) {
    Mono m = mono_one();
    m[v] = e;
    return m;
}
inline Mono mono_mul(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < MAX_VARS; ++i) m[i] = a[i] + b[i];
    return m;
}

/// Sparse (Laurent) polynomial over Q (field == 0) or the prime field F_p
/// (field == p). Terms are sorted by monomial; coefficients are nonzero and,
/// over F_p, reduced to 1..p-1.
class Poly {
public:
    struct Term {
        Mono mono;
        Rat coef;
    };

    Poly() : field_(0) {}
    explicit Poly(int field) : field_(field) {}

    static Poly constant(int field, const Rat& c);
    static Poly variable(int field, int v, int exp = 1);
    static Poly monomial(int field, const Mono& m, const Rat& c);

    int field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == mono_one());
    }
    Rat constant_value() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const std::vector<Term>& terms() const { return terms_; }

    /// Max / min exponent of variable v over the terms (nullopt when zero).
    std::optional<int> degree(int v) const;
    std::optional<int> order(int v) const;

    /// Variables that appear with nonzero exponent.
    std::vector<int> used_vars() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly shifted(const Mono& m) const;  // multiply by a monomial

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.terms_size_eq(b);
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Classical univariate division in variable v: *this = q*d + r with
    /// deg_v(r) < deg_v(d). Requires classical exponents (>= 0) in v and no
    /// other variables in either operand.
    std::pair<Poly, Poly> divmod(const Poly& d, int v) const;

    /// Exact division test; returns the quotient when the remainder is zero.
    std::optional<Poly> exact_div(const Poly& d, int v) const;

    /// Substitute var v := t (all other variables must be absent).
    Rat eval(const Rat& t, int v = 0) const;

    std::string str(const std::vector<std::string>& var_names = {"X", "Y", "Z", "W"}) const;

private:
    int field_;
    std::vector<Term> terms_;

    bool terms_size_eq(const Poly& b) const;
    Rat reduce(const Rat& c) const;
    void push_term(const Mono& m, const Rat& c);
    void normalize();

    friend class PolyBuilder;
};

/// Univariate gcd over the coefficient field, monic result. Both arguments
/// must be classical in v and free of other variables.
Poly poly_gcd(const Poly& a, const Poly& b, int v);

/// Element of a fraction field over Q or F_p: a Laurent polynomial numerator
/// over a canonical denominator. Invariants: den is monic with a nonzero
/// constant term and shares no factor with num; den == 1 whenever possible
/// (Laurent monomial denominators are absorbed into num). Fractions with a
/// genuinely multivariate denominator are unsupported.
class RingElement {
public:
    RingElement() : num_(0), den_(Poly::constant(0, Rat(1))) {}
    RingElement(const Poly& n) : num_(n), den_(Poly::constant(n.field(), Rat(1))) {}
    RingElement(const Poly& n, const Poly& d) { assign(n, d); }

    static RingElement from_rat(int field, const Rat& c) {
        return RingElement(Poly::constant(field, c));
    }
    static RingElement var(int field, int v, int exp = 1) {
        return RingElement(Poly::variable(field, v, exp));
    }

    int field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_polynomial() const { return den_.is_constant(); }

    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator/(const RingElement& a, const RingElement& b);
    RingElement operator-() const;
    RingElement inverse() const;
    RingElement pow(int k) const;

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    std::string str(const std::vector<std::string>& var_names = {"X", "Y", "Z", "W"}) const;

private:
    Poly num_, den_;
    void assign(const Poly& n, const Poly& d);
};

/// Parse "p/q" rationals, variables X,Y,Z,W or X1..X4, integer powers
/// (negative allowed), +, -, *, and parentheses.
RingElement parse_ring_element(const std::string& text, int field);

} // namespace coarse
