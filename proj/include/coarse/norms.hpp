#pragma once

#include "coarse/ring.hpp"

#include <memory>

namespace coarse {

/// Value of a multiplicative norm. Discrete norms report an integer exponent
/// k meaning gamma = base^k, with a distinguished ZERO for gamma(0); the
/// rational-evaluation seminorm reports an exact nonnegative rational.
/// Exponents add under multiplication and ZERO absorbs.
class NormValue {
public:
    static NormValue zero() { return NormValue(K_ZERO, 0, Rat(0)); }
    static NormValue exponent(long long e) { return NormValue(K_EXP, e, Rat(0)); }
    static NormValue real(const Rat& v) { return NormValue(K_REAL, 0, v); }

    bool is_zero() const { return kind_ == K_ZERO; }
    bool is_exponent() const { return kind_ == K_EXP; }
    bool is_real() const { return kind_ == K_REAL; }

    long long exp() const {
        if (kind_ != K_EXP) throw Error(Err::DOMAIN_MISMATCH, "norm value has no exponent");
        return exp_;
    }
    const Rat& real_value() const {
        if (kind_ != K_REAL) throw Error(Err::DOMAIN_MISMATCH, "norm value is not real-valued");
        return real_;
    }

    /// gamma(x) <= base^k, exact. ZERO satisfies every bound.
    bool leq_exp(long long k) const {
        if (kind_ == K_ZERO) return true;
        return exp() <= k;
    }

    friend NormValue operator*(const NormValue& a, const NormValue& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.kind_ == K_REAL || b.kind_ == K_REAL)
            return real(a.real_ * b.real_);
        return exponent(a.exp_ + b.exp_);
    }

    /// Order within one norm: ZERO below every nonzero value.
    friend bool operator<=(const NormValue& a, const NormValue& b) {
        if (a.is_zero()) return true;
        if (b.is_zero()) return false;
        if (a.kind_ != b.kind_)
            throw Error(Err::DOMAIN_MISMATCH, "comparing values of different norm kinds");
        return a.kind_ == K_EXP ? a.exp_ <= b.exp_ : a.real_ <= b.real_;
    }
    friend bool operator==(const NormValue& a, const NormValue& b) {
        return a.kind_ == b.kind_ && a.exp_ == b.exp_ && a.real_ == b.real_;
    }

    static NormValue max(const NormValue& a, const NormValue& b) { return a <= b ? b : a; }

private:
    enum Kind { K_ZERO, K_EXP, K_REAL };
    NormValue(Kind k, long long e, const Rat& r) : kind_(k), exp_(e), real_(r) {}
    Kind kind_;
    long long exp_;
    Rat real_;
};

/// One of the catalog norms. `scale` is the natural-log base factor of one
/// exponent unit (1 for degree/order norms with base e, ln(p) for p-adic);
/// comparisons stay in exact exponent units and never materialize the log.
class Norm {
public:
    enum class Kind { Degree, PAdic, OrderAt, Gauss, Eval };

    static Norm degree(int var = 0);
    static Norm p_adic(long long p);
    /// Order of vanishing at a monic prime polynomial Q (univariate in `var`).
    static Norm order_at(const Poly& q, int var = 0);
    /// Gauss extension of `base` to polynomials in `var`:
    /// gamma(P) = max over coefficients of base(coefficient).
    static Norm gauss(std::shared_ptr<const Norm> base, int var);
    /// Evaluation x -> |x(t)| at an exact rational point. A seminorm: it can
    /// vanish on nonzero elements (t replaces a transcendental), so the
    /// multiplicative-norm axioms are not all asserted for this variant.
    static Norm eval_at(const Rat& t, int var = 0);

    Kind kind() const { return kind_; }
    bool non_archimedean() const { return kind_ != Kind::Eval; }
    double scale() const { return scale_; }
    long long prime() const { return p_; }
    int var() const { return var_; }
    const Rat& eval_point() const { return t_; }
    const Poly& order_poly() const { return q_; }
    const Norm& base() const { return *base_; }

    NormValue operator()(const RingElement& x) const;

    std::string describe() const;

private:
    Norm() : q_(0) {}
    Kind kind_ = Kind::Degree;
    int var_ = 0;
    long long p_ = 0;
    Rat t_;
    Poly q_;
    std::shared_ptr<const Norm> base_;
    double scale_ = 1.0;
};

/// norm_eval as a free function mirror of Norm::operator().
NormValue norm_eval(const Norm& norm, const RingElement& x);

} // namespace coarse
