#include "coarse/norms.hpp"

#include <cmath>
#include <map>

namespace coarse {

Norm Norm::degree(int var) {
    Norm n;
    n.kind_ = Kind::Degree;
    n.var_ = var;
    n.scale_ = 1.0;
    return n;
}

Norm Norm::p_adic(long long p) {
    if (p < 2) throw Error(Err::INVALID_SPEC, "p-adic norm needs a prime p >= 2");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw Error(Err::INVALID_SPEC, "p-adic norm needs a prime");
    Norm n;
    n.kind_ = Kind::PAdic;
    n.p_ = p;
    n.scale_ = std::log((double)p);
    return n;
}

Norm Norm::order_at(const Poly& q, int var) {
    if (q.is_zero() || q.is_constant())
        throw Error(Err::INVALID_SPEC, "order norm needs a nonconstant polynomial");
    Norm n;
    n.kind_ = Kind::OrderAt;
    n.q_ = q;
    n.var_ = var;
    n.scale_ = 1.0;
    return n;
}

Norm Norm::gauss(std::shared_ptr<const Norm> base, int var) {
    if (!base || !base->non_archimedean())
        throw Error(Err::INVALID_SPEC, "Gauss extension needs a non-archimedean base norm");
    Norm n;
    n.kind_ = Kind::Gauss;
    n.base_ = std::move(base);
    n.var_ = var;
    n.scale_ = n.base_->scale();
    return n;
}

Norm Norm::eval_at(const Rat& t, int var) {
    Norm n;
    n.kind_ = Kind::Eval;
    n.t_ = t;
    n.var_ = var;
    return n;
}

namespace {

long long padic_val(long long n, long long p) {
    long long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Multiplicity of the factor q in a nonzero polynomial (variable v).
long long order_at_poly(const Poly& x, const Poly& q, int v) {
    // Strip any Laurent monomial first; X^k carries no factor of a prime q
    // other than X itself.
    Poly work = x;
    int ord = work.order(v).value_or(0);
    if (ord != 0) work = work.shifted(mono_var(v, -ord));
    long long mult = 0;
    if (q.is_monomial() && q.terms()[0].mono == mono_var(v, 1)) return ord;
    for (;;) {
        auto quo = work.exact_div(q, v);
        if (!quo) return mult;
        work = *quo;
        ++mult;
    }
}

/// Coefficients of x grouped by the exponent of variable v.
std::map<int, Poly> coefficients_in(const Poly& x, int v) {
    std::map<int, Poly> out;
    for (const auto& t : x.terms()) {
        Mono rest = t.mono;
        rest[v] = 0;
        auto it = out.find(t.mono[v]);
        Poly piece = Poly::monomial(x.field(), rest, t.coef);
        if (it == out.end()) out.emplace(t.mono[v], piece);
        else it->second = it->second + piece;
    }
    return out;
}

} // namespace

NormValue Norm::operator()(const RingElement& x) const {
    if (x.is_zero()) return NormValue::zero();
    switch (kind_) {
        case Kind::Degree: {
            int dn = x.num().degree(var_).value_or(0);
            int dd = x.den().degree(var_).value_or(0);
            return NormValue::exponent(dn - dd);
        }
        case Kind::PAdic: {
            Rat c = x.num().constant_value() / x.den().constant_value();
            long long v = padic_val(std::llabs(c.num()), p_) - padic_val(c.den(), p_);
            return NormValue::exponent(-v);
        }
        case Kind::OrderAt: {
            long long v = order_at_poly(x.num(), q_, var_) - order_at_poly(x.den(), q_, var_);
            return NormValue::exponent(-v);
        }
        case Kind::Gauss: {
            auto part = [&](const Poly& p) {
                NormValue best = NormValue::zero();
                for (const auto& [e, coef] : coefficients_in(p, var_))
                    best = NormValue::max(best, (*base_)(RingElement(coef)));
                return best;
            };
            NormValue n = part(x.num()), d = part(x.den());
            return NormValue::exponent(n.exp() - d.exp());
        }
        case Kind::Eval: {
            Rat vn = x.num().eval(t_, var_);
            Rat vd = x.den().eval(t_, var_);
            if (vd.is_zero())
                throw Error(Err::DOMAIN_MISMATCH, "evaluation point is a pole");
            return NormValue::real((vn / vd).abs());
        }
    }
    throw Error(Err::DOMAIN_MISMATCH, "unreachable norm kind");
}

NormValue norm_eval(const Norm& norm, const RingElement& x) { return norm(x); }

std::string Norm::describe() const {
    switch (kind_) {
        case Kind::Degree: return "degree(var" + std::to_string(var_) + ")";
        case Kind::PAdic: return "padic(" + std::to_string(p_) + ")";
        case Kind::OrderAt: return "order_at(" + q_.str() + ")";
        case Kind::Gauss: return "gauss[" + base_->describe() + "]";
        case Kind::Eval: return "eval(" + t_.str() + ")";
    }
    return "?";
}

} // namespace coarse
