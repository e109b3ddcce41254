#include "coarse/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace coarse {

namespace {

bool mono_less(const Mono& a, const Mono& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void require_same_field(const Poly& a, const Poly& b) {
    if (a.field() != b.field())
        throw Error(Err::DOMAIN_MISMATCH, "mixed coefficient fields");
}

} // namespace

Rat Poly::reduce(const Rat& c) const {
    if (field_ == 0) return c;
    if (!c.is_integer())
        throw Error(Err::DOMAIN_MISMATCH, "non-integer coefficient over F_p");
    long long v = c.num() % field_;
    if (v < 0) v += field_;
    return Rat(v);
}

void Poly::push_term(const Mono& m, const Rat& c) {
    Rat r = reduce(c);
    if (!r.is_zero()) terms_.push_back({m, r});
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return mono_less(a.mono, b.mono); });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono) {
            Rat s = reduce(out.back().coef + t.coef);
            if (s.is_zero()) out.pop_back();
            else out.back().coef = s;
        } else {
            Rat r = reduce(t.coef);
            if (!r.is_zero()) out.push_back({t.mono, r});
        }
    }
    terms_ = std::move(out);
}

Poly Poly::constant(int field, const Rat& c) {
    Poly p(field);
    p.push_term(mono_one(), c);
    return p;
}

Poly Poly::variable(int field, int v, int exp) {
    Poly p(field);
    p.push_term(mono_var(v, exp), Rat(1));
    return p;
}

Poly Poly::monomial(int field, const Mono& m, const Rat& c) {
    Poly p(field);
    p.push_term(m, c);
    return p;
}

Rat Poly::constant_value() const {
    if (is_zero()) return Rat(0);
    if (!is_constant())
        throw Error(Err::DOMAIN_MISMATCH, "non-constant element where a scalar was required");
    return terms_[0].coef;
}

std::optional<int> Poly::degree(int v) const {
    if (terms_.empty()) return std::nullopt;
    int best = terms_[0].mono[v];
    for (const auto& t : terms_) best = std::max(best, t.mono[v]);
    return best;
}

std::optional<int> Poly::order(int v) const {
    if (terms_.empty()) return std::nullopt;
    int best = terms_[0].mono[v];
    for (const auto& t : terms_) best = std::min(best, t.mono[v]);
    return best;
}

std::vector<int> Poly::used_vars() const {
    std::vector<int> out;
    for (int v = 0; v < MAX_VARS; ++v)
        for (const auto& t : terms_)
            if (t.mono[v] != 0) {
                out.push_back(v);
                break;
            }
    return out;
}

bool Poly::terms_size_eq(const Poly& b) const {
    if (terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == b.terms_[i].mono) || terms_[i].coef != b.terms_[i].coef)
            return false;
    return true;
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly out(a.field());
    out.terms_ = a.terms_;
    for (const auto& t : b.terms_) out.terms_.push_back(t);
    out.normalize();
    return out;
}

Poly Poly::operator-() const {
    Poly out(field_);
    for (const auto& t : terms_) out.push_term(t.mono, -t.coef);
    out.normalize();
    return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly out(a.field());
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            out.terms_.push_back({mono_mul(s.mono, t.mono), s.coef * t.coef});
    out.normalize();
    return out;
}

Poly Poly::shifted(const Mono& m) const {
    Poly out(field_);
    for (const auto& t : terms_) out.terms_.push_back({mono_mul(t.mono, m), t.coef});
    out.normalize();
    return out;
}

namespace {

Rat field_inv(int field, const Rat& c) {
    if (field == 0) return Rat(1) / c;
    // Fermat inverse in F_p.
    long long a = c.num() % field, r = 1, e = field - 2;
    if (a < 0) a += field;
    long long base = a;
    while (e) {
        if (e & 1) r = (r * base) % field;
        base = (base * base) % field;
        e >>= 1;
    }
    return Rat(r);
}

void require_classical_univariate(const Poly& p, int v, const char* who) {
    for (const auto& t : p.terms())
        for (int i = 0; i < MAX_VARS; ++i) {
            if (i != v && t.mono[i] != 0)
                throw Error(Err::DOMAIN_MISMATCH,
                            std::string(who) + ": operand not univariate");
            if (i == v && t.mono[i] < 0)
                throw Error(Err::DOMAIN_MISMATCH,
                            std::string(who) + ": negative exponent in division");
        }
}

Rat leading_coef(const Poly& p, int v, int deg) {
    for (const auto& t : p.terms())
        if (t.mono[v] == deg) return t.coef;
    return Rat(0);
}

} // namespace

std::pair<Poly, Poly> Poly::divmod(const Poly& d, int v) const {
    require_same_field(*this, d);
    if (d.is_zero()) throw Error(Err::DOMAIN_MISMATCH, "division by zero polynomial");
    require_classical_univariate(*this, v, "divmod");
    require_classical_univariate(d, v, "divmod");
    int dd = *d.degree(v);
    Rat lc = leading_coef(d, v, dd);
    Rat lcinv = field_inv(field_, lc);
    Poly r = *this;
    Poly q(field_);
    while (!r.is_zero() && *r.degree(v) >= dd) {
        int rd = *r.degree(v);
        Rat c = leading_coef(r, v, rd) * lcinv;
        Poly m = Poly::monomial(field_, mono_var(v, rd - dd), c);
        q = q + m;
        r = r - m * d;
    }
    return {q, r};
}

std::optional<Poly> Poly::exact_div(const Poly& d, int v) const {
    auto [q, r] = divmod(d, v);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

Rat Poly::eval(const Rat& t, int v) const {
    Rat out(0);
    for (const auto& term : terms_) {
        for (int i = 0; i < MAX_VARS; ++i)
            if (i != v && term.mono[i] != 0)
                throw Error(Err::DOMAIN_MISMATCH, "eval: element not univariate");
        int e = term.mono[v];
        if (e < 0 && t.is_zero())
            throw Error(Err::DOMAIN_MISMATCH, "eval: pole at 0");
        Rat p(1);
        for (int k = 0; k < (e < 0 ? -e : e); ++k) p *= t;
        if (e < 0) p = Rat(1) / p;
        out += term.coef * p;
    }
    return out;
}

std::string Poly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    // Display in reverse (highest monomial first).
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string mono_str;
        for (int v = 0; v < MAX_VARS; ++v) {
            if (it->mono[v] == 0) continue;
            if (!mono_str.empty()) mono_str += "*";
            mono_str += var_names[v];
            if (it->mono[v] != 1) mono_str += "^" + std::to_string(it->mono[v]);
        }
        Rat c = it->coef;
        std::string piece;
        if (mono_str.empty()) piece = c.str();
        else if (c == Rat(1)) piece = mono_str;
        else if (c == Rat(-1)) piece = "-" + mono_str;
        else piece = c.str() + "*" + mono_str;
        if (!out.empty() && piece[0] != '-') out += "+";
        out += piece;
    }
    return out;
}


Poly poly_gcd(const Poly& a, const Poly& b, int v) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y, v).second;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    Rat lc = leading_coef(x, v, *x.degree(v));
    return x * Poly::constant(x.field(), field_inv(x.field(), lc));
}

void RingElement::assign(const Poly& n, const Poly& d) {
    require_same_field(n, d);
    if (d.is_zero()) throw Error(Err::DOMAIN_MISMATCH, "zero denominator");
    if (n.is_zero()) {
        num_ = Poly(n.field());
        den_ = Poly::constant(n.field(), Rat(1));
        return;
    }
    Poly nn = n, dd = d;
    // Clear negative exponents by a shared monomial shift.
    Mono shift = mono_one();
    for (int v = 0; v < MAX_VARS; ++v) {
        int lo = std::min(nn.order(v).value_or(0), dd.order(v).value_or(0));
        if (lo < 0) shift[v] = -lo;
    }
    nn = nn.shifted(shift);
    dd = dd.shifted(shift);

    if (dd.is_monomial()) {
        // Exact Laurent division by a monomial denominator.
        const auto& t = dd.terms()[0];
        Mono neg;
        for (int v = 0; v < MAX_VARS; ++v) neg[v] = -t.mono[v];
        num_ = nn.shifted(neg) * Poly::constant(nn.field(), field_inv(nn.field(), t.coef));
        den_ = Poly::constant(nn.field(), Rat(1));
        return;
    }

    auto vars_n = nn.used_vars();
    auto vars_d = dd.used_vars();
    std::vector<int> all = vars_n;
    for (int v : vars_d)
        if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
    if (all.size() > 1)
        throw Error(Err::DOMAIN_MISMATCH,
                    "fractions with multivariate denominators are unsupported");
    int v = all.empty() ? 0 : all[0];
    Poly g = poly_gcd(nn, dd, v);
    if (*g.degree(v) > 0) {
        nn = *nn.exact_div(g, v);
        dd = *dd.exact_div(g, v);
    }
    // Denominator: strip its monomial factor into num, then make it monic.
    int ord = *dd.order(v);
    if (ord > 0) {
        dd = dd.shifted(mono_var(v, -ord));
        nn = nn.shifted(mono_var(v, -ord));
    }
    Rat lc = leading_coef(dd, v, *dd.degree(v));
    Rat lcinv = field_inv(dd.field(), lc);
    dd = dd * Poly::constant(dd.field(), lcinv);
    nn = nn * Poly::constant(nn.field(), lcinv);
    if (dd.is_constant()) {
        num_ = nn * Poly::constant(nn.field(), field_inv(nn.field(), dd.constant_value()));
        den_ = Poly::constant(nn.field(), Rat(1));
    } else {
        num_ = nn;
        den_ = dd;
    }
}

bool RingElement::is_one() const {
    return den_.is_constant() && den_.constant_value() == Rat(1) &&
           num_.is_constant() && !num_.is_zero() && num_.constant_value() == Rat(1);
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    return RingElement(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}
RingElement operator-(const RingElement& a, const RingElement& b) {
    return RingElement(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}
RingElement operator*(const RingElement& a, const RingElement& b) {
    return RingElement(a.num() * b.num(), a.den() * b.den());
}
RingElement operator/(const RingElement& a, const RingElement& b) {
    if (b.is_zero()) throw Error(Err::DOMAIN_MISMATCH, "division by zero");
    return RingElement(a.num() * b.den(), a.den() * b.num());
}
RingElement RingElement::operator-() const { return RingElement(-num_, den_); }

RingElement RingElement::inverse() const {
    if (is_zero()) throw Error(Err::DOMAIN_MISMATCH, "inverse of zero");
    return RingElement(den_, num_);
}

RingElement RingElement::pow(int k) const {
    RingElement base = k < 0 ? inverse() : *this;
    int e = k < 0 ? -k : k;
    RingElement out = RingElement::from_rat(field(), Rat(1));
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
}

std::string RingElement::str(const std::vector<std::string>& var_names) const {
    if (is_polynomial()) return num_.str(var_names);
    return "(" + num_.str(var_names) + ")/(" + den_.str(var_names) + ")";
}

// --- Parser ------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    int field;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    RingElement parse_expr() {
        RingElement acc = parse_term();
        for (;;) {
            skip();
            if (eat('+')) acc = acc + parse_term();
            else if (eat('-')) acc = acc - parse_term();
            else return acc;
        }
    }

    RingElement parse_term() {
        RingElement acc = parse_factor();
        for (;;) {
            skip();
            if (eat('*')) {
                acc = acc * parse_factor();
            } else if (eat('/')) {
                acc = acc / parse_factor();
            } else if (pos < s.size() &&
                       (std::isalpha((unsigned char)s[pos]) || s[pos] == '(')) {
                acc = acc * parse_factor();  // implicit product, e.g. "2X"
            } else {
                return acc;
            }
        }
    }

    RingElement parse_factor() {
        skip();
        if (eat('-')) return -parse_factor();
        RingElement base = parse_atom();
        skip();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            long long e = parse_int();
            return base.pow((int)(neg ? -e : e));
        }
        return base;
    }

    RingElement parse_atom() {
        skip();
        if (pos >= s.size()) throw Error(Err::INVALID_SPEC, "unexpected end of expression");
        if (eat('(')) {
            RingElement e = parse_expr();
            if (!eat(')')) throw Error(Err::INVALID_SPEC, "missing ')'");
            return e;
        }
        char c = s[pos];
        if (std::isdigit((unsigned char)c)) {
            long long n = parse_int();
            return RingElement::from_rat(field, Rat(n));
        }
        if (std::isalpha((unsigned char)c)) {
            ++pos;
            int v;
            switch (std::toupper(c)) {
                case 'X': v = 0; break;
                case 'Y': v = 1; break;
                case 'Z': v = 2; break;
                case 'W': v = 3; break;
                default: throw Error(Err::INVALID_SPEC, std::string("unknown variable ") + c);
            }
            if (std::toupper(c) == 'X' && pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                v = (int)(s[pos] - '1');  // X1..X4
                if (v < 0 || v >= MAX_VARS)
                    throw Error(Err::INVALID_SPEC, "variable index out of range");
                ++pos;
            }
            return RingElement::var(field, v);
        }
        throw Error(Err::INVALID_SPEC, std::string("unexpected character '") + c + "'");
    }

    long long parse_int() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos) throw Error(Err::INVALID_SPEC, "expected integer");
        return std::stoll(s.substr(start, pos - start));
    }
};

} // namespace

RingElement parse_ring_element(const std::string& text, int field) {
    Parser p{text, 0, field};
    RingElement e = p.parse_expr();
    p.skip();
    if (p.pos != text.size())
        throw Error(Err::INVALID_SPEC, "trailing input in '" + text + "'");
    return e;
}

} // namespace coarse
