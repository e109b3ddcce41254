#include "coarse/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace coarse {

namespace {

bool satisfies_all(const RingElement& a, const std::vector<Norm>& discrete, long long k,
                   const std::vector<ArchBound>& arch) {
    for (const auto& n : discrete)
        if (!n(a).leq_exp(k)) return false;
    for (const auto& b : arch) {
        NormValue v = b.norm(a);
        if (!v.is_zero() && v.real_value() > b.s) return false;
    }
    return true;
}

/// Per-variable exponent window implied by the discrete norms. A Degree norm
/// on v caps the exponent above at k; an OrderAt(X_v) norm caps it below at
/// -k. Missing caps stay open.
struct Window {
    long long lo, hi;
    bool lo_open, hi_open;
};

std::vector<Window> exponent_windows(const RingSpec& ring, const std::vector<Norm>& discrete,
                                     long long k) {
    std::vector<Window> w(ring.nvars, {0, 0, true, true});
    bool classical = ring.kind == RingSpec::Kind::FqPoly || ring.kind == RingSpec::Kind::ZPoly;
    for (int v = 0; v < ring.nvars; ++v) {
        if (classical) {
            w[v].lo = 0;
            w[v].lo_open = false;
        }
    }
    for (const auto& n : discrete) {
        if (n.kind() == Norm::Kind::Degree) {
            auto& win = w.at(n.var());
            win.hi = win.hi_open ? k : std::min(win.hi, k);
            win.hi_open = false;
        } else if (n.kind() == Norm::Kind::OrderAt) {
            // gamma = e^{-ord} <= e^k  <=>  ord >= -k; only the X_v prime
            // bounds a monomial window directly.
            const Poly& q = n.order_poly();
            if (q.is_monomial() && q.terms()[0].mono == mono_var(n.var(), 1)) {
                auto& win = w.at(n.var());
                win.lo = win.lo_open ? -k : std::max(win.lo, -k);
                win.lo_open = false;
            }
        }
    }
    return w;
}

void enumerate_fq(const RingSpec& ring, const std::vector<Norm>& discrete, long long k,
                  const std::vector<ArchBound>& arch, long long budget,
                  std::vector<RingElement>& out) {
    auto windows = exponent_windows(ring, discrete, k);
    long long monomials = 1;
    for (const auto& win : windows) {
        if (win.lo_open || win.hi_open)
            throw Error(Err::ENUMERATION_BUDGET_EXCEEDED,
                        "discrete constraints leave a variable unbounded");
        if (win.hi < win.lo) {  // no admissible exponents: only 0 survives
            out.push_back(RingElement::from_rat(ring.field(), Rat(0)));
            return;
        }
        monomials *= (win.hi - win.lo + 1);
        if (monomials > 62)
            throw Error(Err::ENUMERATION_BUDGET_EXCEEDED, "monomial box too large");
    }
    double total = std::pow((double)ring.p, (double)monomials);
    if (total > (double)budget)
        throw Error(Err::ENUMERATION_BUDGET_EXCEEDED, "candidate box exceeds budget");

    // Lay out the monomials of the box, then run an odometer over F_p
    // coefficient assignments.
    std::vector<Mono> box;
    std::vector<long long> idx(ring.nvars, 0);
    std::function<void(int)> lay = [&](int v) {
        if (v == ring.nvars) {
            Mono m = mono_one();
            for (int i = 0; i < ring.nvars; ++i) m[i] = (int)idx[i];
            box.push_back(m);
            return;
        }
        for (long long e = windows[v].lo; e <= windows[v].hi; ++e) {
            idx[v] = e;
            lay(v + 1);
        }
    };
    lay(0);

    std::vector<long long> coef(box.size(), 0);
    for (;;) {
        Poly p((int)ring.p);
        for (size_t i = 0; i < box.size(); ++i)
            if (coef[i] != 0) p = p + Poly::monomial((int)ring.p, box[i], Rat(coef[i]));
        RingElement e(p);
        if (satisfies_all(e, discrete, k, arch)) out.push_back(std::move(e));
        size_t pos = 0;
        while (pos < coef.size() && ++coef[pos] == ring.p) coef[pos++] = 0;
        if (pos == coef.size()) break;
    }
}

void enumerate_z_poly(const std::vector<Norm>& discrete, long long k,
                      const std::vector<ArchBound>& arch, long long budget,
                      std::vector<RingElement>& out) {
    long long deg_cap = -1;
    for (const auto& n : discrete)
        if (n.kind() == Norm::Kind::Degree)
            deg_cap = deg_cap < 0 ? k : std::min(deg_cap, k);
    if (deg_cap < 0)
        throw Error(Err::ENUMERATION_BUDGET_EXCEEDED, "Z[X] needs a degree norm");
    int m = (int)deg_cap + 1;  // number of coefficients
    if ((int)arch.size() < m)
        throw Error(Err::ENUMERATION_BUDGET_EXCEEDED,
                    "Z[X] needs at least deg+1 evaluation bounds to be finite");

    // Invert the (m x m) Vandermonde at the first m evaluation points to
    // bound each coefficient: |c_j| <= sum_i |V^-1_{ji}| * s_i.
    std::vector<Rat> t(m);
    std::vector<Rat> s(m);
    for (int i = 0; i < m; ++i) {
        t[i] = arch[i].norm.eval_point();
        s[i] = arch[i].s;
        for (int j = 0; j < i; ++j)
            if (t[i] == t[j])
                throw Error(Err::ENUMERATION_BUDGET_EXCEEDED,
                            "evaluation points must be distinct");
    }
    // Gauss-Jordan on [V | I], V_{ij} = t_i^j, exact rationals.
    std::vector<std::vector<Rat>> aug(m, std::vector<Rat>(2 * m, Rat(0)));
    for (int i = 0; i < m; ++i) {
        Rat pw(1);
        for (int j = 0; j < m; ++j) {
            aug[i][j] = pw;
            pw *= t[i];
        }
        aug[i][m + i] = Rat(1);
    }
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int r = col; r < m; ++r)
            if (!aug[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error(Err::ENUMERATION_BUDGET_EXCEEDED, "singular Vandermonde");
        std::swap(aug[col], aug[piv]);
        Rat d = aug[col][col];
        for (auto& x : aug[col]) x /= d;
        for (int r = 0; r < m; ++r) {
            if (r == col || aug[r][col].is_zero()) continue;
            Rat f = aug[r][col];
            for (int c = 0; c < 2 * m; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::vector<long long> cap(m);
    long long count = 1;
    for (int j = 0; j < m; ++j) {
        Rat bound(0);
        for (int i = 0; i < m; ++i) bound += aug[j][m + i].abs() * s[i];
        cap[j] = bound.floor();
        count *= 2 * cap[j] + 1;
        if (count > budget)
            throw Error(Err::ENUMERATION_BUDGET_EXCEEDED, "coefficient box exceeds budget");
    }

    std::vector<long long> c(m);
    for (int j = 0; j < m; ++j) c[j] = -cap[j];
    for (;;) {
        Poly p(0);
        for (int j = 0; j < m; ++j)
            if (c[j] != 0) p = p + Poly::monomial(0, mono_var(0, j), Rat(c[j]));
        RingElement e(p);
        if (satisfies_all(e, discrete, k, arch)) out.push_back(std::move(e));
        int pos = 0;
        while (pos < m) {
            if (++c[pos] <= cap[pos]) break;
            c[pos] = -cap[pos];
            ++pos;
        }
        if (pos == m) break;
    }
}

void enumerate_z_inv_n(const RingSpec& ring, const std::vector<Norm>& discrete, long long k,
                       const std::vector<ArchBound>& arch, long long budget,
                       std::vector<RingElement>& out) {
    // Denominators are products p^e with p | n and the p-adic constraint
    // v_p(a) >= -k_p; primes of n without a p-adic norm leave the set infinite.
    std::vector<long long> primes;
    long long n = ring.p;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) primes.push_back(n);
    std::vector<long long> caps;
    for (long long p : primes) {
        bool found = false;
        for (const auto& nm : discrete)
            if (nm.kind() == Norm::Kind::PAdic && nm.prime() == p) {
                found = true;
                break;
            }
        if (!found)
            throw Error(Err::ENUMERATION_BUDGET_EXCEEDED,
                        "prime " + std::to_string(p) + " of the denominator is unconstrained");
        caps.push_back(k < 0 ? 0 : k);
    }
    if (arch.empty())
        throw Error(Err::ENUMERATION_BUDGET_EXCEEDED,
                    "Z[1/n] needs an archimedean bound to be finite");
    Rat s = arch[0].s;
    for (const auto& b : arch) s = std::min(s, b.s);

    // All denominators d = prod p^e, e <= cap.
    std::vector<long long> dens{1};
    for (size_t i = 0; i < primes.size(); ++i) {
        std::vector<long long> next;
        long long pw = 1;
        for (long long e = 0; e <= caps[i]; ++e) {
            for (long long d : dens) next.push_back(d * pw);
            pw *= primes[i];
        }
        dens = std::move(next);
    }
    std::sort(dens.begin(), dens.end());
    dens.erase(std::unique(dens.begin(), dens.end()), dens.end());

    std::vector<Rat> found;
    long long count = 0;
    for (long long d : dens) {
        long long hi = (s * Rat(d)).floor();
        count += 2 * hi + 1;
        if (count > budget)
            throw Error(Err::ENUMERATION_BUDGET_EXCEEDED, "candidate box exceeds budget");
        for (long long m = -hi; m <= hi; ++m) found.push_back(Rat(m, d));
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const Rat& v : found) {
        RingElement e = RingElement::from_rat(0, v);
        if (satisfies_all(e, discrete, k, arch)) out.push_back(std::move(e));
    }
}

} // namespace

std::vector<RingElement> enumerate_ball_BA(const RingSpec& ring,
                                           const std::vector<Norm>& discrete, long long k,
                                           const std::vector<ArchBound>& arch,
                                           long long budget) {
    std::vector<RingElement> out;
    switch (ring.kind) {
        case RingSpec::Kind::FqPoly:
        case RingSpec::Kind::FqLaurent:
            enumerate_fq(ring, discrete, k, arch, budget, out);
            break;
        case RingSpec::Kind::ZPoly:
            enumerate_z_poly(discrete, k, arch, budget, out);
            break;
        case RingSpec::Kind::ZInvN:
            enumerate_z_inv_n(ring, discrete, k, arch, budget, out);
            break;
    }
    return out;
}

} // namespace coarse
