#include "coarse/property_a.hpp"

namespace coarse {

WitnessReport verify_witness(const ExactnessWitness& w) {
    WitnessReport rep;
    rep.worst_variation = Rat(0);
    if (!w.space) throw Error(Err::INVALID_SPEC, "witness without space");
    const auto& space = *w.space;
    int n = space.size();
    if (w.phi.size() != w.cover.size())
        throw Error(Err::INVALID_SPEC, "one function per cover piece required");
    for (const auto& f : w.phi)
        if ((int)f.size() != n)
            throw Error(Err::INVALID_SPEC, "witness function not total on the space");

    for (size_t u = 0; u < w.cover.size(); ++u) {
        if (diameter(space, w.cover[u]) > w.B) {
            rep.cover_bounded = false;
            rep.detail = "cover piece " + std::to_string(u) + " exceeds the bound";
        }
        for (int x = 0; x < n; ++x) {
            const Rat& v = w.phi[u][x];
            if (v.sign() < 0 || v > Rat(1)) {
                rep.subordinate = false;
                rep.detail = "function value outside [0,1]";
            }
            if (v.sign() > 0 && !subset_contains(w.cover[u], x)) {
                rep.subordinate = false;
                rep.detail = "support of function " + std::to_string(u) +
                             " leaves its cover piece at " + space.name(x);
            }
        }
    }
    for (int x = 0; x < n; ++x) {
        Rat sum(0);
        for (const auto& f : w.phi) sum += f[x];
        if (sum != Rat(1)) {
            rep.unit_sum = false;
            rep.detail = "sum at " + space.name(x) + " is " + sum.str();
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            Ext d = space.dist(x, y);
            if (d.is_inf() || d > Ext(w.R)) continue;
            Rat var(0);
            for (const auto& f : w.phi) var += (f[x] - f[y]).abs();
            if (var > rep.worst_variation) {
                rep.worst_variation = var;
                rep.worst_pair = {x, y};
            }
        }
    rep.valid = rep.subordinate && rep.unit_sum && rep.cover_bounded &&
                rep.worst_variation <= w.eps;
    return rep;
}

ExactnessWitness pou_from_certificate(const DecompositionCertificate& cert, const Rat& R,
                                      const Rat& eps) {
    if (eps.sign() <= 0) throw Error(Err::INVALID_SPEC, "eps must be positive");
    Rat threshold = Rat(4) * R / eps;
    int round_idx = -1;
    for (int i = (int)cert.rounds.size() - 1; i >= 0; --i)
        if (cert.rounds[i].r >= threshold) {
            round_idx = i;
            break;
        }

    ExactnessWitness w;
    w.space = cert.ambient;
    w.R = R;
    w.eps = eps;
    const auto& space = *cert.ambient;
    int n = space.size();

    if (round_idx < 0) {
        // A certificate that is bounded without any qualifying round still
        // yields the constant-1 witness over its single pieces when the
        // initial family is a single member; otherwise there is no
        // construction to offer.
        auto fam = cert.initial_family();
        if (cert.rounds.empty() && fam.size() == 1) {
            w.cover = fam;
            w.phi.assign(1, std::vector<Rat>(n, Rat(0)));
            for (int p : fam[0]) w.phi[0][p] = Rat(1);
            w.B = diameter(space, fam[0]);
            return w;
        }
        throw Error(Err::NO_SUITABLE_STEP,
                    "no round has challenge >= 4R/eps = " + threshold.str());
    }

    const Rat r = cert.rounds[round_idx].r;
    std::vector<Subset> pieces = family_after_round(cert, round_idx + 1);
    Rat half = r / Rat(2);

    // Tent functions 1 - 2 d(x,P)/r clipped at 0, then exact normalization.
    std::vector<std::vector<Rat>> raw(pieces.size(), std::vector<Rat>(n, Rat(0)));
    for (size_t u = 0; u < pieces.size(); ++u)
        for (int x = 0; x < n; ++x) {
            Ext d = space.point_set_dist(x, pieces[u]);
            if (d.is_inf() || d > Ext(half)) continue;
            raw[u][x] = Rat(1) - Rat(2) * d.finite() / r;
        }
    std::vector<Rat> sums(n, Rat(0));
    for (const auto& f : raw)
        for (int x = 0; x < n; ++x) sums[x] += f[x];
    for (int x = 0; x < n; ++x)
        if (sums[x].is_zero())
            throw Error(Err::NO_SUITABLE_STEP,
                        "round pieces do not cover " + space.name(x));
    for (auto& f : raw)
        for (int x = 0; x < n; ++x)
            if (!f[x].is_zero()) f[x] /= sums[x];

    w.cover.reserve(pieces.size());
    Rat piece_diam(0);
    for (const auto& p : pieces) {
        w.cover.push_back(neighborhood(space, p, half));
        piece_diam = std::max(piece_diam, diameter(space, p));
    }
    w.phi = std::move(raw);
    w.B = piece_diam + r;
    return w;
}

} // namespace coarse
