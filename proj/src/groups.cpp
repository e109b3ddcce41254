#include "coarse/groups.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <queue>
#include <sstream>

namespace coarse {

// --- Lamplighter algebra -------------------------------------------------------

namespace {

long long lamp_reduce(long long v, long long modulus) {
    if (modulus == 0) return v;
    v %= modulus;
    if (v < 0) v += modulus;
    return v;
}

void lamp_set(std::vector<std::pair<long long, long long>>& lamps, long long pos,
              long long val, long long modulus) {
    val = lamp_reduce(val, modulus);
    auto it = std::lower_bound(lamps.begin(), lamps.end(), pos,
                               [](const auto& p, long long x) { return p.first < x; });
    if (it != lamps.end() && it->first == pos) {
        long long next = lamp_reduce(it->second + val, modulus);
        if (next == 0) lamps.erase(it);
        else it->second = next;
    } else if (val != 0) {
        lamps.insert(it, {pos, val});
    }
}

long long lamp_cost(long long v, long long modulus) {
    if (modulus == 0) return std::llabs(v);
    long long r = lamp_reduce(v, modulus);
    return std::min(r, modulus - r);
}

} // namespace

std::string LampElement::str() const {
    std::ostringstream os;
    os << cursor << "|";
    for (size_t i = 0; i < lamps.size(); ++i) {
        if (i) os << ",";
        os << lamps[i].first << ":" << lamps[i].second;
    }
    return os.str();
}

LampElement lamp_mul(const LampElement& a, const LampElement& b, long long modulus) {
    LampElement out = a;
    for (const auto& [pos, val] : b.lamps)
        lamp_set(out.lamps, pos + a.cursor, val, modulus);
    out.cursor = a.cursor + b.cursor;
    return out;
}

LampElement lamp_inverse(const LampElement& a, long long modulus) {
    LampElement out;
    out.cursor = -a.cursor;
    for (const auto& [pos, val] : a.lamps)
        lamp_set(out.lamps, pos - a.cursor, -val, modulus);
    return out;
}

Rat lamplighter_length(const LampElement& g, long long modulus) {
    long long toggles = 0;
    long long lo = std::min<long long>(0, g.cursor);
    long long hi = std::max<long long>(0, g.cursor);
    for (const auto& [pos, val] : g.lamps) {
        toggles += lamp_cost(val, modulus);
        lo = std::min(lo, pos);
        hi = std::max(hi, pos);
    }
    // Optimal walk from 0 to cursor covering [lo, hi]: sweep one way, then
    // the other.
    long long left_first = (hi - lo) + (hi - g.cursor) + (-lo);
    long long right_first = (hi - lo) + (g.cursor - lo) + hi;
    return Rat(toggles + std::min(left_first, right_first));
}

Rat weighted_abelian_length(const IntVec& a) {
    Rat out(0);
    for (size_t i = 0; i < a.size(); ++i)
        out += Rat((long long)(i + 1)) * Rat(std::llabs(a[i]));
    return out;
}

// --- Ball generation -----------------------------------------------------------

namespace {

std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

Rat abelian_dist(const IntVec& a, const IntVec& b, const std::vector<Rat>& weights) {
    Rat out(0);
    for (size_t i = 0; i < a.size(); ++i)
        out += weights[i] * Rat(std::llabs(b[i] - a[i]));
    return out;
}

/// Enumerate all integer vectors with weighted length <= radius.
void enumerate_vectors(const std::vector<Rat>& weights, const Rat& radius, int cap,
                       std::vector<IntVec>& out) {
    IntVec cur(weights.size(), 0);
    std::function<void(size_t, Rat)> rec = [&](size_t i, Rat left) {
        if (i == weights.size()) {
            out.push_back(cur);
            if ((int)out.size() > cap)
                throw Error(Err::BALL_TOO_LARGE, "ball exceeds element cap");
            return;
        }
        long long span = (left / weights[i]).floor();
        for (long long v = -span; v <= span; ++v) {
            cur[i] = v;
            rec(i + 1, left - weights[i] * Rat(std::llabs(v)));
        }
        cur[i] = 0;
    };
    rec(0, radius);
}

GroupBall ball_abelian(const GroupSpec& spec, const std::vector<Rat>& weights,
                       const Rat& radius, int cap) {
    for (const Rat& w : weights)
        if (w < Rat(1))
            throw Error(Err::INVALID_SPEC,
                        "generator weights below 1 break the unit separation of group balls");
    GroupBall b;
    b.spec = spec;
    b.radius = radius;
    enumerate_vectors(weights, radius, cap, b.vec_elems);
    std::sort(b.vec_elems.begin(), b.vec_elems.end());
    std::vector<std::string> names;
    names.reserve(b.vec_elems.size());
    for (const auto& v : b.vec_elems) names.push_back(vec_str(v));
    auto elems = std::make_shared<std::vector<IntVec>>(b.vec_elems);
    auto w = std::make_shared<std::vector<Rat>>(weights);
    b.space = FiniteMetricSpace::from_function(
        std::move(names),
        [elems, w](int i, int j) { return Ext(abelian_dist((*elems)[i], (*elems)[j], *w)); },
        true);
    return b;
}

GroupBall ball_lamplighter(const LamplighterSpec& ls, const Rat& radius, int cap) {
    if (ls.lamp_modulus < 0 || ls.lamp_modulus == 1)
        throw Error(Err::INVALID_SPEC, "lamp group must be Z (0) or Z/p with p >= 2");
    GroupBall b;
    b.spec = ls;
    b.radius = radius;

    // Plain BFS over the symmetric generators; all have length 1.
    std::vector<LampElement> gens;
    {
        LampElement t;
        t.cursor = 1;
        gens.push_back(t);
        gens.push_back(lamp_inverse(t, ls.lamp_modulus));
        LampElement a;
        a.lamps = {{0, 1}};
        gens.push_back(a);
        LampElement ainv = lamp_inverse(a, ls.lamp_modulus);
        if (!(ainv == a)) gens.push_back(ainv);
    }
    std::map<std::string, int> seen;
    std::queue<std::pair<LampElement, long long>> frontier;
    LampElement id;
    seen[id.str()] = 0;
    frontier.push({id, 0});
    b.lamp_elems.push_back(id);
    long long rad = radius.floor();
    while (!frontier.empty()) {
        auto [g, d] = frontier.front();
        frontier.pop();
        if (d == rad) continue;
        for (const auto& s : gens) {
            LampElement h = lamp_mul(g, s, ls.lamp_modulus);
            std::string key = h.str();
            if (seen.count(key)) continue;
            if ((int)b.lamp_elems.size() >= cap)
                throw Error(Err::BALL_TOO_LARGE, "ball exceeds element cap");
            seen[key] = (int)b.lamp_elems.size();
            b.lamp_elems.push_back(h);
            frontier.push({h, d + 1});
        }
    }
    std::vector<std::string> names;
    names.reserve(b.lamp_elems.size());
    for (const auto& e : b.lamp_elems) names.push_back(e.str());
    auto elems = std::make_shared<std::vector<LampElement>>(b.lamp_elems);
    long long mod = ls.lamp_modulus;
    b.space = FiniteMetricSpace::from_function(
        std::move(names),
        [elems, mod](int i, int j) {
            return Ext(lamplighter_length(
                lamp_mul(lamp_inverse((*elems)[i], mod), (*elems)[j], mod), mod));
        },
        true);
    return b;
}

GroupBall ball_matrix(const MatrixGroupSpec& ms, const Rat& radius, int cap) {
    if (ms.generators.empty())
        throw Error(Err::INVALID_SPEC, "matrix group needs at least one generator");
    if (ms.length.parts.empty())
        throw Error(Err::INVALID_SPEC, "matrix ball needs a length function");
    GroupBall b;
    b.spec = ms;
    b.radius = radius;

    std::vector<MatrixOverRing> gens = ms.generators;
    for (const auto& g : ms.generators) {
        MatrixOverRing gi = g.inverse();
        bool have = false;
        for (const auto& h : gens)
            if (h == gi) {
                have = true;
                break;
            }
        if (!have) gens.push_back(gi);
    }

    // Closure under generators, pruning by the supplied length: elements past
    // the radius are not expanded (and not kept).
    std::map<std::string, int> seen;
    MatrixOverRing id = MatrixOverRing::identity(ms.dim, ms.field);
    b.mat_elems.push_back(id);
    seen[id.str()] = 0;
    std::queue<int> frontier;
    frontier.push(0);
    while (!frontier.empty()) {
        int gi = frontier.front();
        frontier.pop();
        MatrixOverRing g = b.mat_elems[gi];
        for (const auto& s : gens) {
            MatrixOverRing h = g * s;
            if (ms.length(h) > radius) continue;
            std::string key = h.str();
            if (seen.count(key)) continue;
            if ((int)b.mat_elems.size() >= cap)
                throw Error(Err::BALL_TOO_LARGE, "ball exceeds element cap");
            seen[key] = (int)b.mat_elems.size();
            b.mat_elems.push_back(h);
            frontier.push((int)b.mat_elems.size() - 1);
        }
    }
    std::vector<std::string> names;
    names.reserve(b.mat_elems.size());
    for (const auto& e : b.mat_elems) names.push_back(e.str());
    auto elems = std::make_shared<std::vector<MatrixOverRing>>(b.mat_elems);
    auto len = std::make_shared<LengthFunction>(ms.length);
    b.space = FiniteMetricSpace::from_function(
        std::move(names),
        [elems, len](int i, int j) {
            if (i == j) return Ext(Rat(0));
            return Ext((*len)((*elems)[i].inverse() * (*elems)[j]));
        },
        false);  // norm lengths are pseudo-metrics; distinct elements can sit at 0
    return b;
}

} // namespace

GroupBall ball(const GroupSpec& spec, const Rat& radius, int cap) {
    if (radius.sign() < 0) throw Error(Err::INVALID_SPEC, "radius must be nonnegative");
    if (std::holds_alternative<FreeAbelianSpec>(spec)) {
        const auto& fa = std::get<FreeAbelianSpec>(spec);
        if (fa.n < 1 || fa.n > 16) throw Error(Err::INVALID_SPEC, "rank out of range");
        std::vector<Rat> weights = fa.weights;
        if (weights.empty()) weights.assign(fa.n, Rat(1));
        if ((int)weights.size() != fa.n)
            throw Error(Err::INVALID_SPEC, "weight count must match rank");
        return ball_abelian(spec, weights, radius, cap);
    }
    if (std::holds_alternative<WeightedDirectSumSpec>(spec)) {
        const auto& ws = std::get<WeightedDirectSumSpec>(spec);
        if (ws.cutoff < 1 || ws.cutoff > 64)
            throw Error(Err::INVALID_SPEC, "cutoff out of range");
        std::vector<Rat> weights;
        for (int i = 1; i <= ws.cutoff; ++i) weights.push_back(Rat(i));
        return ball_abelian(spec, weights, radius, cap);
    }
    if (std::holds_alternative<LamplighterSpec>(spec))
        return ball_lamplighter(std::get<LamplighterSpec>(spec), radius, cap);
    return ball_matrix(std::get<MatrixGroupSpec>(spec), radius, cap);
}

MetricFamily coset_partition(const GroupBall& b, const SubgroupSelector& sel) {
    MetricFamily fam;
    std::map<std::string, int> classes;
    auto add = [&](const std::string& key, int point) {
        auto it = classes.find(key);
        if (it == classes.end()) {
            classes.emplace(key, (int)fam.members.size());
            fam.members.push_back({b.space, {point}});
        } else {
            fam.members[it->second].points.push_back(point);
        }
    };

    if (sel.kind == SubgroupSelector::Kind::FirstCoordinates) {
        if (b.vec_elems.empty())
            throw Error(Err::UNSUPPORTED_SUBGROUP,
                        "first-coordinates subgroups apply to abelian balls");
        if (sel.n < 0) throw Error(Err::UNSUPPORTED_SUBGROUP, "negative coordinate count");
        for (int p = 0; p < (int)b.vec_elems.size(); ++p) {
            const IntVec& v = b.vec_elems[p];
            std::ostringstream key;
            for (size_t i = sel.n; i < v.size(); ++i) key << v[i] << ",";
            add(key.str(), p);
        }
    } else if (sel.kind == SubgroupSelector::Kind::PositionKernel) {
        if (b.lamp_elems.empty())
            throw Error(Err::UNSUPPORTED_SUBGROUP,
                        "the position-kernel subgroup applies to lamplighter balls");
        for (int p = 0; p < (int)b.lamp_elems.size(); ++p)
            add(std::to_string(b.lamp_elems[p].cursor), p);
    } else {
        throw Error(Err::UNSUPPORTED_SUBGROUP, "selector outside the catalog");
    }
    for (auto& m : fam.members) std::sort(m.points.begin(), m.points.end());
    return fam;
}

} // namespace coarse
