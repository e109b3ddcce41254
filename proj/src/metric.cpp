#include "coarse/metric.hpp"

#include <algorithm>
#include <random>

namespace coarse {

Subset subset_union(const Subset& a, const Subset& b) {
    Subset out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Subset subset_intersect(const Subset& a, const Subset& b) {
    Subset out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool subset_contains(const Subset& a, int x) {
    return std::binary_search(a.begin(), a.end(), x);
}

bool subsets_disjoint(const Subset& a, const Subset& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return false;
    }
    return true;
}

class SpaceBuilder {
public:
    static std::shared_ptr<const FiniteMetricSpace> make(
        std::vector<std::string> names, FiniteMetricSpace::DistFn fn,
        bool unit_separated) {
        auto sp = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
        sp->names_ = std::move(names);
        sp->fn_ = std::move(fn);
        sp->unit_separated_ = unit_separated;
        return sp;
    }
};

namespace {

void check_triple(const FiniteMetricSpace::DistFn& fn, int a, int b, int c) {
    Ext ab = fn(a, b), bc = fn(b, c), ac = fn(a, c);
    if (ac > ab + bc)
        throw Error(Err::INVALID_SPEC, "triangle inequality fails on a triple");
}

void validate(const std::vector<std::string>& names,
              const FiniteMetricSpace::DistFn& fn, bool full,
              int sample_triples, unsigned long long seed) {
    int n = (int)names.size();
    for (int i = 0; i < n; ++i)
        if (!(fn(i, i) == Ext(Rat(0))))
            throw Error(Err::INVALID_SPEC, "d(x,x) != 0 at " + names[i]);
    if (full) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Ext d = fn(i, j);
                if (!(d == fn(j, i)))
                    throw Error(Err::INVALID_SPEC, "asymmetric distance");
                // Explicit-matrix spaces are genuine metrics; distance-zero
                // distinct points occur only in generated pseudo-metrics.
                if (!d.is_inf() && d.finite().sign() <= 0)
                    throw Error(Err::INVALID_SPEC,
                                "nonpositive distance between distinct points");
            }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check_triple(fn, a, b, c);
    } else if (n >= 2) {
        std::mt19937_64 rng(seed);
        for (int t = 0; t < sample_triples; ++t) {
            int a = (int)(rng() % n), b = (int)(rng() % n), c = (int)(rng() % n);
            check_triple(fn, a, b, c);
        }
    }
}

} // namespace

std::shared_ptr<const FiniteMetricSpace> FiniteMetricSpace::from_matrix(
    std::vector<std::string> names, std::vector<std::vector<Ext>> dist,
    int full_check_limit, int sample_triples, unsigned long long seed) {
    int n = (int)names.size();
    if ((int)dist.size() != n)
        throw Error(Err::INVALID_SPEC, "distance matrix size mismatch");
    for (auto& row : dist)
        if ((int)row.size() != n)
            throw Error(Err::INVALID_SPEC, "distance matrix not square");
    auto mat = std::make_shared<std::vector<std::vector<Ext>>>(std::move(dist));
    DistFn fn = [mat](int i, int j) { return (*mat)[i][j]; };
    validate(names, fn, n <= full_check_limit, sample_triples, seed);
    bool unit = true;
    for (int i = 0; i < n && unit; ++i)
        for (int j = i + 1; j < n && unit; ++j)
            if (fn(i, j) < Rat(1)) unit = false;
    return SpaceBuilder::make(std::move(names), std::move(fn), unit);
}

std::shared_ptr<const FiniteMetricSpace> FiniteMetricSpace::from_function(
    std::vector<std::string> names, DistFn fn, bool unit_separated,
    int sample_triples, unsigned long long seed) {
    validate(names, fn, false, sample_triples, seed);
    return SpaceBuilder::make(std::move(names), std::move(fn), unit_separated);
}

int FiniteMetricSpace::index_of(const std::string& name) const {
    for (int i = 0; i < (int)names_.size(); ++i)
        if (names_[i] == name) return i;
    throw Error(Err::INVALID_SPEC, "unknown point id '" + name + "'");
}

Ext FiniteMetricSpace::set_dist(const Subset& a, const Subset& b) const {
    Ext best = Ext::inf();
    for (int x : a)
        for (int y : b) {
            Ext d = dist(x, y);
            if (d < best) best = d;
        }
    return best;
}

Ext FiniteMetricSpace::point_set_dist(int x, const Subset& a) const {
    Ext best = Ext::inf();
    for (int y : a) {
        Ext d = dist(x, y);
        if (d < best) best = d;
    }
    return best;
}

Subset FiniteMetricSpace::all_points() const {
    Subset a(size());
    for (int i = 0; i < size(); ++i) a[i] = i;
    return a;
}

void MetricFamily::require_common_ambient() const {
    for (size_t i = 1; i < members.size(); ++i)
        if (members[i].space != members[0].space)
            throw Error(Err::AMBIENT_MISMATCH, "family members span distinct ambient spaces");
}

bool is_r_disjoint(const MetricFamily& family, const Rat& r) {
    family.require_common_ambient();
    const auto& m = family.members;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j) {
            if (m[i].points.empty() || m[j].points.empty()) continue;
            if (m[i].space->set_dist(m[i].points, m[j].points) < r) return false;
        }
    return true;
}

Rat diameter(const FiniteMetricSpace& space, const Subset& pts) {
    Rat best(0);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            Ext d = space.dist(pts[i], pts[j]);
            if (d.is_inf())
                throw Error(Err::INFINITE_DIAMETER,
                            space.name(pts[i]) + " and " + space.name(pts[j]) +
                                " lie in different components");
            if (d.finite() > best) best = d.finite();
        }
    return best;
}

Rat diameter(const FiniteMetricSpace& space) {
    return diameter(space, space.all_points());
}

bool is_bounded(const MetricFamily& family, const Rat& bound) {
    for (const auto& m : family.members)
        if (diameter(*m.space, m.points) > bound) return false;
    return true;
}

Subset neighborhood(const FiniteMetricSpace& space, const Subset& x, const Rat& t) {
    Subset out;
    for (int p = 0; p < space.size(); ++p)
        if (space.point_set_dist(p, x) <= t) out.push_back(p);
    return out;
}

EnlargedIntersection enlarged_intersection(
    const FiniteMetricSpace& space, const std::vector<Subset>& c_family,
    const std::vector<Subset>& d_family, const Subset& z, const Rat& t) {
    EnlargedIntersection out;
    std::vector<Subset> nc, nd;
    nc.reserve(c_family.size());
    nd.reserve(d_family.size());
    for (const auto& c : c_family) nc.push_back(neighborhood(space, c, t));
    for (const auto& d : d_family) nd.push_back(neighborhood(space, d, t));
    for (size_t i = 0; i < nc.size(); ++i)
        for (size_t j = 0; j < nd.size(); ++j) {
            Subset w = subset_intersect(subset_intersect(nc[i], nd[j]), z);
            if (!w.empty()) {
                out.whole = subset_union(out.whole, w);
                out.pieces.push_back({(int)i, (int)j, std::move(w)});
            }
        }
    return out;
}

int bounded_geometry_profile(const FiniteMetricSpace& space, const Rat& r) {
    int best = 0;
    for (int c = 0; c < space.size(); ++c) {
        int count = 0;
        for (int x = 0; x < space.size(); ++x)
            if (space.dist(c, x) <= r) ++count;
        best = std::max(best, count);
    }
    return best;
}

CoarseMapReport check_coarse_map(const CoarseMapWitness& w) {
    CoarseMapReport rep;
    for (size_t e = 0; e < w.entries.size(); ++e) {
        const auto& ent = w.entries[e];
        const auto& src = w.src.members.at(ent.src_member);
        const auto& dst = w.dst.members.at(ent.dst_member);
        if (ent.image.size() != src.points.size())
            throw Error(Err::INVALID_SPEC, "coarse map not total on member");
        for (int im : ent.image)
            if (!subset_contains(dst.points, im))
                throw Error(Err::INVALID_SPEC, "coarse map image leaves target member");
        int n = (int)src.points.size();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Ext dxy = src.space->dist(src.points[i], src.points[j]);
                Ext dff = dst.space->dist(ent.image[i], ent.image[j]);
                if (dxy.is_inf()) continue;
                if (!(dff <= Ext(w.rho.eval(dxy.finite())))) {
                    rep.expansive = false;
                    rep.violations.push_back({(int)e, i, j, true});
                }
                if (!(Ext(w.delta.eval(dxy.finite())) <= dff)) {
                    rep.proper = false;
                    rep.violations.push_back({(int)e, i, j, false});
                }
            }
    }
    return rep;
}

} // namespace coarse
