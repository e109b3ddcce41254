#include "coarse/rips.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

namespace coarse {

// --- Construction -----------------------------------------------------------------

class ComplexBuilder {
public:
    static MetricSimplicialComplex make(MetricSimplicialComplex::Mode mode, SpacePtr space,
                                        Rat a, Rat b, int m, Subset special,
                                        std::vector<Subset> maximal) {
        MetricSimplicialComplex cx;
        cx.mode_ = mode;
        cx.space_ = std::move(space);
        cx.a_ = std::move(a);
        cx.b_ = std::move(b);
        cx.m_ = m;
        cx.special_ = std::move(special);
        cx.maximal_ = std::move(maximal);
        return cx;
    }
};

namespace {

constexpr int kCliqueCap = 12;

/// Bron-Kerbosch with pivoting over an explicit adjacency matrix.
void bron_kerbosch(const std::vector<std::vector<bool>>& adj, std::vector<int>& R,
                   std::vector<int> P, std::vector<int> X, std::vector<Subset>& out) {
    if ((int)R.size() > kCliqueCap)
        throw Error(Err::DIMENSION_CAP_EXCEEDED,
                    "clique larger than " + std::to_string(kCliqueCap) + " vertices");
    if (P.empty() && X.empty()) {
        Subset c = R;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
    }
    int pivot = -1, best = -1;
    for (int u : P) {
        int cnt = 0;
        for (int v : P)
            if (adj[u][v]) ++cnt;
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
    }
    for (int u : X) {
        int cnt = 0;
        for (int v : P)
            if (adj[u][v]) ++cnt;
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
    }
    std::vector<int> cand;
    for (int v : P)
        if (pivot < 0 || !adj[pivot][v]) cand.push_back(v);
    for (int v : cand) {
        std::vector<int> P2, X2;
        for (int w : P)
            if (adj[v][w]) P2.push_back(w);
        for (int w : X)
            if (adj[v][w]) X2.push_back(w);
        R.push_back(v);
        bron_kerbosch(adj, R, std::move(P2), std::move(X2), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.push_back(v);
    }
}

std::vector<Subset> maximal_cliques(const std::vector<std::vector<bool>>& adj) {
    int n = (int)adj.size();
    std::vector<int> P(n), R, X;
    for (int i = 0; i < n; ++i) P[i] = i;
    std::vector<Subset> out;
    bron_kerbosch(adj, R, std::move(P), std::move(X), out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<bool>> proximity(const FiniteMetricSpace& space, const Rat& d,
                                         const Subset& restrict_to = {}) {
    int n = space.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    auto in = [&](int x) { return restrict_to.empty() || subset_contains(restrict_to, x); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (in(i) && in(j) && space.dist(i, j) <= d) adj[i][j] = adj[j][i] = true;
    return adj;
}

void require_unit_separated(const SpacePtr& space) {
    if (!space) throw Error(Err::INVALID_SPEC, "missing vertex space");
    if (!space->unit_separated())
        throw Error(Err::INVALID_SPEC,
                    "Rips complexes need distinct vertices at distance >= 1");
}

} // namespace

MetricSimplicialComplex build_rips(const SpacePtr& space, const Rat& d) {
    require_unit_separated(space);
    if (d.sign() < 0) throw Error(Err::BAD_PARAMS, "scale must be nonnegative");
    auto cliques = maximal_cliques(proximity(*space, d));
    return ComplexBuilder::make(MetricSimplicialComplex::Mode::Plain, space, d, d, 1, {},
                                std::move(cliques));
}

MetricSimplicialComplex build_relative_rips(const SpacePtr& space, const Subset& sigma,
                                            const Rat& a, const Rat& b) {
    require_unit_separated(space);
    if (Rat(1) > a || a > b) throw Error(Err::BAD_PARAMS, "need 1 <= a <= b");
    auto cliques_a = maximal_cliques(proximity(*space, a));
    std::vector<Subset> cliques_b;
    if (!sigma.empty()) cliques_b = maximal_cliques(proximity(*space, b, sigma));
    // Merge; drop sets contained in another maximal set.
    std::vector<Subset> all = cliques_a;
    for (auto& c : cliques_b) all.push_back(c);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<Subset> maximal;
    for (size_t i = 0; i < all.size(); ++i) {
        bool contained = false;
        for (size_t j = 0; j < all.size() && !contained; ++j)
            if (i != j && all[i].size() < all[j].size() &&
                std::includes(all[j].begin(), all[j].end(), all[i].begin(), all[i].end()))
                contained = true;
        if (!contained) maximal.push_back(all[i]);
    }
    return ComplexBuilder::make(MetricSimplicialComplex::Mode::Relative, space, a, b, 1, sigma,
                                std::move(maximal));
}

MetricSimplicialComplex build_scaled_rips(const SpacePtr& space, const Subset& w, const Rat& a,
                                          const Rat& b, int m) {
    require_unit_separated(space);
    if (Rat(1) > a || a > b || m < 1) throw Error(Err::BAD_PARAMS, "need 1 <= a <= b, m >= 1");
    auto cliques = maximal_cliques(proximity(*space, b));
    return ComplexBuilder::make(MetricSimplicialComplex::Mode::Scaled, space, a, b, m, w,
                                std::move(cliques));
}

MetricSimplicialComplex make_complex_direct(const SpacePtr& space, std::vector<Subset> maximal,
                                            const Rat& a) {
    require_unit_separated(space);
    for (const auto& s : maximal)
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (!(space->dist(s[i], s[j]) <= Ext(a)))
                    throw Error(Err::BAD_PARAMS, "listed simplex violates the scale");
    return ComplexBuilder::make(MetricSimplicialComplex::Mode::Plain, space, a, a, 1, {},
                                std::move(maximal));
}

int MetricSimplicialComplex::dimension() const {
    size_t best = 1;
    for (const auto& s : maximal_) best = std::max(best, s.size());
    return (int)best - 1;
}

bool MetricSimplicialComplex::is_simplex(const Subset& s) const {
    if (s.empty()) return false;
    bool within_a = true, within_b = true, in_special = true;
    for (size_t i = 0; i < s.size(); ++i) {
        if (!subset_contains(special_, s[i])) in_special = false;
        for (size_t j = i + 1; j < s.size(); ++j) {
            Ext d = space_->dist(s[i], s[j]);
            if (!(d <= Ext(a_))) within_a = false;
            if (!(d <= Ext(b_))) within_b = false;
        }
    }
    switch (mode_) {
        case Mode::Plain: return within_a;
        case Mode::Relative: return within_a || (within_b && in_special);
        case Mode::Scaled: return within_b;
    }
    return false;
}

MetricSimplicialComplex::SimplexTag MetricSimplicialComplex::tag(const Subset& s) const {
    SimplexTag t;
    if (mode_ != Mode::Scaled) return t;
    bool within_a = true, in_special = true;
    for (size_t i = 0; i < s.size(); ++i) {
        if (!subset_contains(special_, s[i])) in_special = false;
        for (size_t j = i + 1; j < s.size(); ++j)
            if (!(space_->dist(s[i], s[j]) <= Ext(a_))) within_a = false;
    }
    if (within_a || in_special) return t;  // a simplex of P_ab(Gamma, W)
    t.scaled = true;
    t.level = (int)s.size() - 1;
    t.m = m_;
    return t;
}

std::vector<std::vector<int>> MetricSimplicialComplex::skeleton_adjacency() const {
    int n = space_->size();
    std::vector<std::set<int>> nb(n);
    for (const auto& s : maximal_)
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j) {
                nb[s[i]].insert(s[j]);
                nb[s[j]].insert(s[i]);
            }
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) adj[i].assign(nb[i].begin(), nb[i].end());
    return adj;
}

// --- Outward-rounded bounds ----------------------------------------------------------

namespace {

double round_up(double x) { return std::nextafter(x, INFINITY); }
double round_down(double x) { return std::nextafter(x, -INFINITY); }

/// Upper bound of a nonnegative rational as a double.
double rat_upper(const Rat& x) {
    double d = x.to_double();
    while (Rat::from_double_exact(d) < x) d = round_up(d);
    return d;
}

bool perfect_square(long long v, long long& root) {
    if (v < 0) return false;
    long long r = (long long)std::llround(std::sqrt((double)v));
    for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c)
        if (c * c == v) {
            root = c;
            return true;
        }
    return false;
}

/// sqrt of a nonnegative rational: exact for perfect squares, otherwise a
/// few ulps of directed slack absorb the conversion and sqrt roundings
/// (each is correctly rounded to <= 0.5 ulp).
double sqrt_upper(const Rat& x) {
    long long rn, rd;
    if (perfect_square(x.num(), rn) && perfect_square(x.den(), rd))
        return rat_upper(Rat(rn, rd));
    double s = std::sqrt(x.to_double());
    for (int i = 0; i < 4; ++i) s = round_up(s);
    return s;
}

// --- Subdivision graph ----------------------------------------------------------------

/// Node of the level-L edgewise subdivision. Barycentric nodes are global
/// (shared across simplices through their common faces); cone-interior nodes
/// and apexes belong to one scaled simplex.
struct NodeKey {
    enum Kind { Bary = 0, Cone = 1, Apex = 2 };
    int kind = Bary;
    int simplex = -1;
    int t_num = 0;
    std::vector<std::pair<int, int>> bary;  // (vertex, numerator), sum = L

    bool operator<(const NodeKey& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (simplex != o.simplex) return simplex < o.simplex;
        if (t_num != o.t_num) return t_num < o.t_num;
        return bary < o.bary;
    }
    bool operator==(const NodeKey& o) const {
        return kind == o.kind && simplex == o.simplex && t_num == o.t_num && bary == o.bary;
    }
};

struct SubGraph {
    int L = 3;
    std::vector<NodeKey> nodes;
    std::map<NodeKey, int> index;
    std::vector<std::map<int, double>> adj;  // upper-bound weights
    std::vector<int> vertex_node;            // vertex -> node id or -1

    int intern(const NodeKey& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        int id = (int)nodes.size();
        nodes.push_back(k);
        index.emplace(k, id);
        adj.emplace_back();
        return id;
    }
    void add_edge(int u, int v, double w) {
        if (u == v) return;
        auto& mu = adj[u];
        auto it = mu.find(v);
        if (it == mu.end() || it->second > w) {
            mu[v] = w;
            adj[v][u] = w;
        }
    }
};

NodeKey bary_key(const std::vector<std::pair<int, int>>& parts) {
    NodeKey k;
    k.kind = NodeKey::Bary;
    k.bary = parts;
    std::sort(k.bary.begin(), k.bary.end());
    k.bary.erase(std::remove_if(k.bary.begin(), k.bary.end(),
                                [](const auto& p) { return p.second == 0; }),
                 k.bary.end());
    return k;
}

/// Chord length upper bound between two barycentric lattice points of one
/// standard simplex under the regular unit-edge embedding:
/// dist^2 = (1/2) sum (delta_i)^2, deltas rational.
double bary_chord_upper(const NodeKey& a, const NodeKey& b, int L) {
    std::map<int, int> delta;
    for (const auto& [v, w] : a.bary) delta[v] += w;
    for (const auto& [v, w] : b.bary) delta[v] -= w;
    Rat sum(0);
    for (const auto& [v, d] : delta) sum += Rat((long long)d * d);
    return sqrt_upper(sum / Rat(2LL * L * L));
}
/// All compositions of L over k slots.
void compositions(int L, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == 1) {
        cur.push_back(L);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int i = 0; i <= L; ++i) {
        cur.push_back(i);
        compositions(L - i, k - 1, cur, out);
        cur.pop_back();
    }
}

void add_standard_simplex(SubGraph& g, const Subset& simplex) {
    int L = g.L;
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(L, (int)simplex.size(), cur, comps);
    std::vector<int> ids;
    ids.reserve(comps.size());
    for (const auto& c : comps) {
        std::vector<std::pair<int, int>> parts;
        for (size_t i = 0; i < simplex.size(); ++i)
            if (c[i] > 0) parts.push_back({simplex[i], c[i]});
        ids.push_back(g.intern(bary_key(parts)));
    }
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = i + 1; j < ids.size(); ++j)
            g.add_edge(ids[i], ids[j],
                       bary_chord_upper(g.nodes[ids[i]], g.nodes[ids[j]], L));
}

void add_scaled_edge(SubGraph& g, int u, int v, int m) {
    int L = g.L;
    std::vector<int> ids;
    for (int j = 0; j <= L; ++j)
        ids.push_back(g.intern(bary_key({{u, L - j}, {v, j}})));
    for (int i = 0; i <= L; ++i)
        for (int j = i + 1; j <= L; ++j)
            g.add_edge(ids[i], ids[j], rat_upper(Rat((long long)m * (j - i), L)));
}

/// Length upper bound of the straight parameter segment inside a cone
/// simplex: metric m^2 dt^2 + t^2 (base length)^2 along linear t(s), xi(s).
/// Trapezoid rule on a convex integrand overestimates; a relative pad keeps
/// the float evaluation on the safe side.
double cone_segment_upper(double m, double t1, double t2, double base_len) {
    double dt = t2 - t1;
    if (base_len == 0.0) return round_up(std::abs(dt) * m);
    if (dt == 0.0) return round_up(t1 * base_len);
    const int N = 64;
    double sum = 0.0;
    for (int i = 0; i <= N; ++i) {
        double tau = (double)i / N;
        double t = t1 + tau * dt;
        double f = std::sqrt(m * m * dt * dt + t * t * base_len * base_len);
        sum += (i == 0 || i == N) ? f / 2 : f;
    }
    return round_up((sum / N) * (1.0 + 1e-9));
}

void add_scaled_triangle(SubGraph& g, const MetricSimplicialComplex& cx, int simplex_id,
                         const Subset& tri, int m) {
    int L = g.L;
    NodeKey apex;
    apex.kind = NodeKey::Apex;
    apex.simplex = simplex_id;
    int apex_id = g.intern(apex);

    const int edges[3][2] = {{tri[0], tri[1]}, {tri[0], tri[2]}, {tri[1], tri[2]}};
    for (const auto& e : edges) {
        int u = e[0], v = e[1];
        Subset es{std::min(u, v), std::max(u, v)};
        auto et = cx.tag(es);
        double elen = et.scaled ? (double)et.m : 1.0;

        // Grid (t = i/L, s = j/L) over this base edge's portion of the cone.
        std::vector<std::vector<int>> id(L + 1, std::vector<int>(L + 1, -1));
        for (int i = 0; i <= L; ++i)
            for (int j = 0; j <= L; ++j) {
                if (i == 0) {
                    id[i][j] = apex_id;
                } else if (i == L) {
                    id[i][j] = g.intern(bary_key({{u, L - j}, {v, j}}));
                } else {
                    NodeKey k;
                    k.kind = NodeKey::Cone;
                    k.simplex = simplex_id;
                    k.t_num = i;
                    k.bary = bary_key({{u, L - j}, {v, j}}).bary;
                    id[i][j] = g.intern(k);
                }
            }
        for (int i1 = 0; i1 <= L; ++i1)
            for (int j1 = 0; j1 <= L; ++j1)
                for (int i2 = i1; i2 <= L; ++i2)
                    for (int j2 = (i2 == i1 ? j1 + 1 : 0); j2 <= L; ++j2) {
                        int n1 = id[i1][j1], n2 = id[i2][j2];
                        if (n1 == n2) continue;
                        long long elen_i = et.scaled ? et.m : 1;
                        double w;
                        if (i1 == i2)
                            w = rat_upper(Rat(i1, L) * Rat(elen_i * std::abs(j2 - j1), L));
                        else if (j1 == j2 || i1 == 0)
                            w = rat_upper(Rat((long long)m * (i2 - i1), L));
                        else
                            w = cone_segment_upper(m, (double)i1 / L, (double)i2 / L,
                                                   elen * std::abs(j2 - j1) / (double)L);
                        g.add_edge(n1, n2, w);
                    }
    }
}

SubGraph build_subdivision(const MetricSimplicialComplex& cx, int L) {
    if (L < 1) throw Error(Err::BAD_PARAMS, "subdivision level must be >= 1");
    SubGraph g;
    g.L = L;
    const auto& maximal = cx.maximal_simplices();
    for (int si = 0; si < (int)maximal.size(); ++si) {
        const auto& s = maximal[si];
        auto t = cx.tag(s);
        if (!t.scaled) {
            add_standard_simplex(g, s);
        } else if (s.size() == 2) {
            add_scaled_edge(g, s[0], s[1], t.m);
        } else if (s.size() == 3) {
            add_scaled_triangle(g, cx, si, s, t.m);
        } else {
            throw Error(Err::UNSUPPORTED_DIMENSION,
                        "scaled simplices above dimension 2 are not estimated");
        }
    }
    int n = cx.vertex_space()->size();
    g.vertex_node.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        auto it = g.index.find(bary_key({{v, L}}));
        if (it != g.index.end()) g.vertex_node[v] = it->second;
    }
    return g;
}

std::vector<double> dijkstra(const SubGraph& g, const std::vector<int>& sources) {
    std::vector<double> dist(g.nodes.size(), INFINITY);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int s : sources)
        if (s >= 0) {
            dist[s] = 0.0;
            pq.push({0.0, s});
        }
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : g.adj[u]) {
            // Keep exact float sums exact; round up only on an inexact add.
            double s = d + w;
            double hi = std::max(d, w), lo = std::min(d, w);
            if (lo - (s - hi) != 0.0) s = round_up(s);
            if (s < dist[v]) {
                dist[v] = s;
                pq.push({s, v});
            }
        }
    }
    return dist;
}

Ext upper_from_dist(double d) {
    if (!std::isfinite(d)) return Ext::inf();
    if (d > 8e12) throw Error(Err::INVALID_SPEC, "unreasonable subdivision distance");
    // Outward rounding to 20 fractional bits: scaling by a power of two is
    // exact, so the ceiling stays a true upper bound, and the rational keeps
    // a bounded denominator for downstream exact arithmetic.
    return Ext(Rat((long long)std::ceil(d * (1 << 20)), 1 << 20));
}

} // namespace

size_t subdivision_node_count(const MetricSimplicialComplex& cx, int L) {
    return build_subdivision(cx, L).nodes.size();
}

Ext geodesic_upper(const MetricSimplicialComplex& cx, int p, int q, int L) {
    SubGraph g = build_subdivision(cx, L);
    if (g.vertex_node.at(p) < 0 || g.vertex_node.at(q) < 0) return Ext::inf();
    auto d = dijkstra(g, {g.vertex_node[p]});
    return upper_from_dist(d[g.vertex_node[q]]);
}

Ext geodesic_upper_to_set(const MetricSimplicialComplex& cx, int p, const Subset& target,
                          int L) {
    SubGraph g = build_subdivision(cx, L);
    std::vector<int> sources;
    for (int v : target)
        if (g.vertex_node.at(v) >= 0) sources.push_back(g.vertex_node[v]);
    if (sources.empty() || g.vertex_node.at(p) < 0) return Ext::inf();
    auto d = dijkstra(g, sources);
    return upper_from_dist(d[g.vertex_node[p]]);
}

namespace {

bool has_scaled_simplex(const MetricSimplicialComplex& cx) {
    for (const auto& s : cx.maximal_simplices())
        if (cx.tag(s).scaled) return true;
    return false;
}

int hop_distance(const MetricSimplicialComplex& cx, const Subset& from, const Subset& to) {
    auto adj = cx.skeleton_adjacency();
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    for (int s : from) {
        dist[s] = 0;
        q.push(s);
    }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    int best = -1;
    for (int t : to)
        if (dist[t] >= 0 && (best < 0 || dist[t] < best)) best = dist[t];
    return best;  // -1: disconnected
}

} // namespace

Rat geodesic_lower_sets(const MetricSimplicialComplex& cx, const Subset& a, const Subset& b) {
    if (has_scaled_simplex(cx))
        throw Error(Err::UNSUPPORTED_DIMENSION,
                    "the skeleton lower bound covers standard complexes only");
    const auto& dc = derive_dimension_constants(cx.dimension());
    int hops = hop_distance(cx, a, b);
    if (hops < 0) return Rat(0);  // no certified bound across components
    long long slack = hops - 2;
    if (slack <= 0) return Rat(0);
    return Rat(slack) / dc.c;
}

Rat geodesic_lower(const MetricSimplicialComplex& cx, int p, int q) {
    return geodesic_lower_sets(cx, {p}, {q});
}

// --- Dimension constants ---------------------------------------------------------------

namespace {

SpacePtr unit_simplex_space(int count) {
    std::vector<std::string> names;
    std::vector<std::vector<Ext>> mat(count, std::vector<Ext>(count, Ext(Rat(1))));
    for (int i = 0; i < count; ++i) {
        names.push_back("v" + std::to_string(i));
        mat[i][i] = Ext(Rat(0));
    }
    return FiniteMetricSpace::from_matrix(std::move(names), std::move(mat));
}

/// Euclidean coordinates of a subdivision node under an explicit vertex
/// embedding.
std::vector<double> node_coords(const NodeKey& k, int L,
                                const std::vector<std::vector<double>>& vertex_coords) {
    size_t dim = vertex_coords[0].size();
    std::vector<double> out(dim, 0.0);
    for (const auto& [v, w] : k.bary)
        for (size_t d = 0; d < dim; ++d)
            out[d] += vertex_coords[v][d] * ((double)w / L);
    return out;
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

/// Max over node pairs of surface-path length / straight chord, using the
/// subdivision upper bound for the numerator (overestimates the ratio).
double boundary_detour_ratio(const MetricSimplicialComplex& boundary,
                             const std::vector<std::vector<double>>& vertex_coords, int L,
                             long long& samples) {
    SubGraph g = build_subdivision(boundary, L);
    std::vector<std::vector<double>> coords;
    coords.reserve(g.nodes.size());
    for (const auto& k : g.nodes) coords.push_back(node_coords(k, L, vertex_coords));
    double worst = 1.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        auto dist = dijkstra(g, {(int)i});
        for (size_t j = i + 1; j < g.nodes.size(); ++j) {
            double chord = round_down(euclid(coords[i], coords[j]));
            if (chord <= 1e-9 || !std::isfinite(dist[j])) continue;
            worst = std::max(worst, dist[j] / chord);
            ++samples;
        }
    }
    return worst;
}

/// Boundary-of-regular-n-simplex complex: n+1 unit-separated vertices, all
/// n-subsets as maximal faces. Embedded via e_i / sqrt(2).
double single_simplex_ratio(int n, int L, long long& samples) {
    SpacePtr sp = unit_simplex_space(n + 1);
    std::vector<Subset> faces;
    Subset all;
    for (int i = 0; i <= n; ++i) all.push_back(i);
    for (int omit = 0; omit <= n; ++omit) {
        Subset f;
        for (int i = 0; i <= n; ++i)
            if (i != omit) f.push_back(i);
        faces.push_back(f);
    }
    auto boundary = make_complex_direct(sp, faces, Rat(1));
    std::vector<std::vector<double>> coords(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) coords[i][i] = 1.0 / std::sqrt(2.0);
    return boundary_detour_ratio(boundary, coords, L, samples);
}

/// Two regular n-simplices reflected through a shared facet (a convex
/// bipyramid, so straight chords realize interior geodesics). The boundary
/// complex carries the surface metric; coordinates come from an explicit
/// unit-edge embedding of the shared facet plus mirrored apexes.
double glued_pair_ratio(int n, int L, long long& samples) {
    // Unit-edge coordinates for the shared (n-1)-simplex, built iteratively
    // in R^n; apexes get an extra mirrored axis.
    std::vector<std::vector<double>> pts(n, std::vector<double>(n, 0.0));
    for (int k = 1; k < n; ++k) {
        // place vertex k so that it is at distance 1 from vertices 0..k-1
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < k; ++i)
            for (int d = 0; d < n; ++d) centroid[d] += pts[i][d] / k;
        double r2 = 0;
        for (int d = 0; d < n; ++d) r2 += (pts[0][d] - centroid[d]) * (pts[0][d] - centroid[d]);
        double h = std::sqrt(1.0 - r2);
        pts[k] = centroid;
        pts[k][k - 1] += h;
    }
    // Apex above / below the centroid of the shared facet.
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < n; ++d) centroid[d] += pts[i][d] / n;
    double r2 = 0;
    for (int d = 0; d < n; ++d) r2 += (pts[0][d] - centroid[d]) * (pts[0][d] - centroid[d]);
    double h = std::sqrt(1.0 - r2);
    std::vector<std::vector<double>> coords(n + 2, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) coords[i] = pts[i];
    coords[n] = centroid;
    for (auto& c : coords) c.push_back(0.0);
    coords[n].back() = h;
    coords[n + 1] = coords[n];
    coords[n + 1].back() = -h;

    // Vertex metric: unit distances except the two apexes, which sit at the
    // embedded distance (>= 1 for n >= 2).
    int count = n + 2;
    std::vector<std::string> names;
    std::vector<std::vector<Ext>> mat(count, std::vector<Ext>(count, Ext(Rat(1))));
    for (int i = 0; i < count; ++i) {
        names.push_back("v" + std::to_string(i));
        mat[i][i] = Ext(Rat(0));
    }
    double apex_gap = 2 * h;
    Rat apex_rat = Rat::from_double_exact(std::max(1.0, apex_gap));
    mat[n][n + 1] = mat[n + 1][n] = Ext(apex_rat);
    SpacePtr sp = FiniteMetricSpace::from_matrix(std::move(names), std::move(mat));

    // Boundary faces: facets of each simplex other than the shared one.
    std::vector<Subset> faces;
    for (int apex = n; apex <= n + 1; ++apex)
        for (int omit = 0; omit < n; ++omit) {
            Subset f;
            for (int i = 0; i < n; ++i)
                if (i != omit) f.push_back(i);
            f.push_back(apex);
            std::sort(f.begin(), f.end());
            faces.push_back(f);
        }
    auto boundary = make_complex_direct(sp, faces, apex_rat);
    return boundary_detour_ratio(boundary, coords, L, samples);
}

/// Boundary of a triangle against chords, exact perimeter parametrization.
double triangle_ratio(long long& samples) {
    const double ax = 0, ay = 0, bx = 1, by = 0, cx = 0.5, cy = std::sqrt(3.0) / 2;
    auto point = [&](double s) -> std::pair<double, double> {
        if (s < 1) return {ax + s * (bx - ax), ay + s * (by - ay)};
        if (s < 2) return {bx + (s - 1) * (cx - bx), by + (s - 1) * (cy - by)};
        return {cx + (s - 2) * (ax - cx), cy + (s - 2) * (ay - cy)};
    };
    const int K = 96;
    double worst = 1.0;
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j) {
            double si = 3.0 * i / K, sj = 3.0 * j / K;
            auto [xi, yi] = point(si);
            auto [xj, yj] = point(sj);
            double chord = std::hypot(xj - xi, yj - yi);
            if (chord <= 1e-9) continue;
            double along = std::min(sj - si, 3.0 - (sj - si));
            worst = std::max(worst, round_up(along) / round_down(chord));
            ++samples;
        }
    return worst;
}

/// Rhombus made of two unit triangles: perimeter path against chords.
double rhombus_ratio(long long& samples) {
    const double r3 = std::sqrt(3.0) / 2;
    const double px[4] = {0, 1, 1.5, 0.5};  // A, B, D, C around the perimeter
    const double py[4] = {0, 0, r3, r3};
    auto point = [&](double s) -> std::pair<double, double> {
        int e = (int)s;
        double f = s - e;
        int u = e % 4, v = (e + 1) % 4;
        return {px[u] + f * (px[v] - px[u]), py[u] + f * (py[v] - py[u])};
    };
    const int K = 96;
    double worst = 1.0;
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j) {
            double si = 4.0 * i / K, sj = 4.0 * j / K;
            auto [xi, yi] = point(si);
            auto [xj, yj] = point(sj);
            double chord = std::hypot(xj - xi, yj - yi);
            if (chord <= 1e-9) continue;
            double along = std::min(sj - si, 4.0 - (sj - si));
            worst = std::max(worst, round_up(along) / round_down(chord));
            ++samples;
        }
    return worst;
}

} // namespace

const DimensionConstants& derive_dimension_constants(int n) {
    if (n < 1 || n > 4)
        throw Error(Err::DIMENSION_CAP_EXCEEDED, "constants derived for dimensions 1..4 only");
    static std::recursive_mutex mu;
    static std::map<int, DimensionConstants> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    DimensionConstants dc;
    dc.n = n;
    if (n == 1) {
        // Paths in a 1-complex are edge paths.
        dc.alpha = Rat(1);
        dc.c = Rat(1);
        dc.beta = Rat(2);
        dc.samples = 0;
        dc.max_ratio = 1.0;
    } else {
        const DimensionConstants& prev = derive_dimension_constants(n - 1);
        long long samples = 0;
        double ratio = 1.0;
        if (n == 2) {
            ratio = std::max(triangle_ratio(samples), rhombus_ratio(samples));
        } else {
            int L = n == 3 ? 6 : 4;
            ratio = std::max(single_simplex_ratio(n, L, samples),
                             glued_pair_ratio(n, std::max(2, L - 2), samples));
        }
        dc.max_ratio = ratio;
        // Constants stay upward-rounded to 20 fractional bits so the exact
        // rationals keep bounded denominators across the level products.
        auto round_up_20 = [](const Rat& x) {
            return Rat((x * Rat(1 << 20)).ceil(), 1 << 20);
        };
        Rat level = round_up_20(Rat::from_double_exact(ratio)) * Rat(11, 10);
        dc.alpha = round_up_20(prev.alpha * level);
        dc.c = dc.alpha;
        dc.beta = Rat(2) * dc.alpha;
        dc.samples = samples;
    }
    return cache.emplace(n, dc).first->second;
}

// --- Lemma sweeps --------------------------------------------------------------------

namespace {

std::string pair_str(const FiniteMetricSpace& sp, int x, int y) {
    return sp.name(x) + " ~ " + sp.name(y);
}

} // namespace

LemmaReport verify_lemma(const MetricSimplicialComplex& cx, RipsLemma lemma,
                         const LemmaParams& params) {
    LemmaReport rep;
    const auto& space = *cx.vertex_space();
    int n = space.size();
    const auto& dc = derive_dimension_constants(std::max(1, cx.dimension()));
    std::ostringstream cons;
    cons << "n=" << dc.n << " alpha=" << dc.alpha.str() << " c=" << dc.c.str()
         << " beta=" << dc.beta.str();
    rep.constants = cons.str();

    auto fail = [&](const std::string& worst) {
        rep.status = LemmaReport::Status::INCONCLUSIVE;
        rep.worst = worst;
    };

    switch (lemma) {
        case RipsLemma::Comparison: {
            rep.lemma = "comparison";
            // d_Gamma(x,y) <= a * alpha * d_{P_a}(x,y), certified through the
            // upper estimator.
            SubGraph g = build_subdivision(cx, params.L);
            Rat worst_margin(-1);
            for (int x = 0; x < n && rep.status == LemmaReport::Status::PASS; ++x) {
                if (g.vertex_node[x] < 0) continue;
                auto dist = dijkstra(g, {g.vertex_node[x]});
                for (int y = x + 1; y < n; ++y) {
                    if (g.vertex_node[y] < 0) continue;
                    Ext up = upper_from_dist(dist[g.vertex_node[y]]);
                    if (up.is_inf()) continue;
                    Ext dxy = space.dist(x, y);
                    if (dxy.is_inf()) continue;
                    ++rep.checked;
                    Rat rhs = params.a * dc.alpha * up.finite();
                    if (dxy.finite() > rhs) {
                        fail(pair_str(space, x, y) + ": d_Gamma " + dxy.finite().str() +
                             " > " + rhs.str());
                        break;
                    }
                    Rat margin = rhs - dxy.finite();
                    if (worst_margin < Rat(0) || margin < worst_margin) {
                        worst_margin = margin;
                        rep.worst = pair_str(space, x, y) + ": margin " + margin.str();
                    }
                }
            }
            break;
        }
        case RipsLemma::ScaledComparison: {
            rep.lemma = "scaled_comparison";
            if (cx.dimension() > 2)
                throw Error(Err::UNSUPPORTED_DIMENSION,
                            "scaled comparison is checked in dimension <= 2 only");
            if (params.families.empty()) throw Error(Err::BAD_PARAMS, "needs the subset C");
            const Subset& c = params.families[0];
            SubGraph g = build_subdivision(cx, params.L);
            std::vector<int> sources;
            for (int v : c)
                if (g.vertex_node[v] >= 0) sources.push_back(g.vertex_node[v]);
            auto dist = dijkstra(g, sources);
            for (int x = 0; x < n; ++x) {
                if (g.vertex_node[x] < 0) continue;
                Ext up = upper_from_dist(dist[g.vertex_node[x]]);
                if (up.is_inf()) continue;
                Ext dxc = space.point_set_dist(x, c);
                if (dxc.is_inf()) continue;
                ++rep.checked;
                Rat rhs = params.a * dc.beta * up.finite();
                if (dxc.finite() > rhs) {
                    fail(space.name(x) + ": d_Gamma(x,C) " + dxc.finite().str() + " > " +
                         rhs.str());
                    break;
                }
            }
            break;
        }
        case RipsLemma::Neighborhood: {
            rep.lemma = "neighborhood";
            if (params.families.empty()) throw Error(Err::BAD_PARAMS, "needs the subset C");
            const Subset& c = params.families[0];
            SubGraph g = build_subdivision(cx, params.L);
            std::vector<int> sources;
            for (int v : c)
                if (g.vertex_node[v] >= 0) sources.push_back(g.vertex_node[v]);
            auto dist = dijkstra(g, sources);
            Rat rhs_bound = params.a * params.eps * dc.beta;
            for (int x = 0; x < n; ++x) {
                if (g.vertex_node[x] < 0) continue;
                Ext up = upper_from_dist(dist[g.vertex_node[x]]);
                // Only certified members of N_eps(P_a(C)) are tested.
                if (up.is_inf() || up > Ext(params.eps)) continue;
                ++rep.checked;
                Ext dxc = space.point_set_dist(x, c);
                if (dxc.is_inf() || dxc.finite() > rhs_bound) {
                    fail(space.name(x) + ": inside N_eps but d_Gamma(x,C) " + dxc.str() +
                         " > " + rhs_bound.str());
                    break;
                }
            }
            break;
        }
        case RipsLemma::Separation: {
            rep.lemma = "separation";
            if (params.families.size() < 2)
                throw Error(Err::BAD_PARAMS, "needs at least two separated subsets");
            for (size_t i = 0; i < params.families.size(); ++i)
                for (size_t j = i + 1; j < params.families.size(); ++j) {
                    Ext sep = space.set_dist(params.families[i], params.families[j]);
                    if (sep < params.eps)
                        throw Error(Err::BAD_PARAMS,
                                    "input family is not eps-separated in Gamma");
                    ++rep.checked;
                    Rat lower = geodesic_lower_sets(cx, params.families[i], params.families[j]);
                    Rat need = params.eps / (params.a * dc.beta);
                    if (lower < need) {
                        fail("components " + std::to_string(i) + "," + std::to_string(j) +
                             ": certified lower " + lower.str() + " < " + need.str());
                        return rep;
                    }
                    rep.worst = "certified separation >= " + lower.str();
                }
            break;
        }
        case RipsLemma::ConeRetraction: {
            rep.lemma = "cone_retraction";
            if (cx.dimension() > 2)
                throw Error(Err::UNSUPPORTED_DIMENSION,
                            "cone retraction is checked in dimension <= 2 only");
            int m = cx.stretch();
            if (Rat(m) <= Rat(2) * params.eps) {
                fail("stretch m = " + std::to_string(m) +
                     " cannot give a 2-Lipschitz collapse at eps = " + params.eps.str());
                break;
            }
            // Radial collapse F(t, xi) = xi on the band t >= 1 - eps/m of each
            // cone simplex, sampled on the subdivision lattice: the base
            // distance must be at most twice the cone lower bound
            // max(m |dt|, t_min * base distance).
            double eps = params.eps.to_double();
            for (const auto& s : cx.maximal_simplices()) {
                auto t = cx.tag(s);
                if (!t.scaled) continue;
                double band = 1.0 - eps / t.m;
                int L = params.L * 4;
                for (int i1 = (int)std::floor(band * L); i1 <= L; ++i1)
                    for (int i2 = i1; i2 <= L; ++i2) {
                        if (i1 < 0 || i2 < 0) continue;
                        double t1 = (double)i1 / L, t2 = (double)i2 / L;
                        if (t1 < band || t2 < band) continue;
                        // Base separation along one base edge sampled at ds.
                        for (int dj = 0; dj <= L; ++dj) {
                            double base = (double)dj / L;  // times edge length
                            double dcone =
                                std::max((double)t.m * std::abs(t2 - t1), band * base);
                            double dbase = base;
                            ++rep.checked;
                            if (dcone > 0 && dbase > 2.0 * dcone + 1e-12) {
                                fail("cone simplex collapse ratio exceeds 2");
                                return rep;
                            }
                        }
                    }
            }
            break;
        }
    }
    return rep;
}

} // namespace coarse
