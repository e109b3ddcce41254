#include "coarse/json_io.hpp"

#include <fstream>
#include <sstream>

namespace coarse {

namespace {

json rat_j(const Rat& r) { return r.str(); }
Rat rat_from(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return Rat::from_string(j.get<std::string>());
}

Subset subset_from_names(const json& arr, const FiniteMetricSpace& sp) {
    Subset out;
    for (const auto& id : arr) out.push_back(sp.index_of(id.get<std::string>()));
    std::sort(out.begin(), out.end());
    return out;
}

json subset_to_names(const Subset& s, const FiniteMetricSpace& sp) {
    json arr = json::array();
    for (int p : s) arr.push_back(sp.name(p));
    return arr;
}

} // namespace

// --- Group specs -----------------------------------------------------------------

json group_spec_to_json(const GroupSpec& spec) {
    json j;
    if (const auto* fa = std::get_if<FreeAbelianSpec>(&spec)) {
        j["type"] = "free_abelian";
        j["n"] = fa->n;
        json w = json::array();
        for (const auto& x : fa->weights) w.push_back(rat_j(x));
        if (!fa->weights.empty()) j["weights"] = w;
    } else if (const auto* ws = std::get_if<WeightedDirectSumSpec>(&spec)) {
        j["type"] = "weighted_direct_sum";
        j["cutoff"] = ws->cutoff;
    } else if (const auto* ls = std::get_if<LamplighterSpec>(&spec)) {
        j["type"] = "lamplighter";
        j["lamp"] = ls->lamp_modulus == 0 ? "z" : "z" + std::to_string(ls->lamp_modulus);
    } else if (const auto* ms = std::get_if<MatrixGroupSpec>(&spec)) {
        j["type"] = "matrix";
        j["ring"] = json{{"field", ms->field}};
        j["dim"] = ms->dim;
        json gens = json::array();
        for (const auto& g : ms->generators) gens.push_back(matrix_to_json(g));
        j["generators"] = gens;
        j["length"] = length_fn_to_json(ms->length);
    }
    return j;
}

GroupSpec group_spec_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "free_abelian") {
        FreeAbelianSpec fa;
        fa.n = j.at("n").get<int>();
        if (j.contains("weights"))
            for (const auto& w : j["weights"]) fa.weights.push_back(rat_from(w));
        return fa;
    }
    if (type == "weighted_direct_sum") {
        WeightedDirectSumSpec ws;
        ws.cutoff = j.at("cutoff").get<int>();
        return ws;
    }
    if (type == "lamplighter") {
        LamplighterSpec ls;
        std::string lamp = j.value("lamp", "z2");
        if (lamp == "z") ls.lamp_modulus = 0;
        else if (lamp.size() > 1 && lamp[0] == 'z') ls.lamp_modulus = std::stoll(lamp.substr(1));
        else throw Error(Err::INVALID_SPEC, "lamp must be 'z' or 'z<p>'");
        return ls;
    }
    if (type == "matrix") {
        MatrixGroupSpec ms;
        ms.field = j.at("ring").at("field").get<int>();
        ms.dim = j.at("dim").get<int>();
        for (const auto& g : j.at("generators"))
            ms.generators.push_back(matrix_from_json(g, ms.dim, ms.field));
        ms.length = length_fn_from_json(j.at("length"), ms.field);
        return ms;
    }
    throw Error(Err::INVALID_SPEC, "unknown group spec type '" + type + "'");
}

// --- Spaces --------------------------------------------------------------------------

json space_to_json(const LoadedSpace& sp) { return sp.source; }

LoadedSpace space_from_json(const json& j) {
    LoadedSpace out;
    out.source = j;
    if (j.contains("generator")) {
        GroupSpec spec = group_spec_from_json(j.at("generator"));
        Rat radius = rat_from(j.at("radius"));
        int cap = j.value("cap", 200000);
        out.ball = ball(spec, radius, cap);
        out.space = out.ball->space;
        return out;
    }
    std::vector<std::string> names;
    for (const auto& p : j.at("points")) names.push_back(p.get<std::string>());
    int n = (int)names.size();
    std::vector<std::vector<Ext>> mat(n, std::vector<Ext>(n, Ext(Rat(0))));
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) index[names[i]] = i;
    for (const auto& [key, val] : j.at("dist").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw Error(Err::INVALID_SPEC, "distance key must be 'i,j'");
        auto a = index.find(key.substr(0, comma));
        auto b = index.find(key.substr(comma + 1));
        if (a == index.end() || b == index.end())
            throw Error(Err::INVALID_SPEC, "distance key references unknown point");
        Ext d = Ext::from_string(val.get<std::string>());
        mat[a->second][b->second] = d;
        mat[b->second][a->second] = d;
        seen[a->second][b->second] = seen[b->second][a->second] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (!seen[i][k])
                throw Error(Err::INVALID_SPEC,
                            "dist is not total: missing " + names[i] + "," + names[k]);
    out.space = FiniteMetricSpace::from_matrix(names, mat);
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Err::IO_ERROR, "cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(Err::IO_ERROR, "cannot write " + path);
    out << j.dump(2) << "\n";
}

LoadedSpace load_space_file(const std::string& path) {
    return space_from_json(read_json_file(path));
}

// --- Norms ---------------------------------------------------------------------------

namespace {

int var_from_name(const std::string& name) {
    if (name == "X" || name == "X1") return 0;
    if (name == "Y" || name == "X2") return 1;
    if (name == "Z" || name == "X3") return 2;
    if (name == "W" || name == "X4") return 3;
    throw Error(Err::INVALID_SPEC, "unknown variable '" + name + "'");
}

std::string var_name(int v) { return std::vector<std::string>{"X", "Y", "Z", "W"}.at(v); }

} // namespace

json norm_to_json(const Norm& n) {
    json j;
    switch (n.kind()) {
        case Norm::Kind::Degree:
            j["type"] = "degree";
            j["var"] = var_name(n.var());
            break;
        case Norm::Kind::PAdic:
            j["type"] = "padic";
            j["p"] = n.prime();
            break;
        case Norm::Kind::OrderAt:
            j["type"] = "order_at";
            j["q"] = n.order_poly().str();
            break;
        case Norm::Kind::Gauss:
            j["type"] = "gauss";
            j["base"] = norm_to_json(n.base());
            j["var"] = var_name(n.var());
            break;
        case Norm::Kind::Eval:
            j["type"] = "eval";
            j["t"] = rat_j(n.eval_point());
            break;
    }
    return j;
}

Norm norm_from_json(const json& j, int field) {
    std::string type = j.at("type").get<std::string>();
    if (type == "degree") return Norm::degree(var_from_name(j.value("var", "X")));
    if (type == "padic") return Norm::p_adic(j.at("p").get<long long>());
    if (type == "order_at") {
        int var = var_from_name(j.value("var", "X"));
        RingElement q = parse_ring_element(j.at("q").get<std::string>(), field);
        if (!q.is_polynomial())
            throw Error(Err::INVALID_SPEC, "order norm needs a polynomial");
        return Norm::order_at(q.num(), var);
    }
    if (type == "gauss") {
        auto base = std::make_shared<Norm>(norm_from_json(j.at("base"), field));
        return Norm::gauss(base, var_from_name(j.value("var", "X")));
    }
    if (type == "eval") return Norm::eval_at(rat_from(j.at("t")), var_from_name(j.value("var", "X")));
    throw Error(Err::INVALID_SPEC, "unknown norm type '" + type + "'");
}

Norm norm_from_cli(const std::string& text, int field) {
    if (!text.empty() && text[0] == '{') return norm_from_json(json::parse(text), field);
    auto colon = text.find(':');
    std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "degree") return Norm::degree(rest.empty() ? 0 : var_from_name(rest));
    if (head == "padic") return Norm::p_adic(std::stoll(rest));
    if (head == "order") {
        RingElement q = parse_ring_element(rest.empty() ? "X" : rest, field);
        return Norm::order_at(q.num(), 0);
    }
    if (head == "eval") return Norm::eval_at(Rat::from_string(rest));
    if (head == "gauss")
        return Norm::gauss(std::make_shared<Norm>(norm_from_cli(rest, field)), 0);
    throw Error(Err::INVALID_SPEC, "unknown norm '" + text + "'");
}

json length_fn_to_json(const LengthFunction& lf) {
    json arr = json::array();
    for (const auto& part : lf.parts)
        arr.push_back(json{{"norm", norm_to_json(part.norm)}, {"weight", rat_j(part.weight)}});
    return arr;
}

LengthFunction length_fn_from_json(const json& j, int field) {
    LengthFunction lf;
    for (const auto& part : j)
        lf.parts.push_back({norm_from_json(part.at("norm"), field),
                            part.contains("weight") ? rat_from(part["weight"]) : Rat(1)});
    return lf;
}

// --- Ring elements ----------------------------------------------------------------------

json ring_element_to_json(const RingElement& e) {
    // Coefficient map for polynomials; expression string for fractions.
    if (!e.is_polynomial()) return e.str();
    json j = json::object();
    for (const auto& t : e.num().terms()) {
        std::string key;
        for (int v = 0; v < MAX_VARS; ++v) {
            if (t.mono[v] == 0) continue;
            if (!key.empty()) key += "*";
            key += var_name(v);
            if (t.mono[v] != 1) key += "^" + std::to_string(t.mono[v]);
        }
        if (key.empty()) key = "1";
        j[key] = t.coef.str();
    }
    return j;
}

RingElement ring_element_from_json(const json& j, int field) {
    if (j.is_string()) return parse_ring_element(j.get<std::string>(), field);
    Poly p(field);
    for (const auto& [key, val] : j.items()) {
        RingElement mono = parse_ring_element(key, field);
        Rat coef = rat_from(val);
        p = p + (mono.num() * Poly::constant(field, coef));
    }
    return RingElement(p);
}

json matrix_to_json(const MatrixOverRing& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < m.n(); ++j2) row.push_back(m.at(i, j2).str());
        rows.push_back(row);
    }
    return rows;
}

MatrixOverRing matrix_from_json(const json& j, int dim, int field) {
    std::vector<RingElement> entries;
    for (const auto& row : j)
        for (const auto& cell : row)
            entries.push_back(cell.is_string()
                                  ? parse_ring_element(cell.get<std::string>(), field)
                                  : ring_element_from_json(cell, field));
    if ((int)entries.size() != dim * dim)
        throw Error(Err::INVALID_SPEC, "matrix entry count mismatch");
    return MatrixOverRing(dim, std::move(entries));
}

// --- Certificates ----------------------------------------------------------------------

json certificate_to_json(const DecompositionCertificate& cert, const json& space_source) {
    json j;
    j["ambient"] = space_source;
    if (!cert.initial.empty()) {
        json init = json::array();
        for (const auto& m : cert.initial) init.push_back(subset_to_names(m, *cert.ambient));
        j["initial"] = init;
    }
    json steps = json::array();
    for (const auto& round : cert.rounds) {
        json r;
        r["r"] = rat_j(round.r);
        json members = json::array();
        for (const auto& step : round.member_steps) {
            json member;
            for (int part = 0; part < 2; ++part) {
                json pieces = json::array();
                for (const auto& piece : step.parts[part])
                    pieces.push_back(subset_to_names(piece, *cert.ambient));
                member[part == 0 ? "part0" : "part1"] = pieces;
            }
            members.push_back(member);
        }
        r["members"] = members;
        steps.push_back(r);
    }
    j["steps"] = steps;
    j["bound"] = rat_j(cert.bound);
    return j;
}

DecompositionCertificate certificate_from_json(const json& j, const LoadedSpace& sp) {
    DecompositionCertificate cert;
    cert.ambient = sp.space;
    try {
        if (j.contains("initial"))
            for (const auto& m : j["initial"])
                cert.initial.push_back(subset_from_names(m, *sp.space));
        for (const auto& r : j.at("steps")) {
            GameRound round;
            round.r = rat_from(r.at("r"));
            for (const auto& member : r.at("members")) {
                DecompositionStep step;
                for (int part = 0; part < 2; ++part) {
                    const char* key = part == 0 ? "part0" : "part1";
                    if (!member.contains(key)) continue;
                    for (const auto& piece : member[key])
                        step.parts[part].push_back(subset_from_names(piece, *sp.space));
                }
                round.member_steps.push_back(std::move(step));
            }
            cert.rounds.push_back(std::move(round));
        }
        cert.bound = rat_from(j.at("bound"));
    } catch (const json::exception& e) {
        throw Error(Err::MALFORMED_CERTIFICATE, e.what());
    } catch (const Error& e) {
        if (e.code() == Err::INVALID_SPEC)
            throw Error(Err::MALFORMED_CERTIFICATE, e.what());
        throw;
    }
    return cert;
}

json verify_report_to_json(const VerifyReport& rep, const DecompositionCertificate& cert) {
    json j;
    j["valid"] = rep.valid;
    j["depth"] = rep.depth;
    j["bound"] = rat_j(cert.bound);
    json v = json::array();
    for (const auto& viol : rep.violations) {
        const char* kind = "";
        switch (viol.kind) {
            case CertViolation::Kind::COVER: kind = "COVER"; break;
            case CertViolation::Kind::PIECE_NOT_SUBSET: kind = "PIECE_NOT_SUBSET"; break;
            case CertViolation::Kind::OVERLAP: kind = "OVERLAP"; break;
            case CertViolation::Kind::R_DISJOINT: kind = "R_DISJOINT_VIOLATION"; break;
            case CertViolation::Kind::TERMINAL_UNBOUNDED: kind = "TERMINAL_UNBOUNDED"; break;
        }
        v.push_back(json{{"kind", kind},
                         {"round", viol.round},
                         {"member", viol.member},
                         {"part", viol.part},
                         {"piece_a", viol.piece_a},
                         {"piece_b", viol.piece_b},
                         {"detail", viol.detail}});
    }
    j["violations"] = v;
    return j;
}

// --- Witnesses --------------------------------------------------------------------------

json witness_to_json(const ExactnessWitness& w) {
    json j;
    json cover = json::array();
    for (const auto& u : w.cover) cover.push_back(subset_to_names(u, *w.space));
    j["cover"] = cover;
    json phi = json::array();
    for (size_t u = 0; u < w.phi.size(); ++u) {
        json values = json::object();
        for (int x = 0; x < w.space->size(); ++x)
            if (!w.phi[u][x].is_zero()) values[w.space->name(x)] = rat_j(w.phi[u][x]);
        phi.push_back(json{{"piece", (int)u}, {"values", values}});
    }
    j["phi"] = phi;
    j["R"] = rat_j(w.R);
    j["eps"] = rat_j(w.eps);
    j["B"] = rat_j(w.B);
    return j;
}

ExactnessWitness witness_from_json(const json& j, const LoadedSpace& sp) {
    ExactnessWitness w;
    w.space = sp.space;
    for (const auto& u : j.at("cover")) w.cover.push_back(subset_from_names(u, *sp.space));
    w.phi.assign(w.cover.size(), std::vector<Rat>(sp.space->size(), Rat(0)));
    for (const auto& f : j.at("phi")) {
        int piece = f.at("piece").get<int>();
        if (piece < 0 || piece >= (int)w.cover.size())
            throw Error(Err::INVALID_SPEC, "phi references an unknown cover piece");
        for (const auto& [id, val] : f.at("values").items())
            w.phi[piece][sp.space->index_of(id)] = rat_from(val);
    }
    w.R = rat_from(j.at("R"));
    w.eps = rat_from(j.at("eps"));
    w.B = rat_from(j.at("B"));
    return w;
}

// --- Complexes --------------------------------------------------------------------------

json complex_to_json(const MetricSimplicialComplex& cx, const json& space_source) {
    json j;
    j["space"] = space_source;
    json verts = json::array();
    const auto& sp = *cx.vertex_space();
    for (int i = 0; i < sp.size(); ++i) verts.push_back(sp.name(i));
    j["vertices"] = verts;
    json simplices = json::array();
    for (const auto& s : cx.maximal_simplices()) simplices.push_back(subset_to_names(s, sp));
    j["maximal_simplices"] = simplices;
    switch (cx.mode()) {
        case MetricSimplicialComplex::Mode::Plain:
            j["mode"] = "plain";
            j["d"] = rat_j(cx.scale_a());
            break;
        case MetricSimplicialComplex::Mode::Relative:
            j["mode"] = "relative";
            j["a"] = rat_j(cx.scale_a());
            j["b"] = rat_j(cx.scale_b());
            j["sigma"] = subset_to_names(cx.special_set(), sp);
            break;
        case MetricSimplicialComplex::Mode::Scaled:
            j["mode"] = "scaled";
            j["a"] = rat_j(cx.scale_a());
            j["b"] = rat_j(cx.scale_b());
            j["w"] = subset_to_names(cx.special_set(), sp);
            j["m"] = cx.stretch();
            break;
    }
    json tags = json::object();
    for (size_t i = 0; i < cx.maximal_simplices().size(); ++i) {
        auto t = cx.tag(cx.maximal_simplices()[i]);
        if (t.scaled)
            tags[std::to_string(i)] =
                json{{"scaled", true}, {"level", t.level}, {"m", t.m}};
    }
    j["tags"] = tags;
    return j;
}

MetricSimplicialComplex complex_from_json(const json& j, const LoadedSpace& sp) {
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "plain") return build_rips(sp.space, rat_from(j.at("d")));
    if (mode == "relative")
        return build_relative_rips(sp.space, subset_from_names(j.at("sigma"), *sp.space),
                                   rat_from(j.at("a")), rat_from(j.at("b")));
    if (mode == "scaled")
        return build_scaled_rips(sp.space, subset_from_names(j.at("w"), *sp.space),
                                 rat_from(j.at("a")), rat_from(j.at("b")),
                                 j.at("m").get<int>());
    throw Error(Err::INVALID_SPEC, "unknown complex mode '" + mode + "'");
}

json lemma_report_to_json(const LemmaReport& rep) {
    return json{{"lemma", rep.lemma},
                {"status", rep.status == LemmaReport::Status::PASS ? "PASS" : "INCONCLUSIVE"},
                {"constants", rep.constants},
                {"worst", rep.worst},
                {"checked", rep.checked}};
}

} // namespace coarse
