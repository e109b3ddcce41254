// Command-line surface for the coarse decomposition toolkit: space
// generation, decomposition games, certificate verification, norm and length
// evaluation, Rips complexes with certified distance estimates, and
// partition-of-unity witnesses. Reports are deterministic for a fixed seed.

#include "coarse/enumerate.hpp"
#include "coarse/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace coarse;

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Err::INVALID_SPEC:
        case Err::BAD_PARAMS:
        case Err::UNSUPPORTED_SUBGROUP:
        case Err::DOMAIN_MISMATCH:
        case Err::NOT_LIPSCHITZ:
        case Err::NOT_UNIPOTENT:
        case Err::THETA_NOT_EXPANDING:
        case Err::IO_ERROR:
            return 2;
        case Err::MALFORMED_CERTIFICATE:
            return 4;
        case Err::STRATEGY_STUCK:
        case Err::CHALLENGES_EXHAUSTED:
            return 5;
        case Err::BALL_TOO_LARGE:
        case Err::ENUMERATION_BUDGET_EXCEEDED:
        case Err::SEARCH_BUDGET_EXCEEDED:
        case Err::DIMENSION_CAP_EXCEEDED:
            return 6;
        default:
            return 1;
    }
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_path, j);
}

std::vector<Rat> parse_challenges(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rat::from_string(item));
    return out;
}

/// "0,1,2;10,11" -> subsets by point id.
std::vector<Subset> parse_subsets(const std::string& text, const FiniteMetricSpace& sp) {
    std::vector<Subset> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        Subset s;
        std::stringstream items(group);
        std::string id;
        while (std::getline(items, id, ',')) s.push_back(sp.index_of(id));
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    }
    return out;
}

StrategyPtr make_strategy(const std::string& name, const LoadedSpace& sp) {
    if (name == "greedy") return strategy_greedy_components();
    if (name == "slabs") {
        if (sp.ball && !sp.ball->vec_elems.empty()) return strategy_coordinate_slabs(*sp.ball);
        // Explicit spaces: integer-named points supply their own height.
        return strategy_interval_slabs(
            [](const FiniteMetricSpace& s, int i) { return std::stoll(s.name(i)); }, "value");
    }
    if (name == "coset") {
        if (!sp.ball) throw Error(Err::INVALID_SPEC, "coset strategy needs a generated ball");
        return strategy_coset(*sp.ball);
    }
    if (name == "fibering") {
        if (!sp.ball || sp.ball->lamp_elems.empty())
            throw Error(Err::INVALID_SPEC, "fibering strategy targets lamplighter balls");
        return strategy_lamplighter_fibering(*sp.ball);
    }
    if (name == "unipotent") {
        if (!sp.ball || sp.ball->mat_elems.empty())
            throw Error(Err::INVALID_SPEC, "unipotent strategy needs a matrix ball");
        const auto& ms = std::get<MatrixGroupSpec>(sp.ball->spec);
        if (ms.length.parts.empty())
            throw Error(Err::INVALID_SPEC, "matrix ball carries no norm");
        return strategy_unipotent_cosets(*sp.ball,
                                         RingElement::var(ms.field, 0), ms.length.parts[0].norm);
    }
    throw Error(Err::INVALID_SPEC, "unknown strategy '" + name + "'");
}

MatrixOverRing matrix_from_cli(const std::string& text) {
    if (text.rfind("wreath:", 0) == 0) {
        // wreath:n=<k>,p=<laurent poly in X^2> realizes the lamplighter-type
        // subgroup of SL(2, Z[X, X^-1]).
        long long n = 0;
        std::string poly = "0";
        std::stringstream ss(text.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.rfind("n=", 0) == 0) n = std::stoll(item.substr(2));
            else if (item.rfind("p=", 0) == 0) poly = item.substr(2);
        }
        RingElement p = parse_ring_element(poly, 0);
        return MatrixOverRing(2, {RingElement::var(0, 0, (int)n), p,
                                  RingElement::from_rat(0, Rat(0)),
                                  RingElement::var(0, 0, (int)-n)});
    }
    if (text.rfind("file:", 0) == 0) {
        json j = read_json_file(text.substr(5));
        int field = j.value("field", 0);
        return matrix_from_json(j.at("entries"), j.at("dim").get<int>(), field);
    }
    json j = json::parse(text);
    return matrix_from_json(j.at("entries"), j.at("dim").get<int>(), j.value("field", 0));
}

RingSpec ring_from_cli(const std::string& name, long long n_param) {
    if (name == "f2x") return RingSpec::fq_poly(2);
    if (name == "f2x2") return RingSpec::fq_poly(2, 2);
    if (name == "f3x") return RingSpec::fq_poly(3);
    if (name == "f2laurent") return RingSpec::fq_laurent(2);
    if (name == "zx") return RingSpec::z_poly();
    if (name == "z1n") return RingSpec::z_inv_n(n_param);
    throw Error(Err::INVALID_SPEC, "unknown ring '" + name + "' (f2x, f2x2, f3x, f2laurent, zx, z1n)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse decomposition toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned long long seed = 0;
    long long budget = 200000;
    int subdivision = 3;
    std::string out_path;
    app.add_option("--seed", seed, "seed for all randomized sampling");
    app.add_option("--budget", budget, "element / candidate cap");
    app.add_option("--subdivision", subdivision, "subdivision level L");
    app.add_option("--out", out_path, "output file (stdout when omitted)");
    std::string format = "json";
    app.add_option("--format", format, "output format (json)");

    std::function<int()> action;

    // ---- space ----------------------------------------------------------
    auto* space = app.add_subcommand("space", "generate and inspect spaces");
    {
        auto* gen = space->add_subcommand("gen", "generate a group ball");
        auto group = std::make_shared<std::string>("zn");
        auto n = std::make_shared<int>(1);
        auto cutoff = std::make_shared<int>(8);
        auto lamp = std::make_shared<std::string>("z2");
        auto radius = std::make_shared<std::string>("4");
        auto weights = std::make_shared<std::string>("");
        auto spec_file = std::make_shared<std::string>("");
        gen->add_option("--group", *group, "zn | weighted-sum | lamplighter | matrix");
        gen->add_option("--n", *n, "rank for zn");
        gen->add_option("--cutoff", *cutoff, "coordinate cutoff for weighted-sum");
        gen->add_option("--lamp", *lamp, "lamp group: z or z<p>");
        gen->add_option("--radius", *radius, "ball radius (rational)");
        gen->add_option("--weights", *weights, "comma list of generator weights for zn");
        gen->add_option("--spec", *spec_file, "matrix group spec JSON file");
        gen->callback([&, group, n, cutoff, lamp, radius, weights, spec_file] {
            action = [=, &out_path, &budget] {
                GroupSpec spec;
                if (*group == "zn") {
                    FreeAbelianSpec fa;
                    fa.n = *n;
                    if (!weights->empty())
                        for (const Rat& w : parse_challenges(*weights)) fa.weights.push_back(w);
                    spec = fa;
                } else if (*group == "weighted-sum") {
                    spec = WeightedDirectSumSpec{*cutoff};
                } else if (*group == "lamplighter") {
                    json lj{{"type", "lamplighter"}, {"lamp", *lamp}};
                    spec = group_spec_from_json(lj);
                } else if (*group == "matrix") {
                    spec = group_spec_from_json(read_json_file(*spec_file));
                } else {
                    throw Error(Err::INVALID_SPEC, "unknown group '" + *group + "'");
                }
                Rat r = Rat::from_string(*radius);
                if (r.sign() < 0) throw Error(Err::INVALID_SPEC, "radius must be nonnegative");
                GroupBall b = ball(spec, r, (int)budget);
                json j{{"generator", group_spec_to_json(spec)}, {"radius", r.str()}};
                json out = j;
                out["points"] = json::array();
                for (const auto& nm : b.space->names()) out["points"].push_back(nm);
                emit(json{{"generator", j["generator"]},
                          {"radius", j["radius"]},
                          {"size", b.space->size()}},
                     "");
                if (!out_path.empty()) write_json_file(out_path, j);
                return 0;
            };
        });

        auto* show = space->add_subcommand("show", "summarize a space file");
        auto file = std::make_shared<std::string>();
        show->add_option("file", *file)->required();
        show->callback([&, file] {
            action = [=, &out_path] {
                LoadedSpace sp = load_space_file(*file);
                json j{{"size", sp.space->size()},
                       {"diameter", diameter(*sp.space).str()},
                       {"unit_separated", sp.space->unit_separated()}};
                emit(j, out_path);
                return 0;
            };
        });
    }

    // ---- decompose -------------------------------------------------------
    auto* dec = app.add_subcommand("decompose", "play and verify decomposition games");
    {
        auto* run = dec->add_subcommand("run", "play the game with a strategy");
        auto space_file = std::make_shared<std::string>();
        auto strategy = std::make_shared<std::string>("slabs");
        auto challenges = std::make_shared<std::string>("4,4");
        auto bound_target = std::make_shared<std::string>("");
        run->add_option("--space", *space_file)->required();
        run->add_option("--strategy", *strategy, "slabs | greedy | coset | fibering | unipotent");
        run->add_option("--challenges", *challenges, "comma list of rationals");
        run->add_option("--bound-target", *bound_target, "stop once diameters reach this bound");
        run->callback([&, space_file, strategy, challenges, bound_target] {
            action = [=, &out_path] {
                LoadedSpace sp = load_space_file(*space_file);
                GameOptions opts;
                if (!bound_target->empty()) opts.bound_target = Rat::from_string(*bound_target);
                auto cert = play_game(sp.space, make_strategy(*strategy, sp),
                                      parse_challenges(*challenges), opts);
                emit(certificate_to_json(cert, sp.source), out_path);
                return 0;
            };
        });

        auto* verify = dec->add_subcommand("verify", "verify a certificate file");
        auto space_file2 = std::make_shared<std::string>();
        auto cert_file = std::make_shared<std::string>();
        verify->add_option("--space", *space_file2, "space file (defaults to the embedded ambient)");
        verify->add_option("--cert", *cert_file)->required();
        verify->callback([&, space_file2, cert_file] {
            action = [=, &out_path] {
                json cj = read_json_file(*cert_file);
                LoadedSpace sp = space_file2->empty() ? space_from_json(cj.at("ambient"))
                                                      : load_space_file(*space_file2);
                auto cert = certificate_from_json(cj, sp);
                auto rep = verify_certificate(cert);
                emit(verify_report_to_json(rep, cert), out_path);
                return rep.valid ? 0 : 3;
            };
        });
    }

    // ---- norms ------------------------------------------------------------
    auto* norms = app.add_subcommand("norms", "norms, lengths, and ball enumeration");
    {
        auto* len = norms->add_subcommand("len", "norm length of a matrix");
        auto norm_s = std::make_shared<std::string>("degree");
        auto matrix_s = std::make_shared<std::string>();
        auto field = std::make_shared<int>(0);
        len->add_option("--norm", *norm_s);
        len->add_option("--matrix", *matrix_s)->required();
        len->add_option("--field", *field, "0 for Q, p for F_p");
        len->callback([&, norm_s, matrix_s, field] {
            action = [=, &out_path] {
                MatrixOverRing m = matrix_from_cli(*matrix_s);
                Norm norm = norm_from_cli(*norm_s, m.field());
                if (norm.kind() == Norm::Kind::Eval) {
                    ArchLength l = arch_length_gl(norm, m);
                    emit(json{{"length", l.value}, {"tolerance", l.tol}}, out_path);
                } else {
                    long long units = length_gl(norm, m);
                    emit(json{{"length_exponent_units", units}, {"scale", norm.scale()}},
                         out_path);
                }
                return 0;
            };
        });

        auto* evalc = norms->add_subcommand("eval", "evaluate a norm on a ring element");
        auto norm_s2 = std::make_shared<std::string>("degree");
        auto elem = std::make_shared<std::string>();
        auto field2 = std::make_shared<int>(0);
        evalc->add_option("--norm", *norm_s2);
        evalc->add_option("--elem", *elem)->required();
        evalc->add_option("--field", *field2);
        evalc->callback([&, norm_s2, elem, field2] {
            action = [=, &out_path] {
                RingElement x = parse_ring_element(*elem, *field2);
                Norm norm = norm_from_cli(*norm_s2, *field2);
                NormValue v = norm(x);
                json j;
                if (v.is_zero()) j["value"] = "zero";
                else if (v.is_exponent()) j["exponent"] = v.exp();
                else j["value"] = v.real_value().str();
                emit(j, out_path);
                return 0;
            };
        });

        auto* ballc = norms->add_subcommand("ball", "enumerate a B_A(k,s) set");
        auto ring = std::make_shared<std::string>("f2x");
        auto n_param = std::make_shared<long long>(6);
        auto k = std::make_shared<long long>(2);
        auto s = std::make_shared<std::string>("");
        auto evals = std::make_shared<std::string>("");
        ballc->add_option("--ring", *ring, "f2x | f2x2 | f3x | f2laurent | zx | z1n");
        ballc->add_option("--n", *n_param, "modulus for z1n");
        ballc->add_option("--k", *k, "discrete exponent bound");
        ballc->add_option("--s", *s, "archimedean bound");
        ballc->add_option("--evals", *evals, "comma list of rational evaluation points");
        ballc->callback([&, ring, n_param, k, s, evals] {
            action = [=, &out_path, &budget] {
                RingSpec rs = ring_from_cli(*ring, *n_param);
                std::vector<Norm> discrete;
                if (rs.kind == RingSpec::Kind::FqPoly || rs.kind == RingSpec::Kind::ZPoly) {
                    for (int v = 0; v < rs.nvars; ++v) discrete.push_back(Norm::degree(v));
                } else if (rs.kind == RingSpec::Kind::FqLaurent) {
                    discrete.push_back(Norm::degree());
                    discrete.push_back(Norm::order_at(Poly::variable(rs.field(), 0), 0));
                } else {
                    long long m = rs.p;
                    for (long long d = 2; d * d <= m; ++d)
                        if (m % d == 0) {
                            discrete.push_back(Norm::p_adic(d));
                            while (m % d == 0) m /= d;
                        }
                    if (m > 1) discrete.push_back(Norm::p_adic(m));
                }
                std::vector<ArchBound> arch;
                if (!s->empty()) {
                    Rat bound = Rat::from_string(*s);
                    if (evals->empty()) {
                        arch.push_back({Norm::eval_at(Rat(0)), bound});
                    } else {
                        for (const Rat& t : parse_challenges(*evals))
                            arch.push_back({Norm::eval_at(t), bound});
                    }
                }
                auto got = enumerate_ball_BA(rs, discrete, *k, arch, budget);
                json arr = json::array();
                for (const auto& e : got) arr.push_back(e.str());
                emit(json{{"count", got.size()}, {"elements", arr}}, out_path);
                return 0;
            };
        });
    }

    // ---- rips ---------------------------------------------------------------
    auto* rips = app.add_subcommand("rips", "Rips complexes and lemma sweeps");
    {
        auto* buildc = rips->add_subcommand("build", "build a complex from a space");
        auto space_file = std::make_shared<std::string>();
        auto d = std::make_shared<std::string>("1");
        auto rel = std::make_shared<bool>(false);
        auto scaled = std::make_shared<bool>(false);
        auto sigma = std::make_shared<std::string>("");
        auto w_set = std::make_shared<std::string>("");
        auto a = std::make_shared<std::string>("1");
        auto b = std::make_shared<std::string>("1");
        auto m = std::make_shared<int>(4);
        buildc->add_option("--space", *space_file)->required();
        buildc->add_option("--d", *d, "plain scale");
        buildc->add_flag("--relative", *rel);
        buildc->add_flag("--scaled", *scaled);
        buildc->add_option("--sigma", *sigma, "comma list of point ids");
        buildc->add_option("--w", *w_set, "comma list of point ids");
        buildc->add_option("--a", *a);
        buildc->add_option("--b", *b);
        buildc->add_option("--m", *m);
        buildc->callback([&, space_file, d, rel, scaled, sigma, w_set, a, b, m] {
            action = [=, &out_path] {
                LoadedSpace sp = load_space_file(*space_file);
                MetricSimplicialComplex cx = [&] {
                    if (*scaled) {
                        Subset w = w_set->empty() ? Subset{}
                                                  : parse_subsets(*w_set, *sp.space)[0];
                        return build_scaled_rips(sp.space, w, Rat::from_string(*a),
                                                 Rat::from_string(*b), *m);
                    }
                    if (*rel) {
                        Subset s = sigma->empty() ? Subset{}
                                                  : parse_subsets(*sigma, *sp.space)[0];
                        return build_relative_rips(sp.space, s, Rat::from_string(*a),
                                                   Rat::from_string(*b));
                    }
                    return build_rips(sp.space, Rat::from_string(*d));
                }();
                emit(complex_to_json(cx, sp.source), out_path);
                return 0;
            };
        });

        auto* dist = rips->add_subcommand("dist", "geodesic bounds between two vertices");
        auto complex_file = std::make_shared<std::string>();
        auto from = std::make_shared<std::string>();
        auto to = std::make_shared<std::string>();
        dist->add_option("--complex", *complex_file)->required();
        dist->add_option("--from", *from)->required();
        dist->add_option("--to", *to)->required();
        dist->callback([&, complex_file, from, to] {
            action = [=, &out_path, &subdivision] {
                json cj = read_json_file(*complex_file);
                LoadedSpace sp = space_from_json(cj.at("space"));
                auto cx = complex_from_json(cj, sp);
                int p = sp.space->index_of(*from), q = sp.space->index_of(*to);

                // Optional persistent cache of single queries.
                const char* cache_dir = std::getenv("COARSE_DECOMP_CACHE");
                std::string cache_file;
                json cache = json::object();
                if (cache_dir) {
                    std::filesystem::create_directories(cache_dir);
                    size_t h = std::hash<std::string>()(cj.dump());
                    cache_file = std::string(cache_dir) + "/rips_" + std::to_string(h) + ".json";
                    if (std::filesystem::exists(cache_file)) cache = read_json_file(cache_file);
                }
                std::string key = *from + "|" + *to + "|" + std::to_string(subdivision);
                json result;
                if (cache.contains(key)) {
                    result = cache[key];
                } else {
                    Ext upper = geodesic_upper(cx, p, q, subdivision);
                    result["upper"] = upper.str();
                    bool has_scaled = false;
                    for (const auto& s : cx.maximal_simplices())
                        if (cx.tag(s).scaled) has_scaled = true;
                    if (!has_scaled) result["lower"] = geodesic_lower(cx, p, q).str();
                    if (!cache_file.empty()) {
                        cache[key] = result;
                        write_json_file(cache_file, cache);
                    }
                }
                emit(result, out_path);
                return 0;
            };
        });

        auto* verifyc = rips->add_subcommand("verify", "quantitative lemma sweeps");
        auto space_file2 = std::make_shared<std::string>();
        auto lemma = std::make_shared<std::string>("comparison");
        auto a2 = std::make_shared<std::string>("1");
        auto b2 = std::make_shared<std::string>("1");
        auto eps = std::make_shared<std::string>("1");
        auto sets = std::make_shared<std::string>("");
        auto m2 = std::make_shared<int>(4);
        auto scaled2 = std::make_shared<bool>(false);
        auto w2 = std::make_shared<std::string>("");
        verifyc->add_option("--space", *space_file2)->required();
        verifyc->add_option("--lemma", *lemma,
                            "comparison | separation | neighborhood | scaled_comparison | cone_retraction");
        verifyc->add_option("--a", *a2);
        verifyc->add_option("--b", *b2);
        verifyc->add_option("--eps", *eps);
        verifyc->add_option("--sets", *sets, "semicolon-separated comma lists of point ids");
        verifyc->add_option("--m", *m2);
        verifyc->add_flag("--scaled", *scaled2);
        verifyc->add_option("--w", *w2);
        verifyc->callback([&, space_file2, lemma, a2, b2, eps, sets, m2, scaled2, w2] {
            action = [=, &out_path, &subdivision] {
                LoadedSpace sp = load_space_file(*space_file2);
                LemmaParams lp;
                lp.a = Rat::from_string(*a2);
                lp.b = Rat::from_string(*b2);
                lp.eps = Rat::from_string(*eps);
                lp.L = subdivision;
                lp.m = *m2;
                if (!sets->empty()) lp.families = parse_subsets(*sets, *sp.space);
                MetricSimplicialComplex cx = [&] {
                    if (*scaled2 || *lemma == "scaled_comparison" || *lemma == "cone_retraction") {
                        Subset w = w2->empty() ? Subset{} : parse_subsets(*w2, *sp.space)[0];
                        return build_scaled_rips(sp.space, w, lp.a, lp.b, lp.m);
                    }
                    return build_rips(sp.space, lp.a);
                }();
                RipsLemma which;
                if (*lemma == "comparison") which = RipsLemma::Comparison;
                else if (*lemma == "separation") which = RipsLemma::Separation;
                else if (*lemma == "neighborhood") which = RipsLemma::Neighborhood;
                else if (*lemma == "scaled_comparison") which = RipsLemma::ScaledComparison;
                else if (*lemma == "cone_retraction") which = RipsLemma::ConeRetraction;
                else throw Error(Err::BAD_PARAMS, "unknown lemma '" + *lemma + "'");
                auto rep = verify_lemma(cx, which, lp);
                emit(lemma_report_to_json(rep), out_path);
                return rep.status == LemmaReport::Status::PASS ? 0 : 3;
            };
        });
    }

    // ---- pou ----------------------------------------------------------------
    auto* pou = app.add_subcommand("pou", "partition-of-unity witnesses");
    {
        auto* buildp = pou->add_subcommand("build", "build a witness from a certificate");
        auto cert_file = std::make_shared<std::string>();
        auto R = std::make_shared<std::string>("1");
        auto eps = std::make_shared<std::string>("1");
        buildp->add_option("--cert", *cert_file)->required();
        buildp->add_option("--R", *R);
        buildp->add_option("--eps", *eps);
        buildp->callback([&, cert_file, R, eps] {
            action = [=, &out_path] {
                json cj = read_json_file(*cert_file);
                LoadedSpace sp = space_from_json(cj.at("ambient"));
                auto cert = certificate_from_json(cj, sp);
                auto w = pou_from_certificate(cert, Rat::from_string(*R),
                                              Rat::from_string(*eps));
                json out = witness_to_json(w);
                out["space"] = sp.source;
                emit(out, out_path);
                return 0;
            };
        });

        auto* verifyp = pou->add_subcommand("verify", "verify a witness file");
        auto witness_file = std::make_shared<std::string>();
        auto space_file = std::make_shared<std::string>("");
        verifyp->add_option("--witness", *witness_file)->required();
        verifyp->add_option("--space", *space_file);
        verifyp->callback([&, witness_file, space_file] {
            action = [=, &out_path] {
                json wj = read_json_file(*witness_file);
                LoadedSpace sp = space_file->empty() ? space_from_json(wj.at("space"))
                                                     : load_space_file(*space_file);
                auto w = witness_from_json(wj, sp);
                auto rep = verify_witness(w);
                json j{{"valid", rep.valid},
                       {"subordinate", rep.subordinate},
                       {"unit_sum", rep.unit_sum},
                       {"cover_bounded", rep.cover_bounded},
                       {"worst_variation", rep.worst_variation.str()},
                       {"detail", rep.detail}};
                if (rep.worst_pair.first >= 0) {
                    j["worst_pair"] = json::array({sp.space->name(rep.worst_pair.first),
                                                   sp.space->name(rep.worst_pair.second)});
                }
                emit(j, out_path);
                return rep.valid ? 0 : 3;
            };
        });
    }

    // ---- report ---------------------------------------------------------------
    auto* report = app.add_subcommand("report", "merge JSON reports");
    {
        auto* merge = report->add_subcommand("merge", "merge report files by sorted task key");
        auto inputs = std::make_shared<std::vector<std::string>>();
        merge->add_option("files", *inputs)->required();
        merge->callback([&, inputs] {
            action = [=, &out_path] {
                json merged = json::object();
                for (const auto& f : *inputs) merged[f] = read_json_file(f);
                emit(merged, out_path);
                return 0;
            };
        });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        if (!action) {
            std::cerr << "missing subcommand action\n";
            return 2;
        }
        return action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
