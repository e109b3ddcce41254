#pragma once

#include "coarse/decomp.hpp"
#include "coarse/property_a.hpp"
#include "coarse/rips.hpp"

#include <json.hpp>

namespace coarse {

using nlohmann::json;

/// A space plus its serializable provenance. Generated balls round-trip
/// through their generator spec; explicit spaces through their matrix.
struct LoadedSpace {
    SpacePtr space;
    std::optional<GroupBall> ball;
    json source;
};

// --- Group specs -----------------------------------------------------------

json group_spec_to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const json& j);

// --- Spaces ------------------------------------------------------------------
// {"points": [ids], "dist": {"i,j": "p/q" | "inf"}}
// or {"generator": <group spec>, "radius": "r"}.

json space_to_json(const LoadedSpace& sp);
LoadedSpace space_from_json(const json& j);

LoadedSpace load_space_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

// --- Norms and lengths ---------------------------------------------------------
// {"type":"degree","var":"X"} | {"type":"padic","p":2} | {"type":"order_at","q":"X"}
// | {"type":"gauss","base":...} | {"type":"eval","t":"3/7"}.

json norm_to_json(const Norm& n);
Norm norm_from_json(const json& j, int field);

/// Shorthand accepted on the command line: "degree", "degree:Y", "padic:2",
/// "order:X", "eval:3/7", "gauss:<base shorthand>", or inline JSON.
Norm norm_from_cli(const std::string& text, int field);

json length_fn_to_json(const LengthFunction& lf);
LengthFunction length_fn_from_json(const json& j, int field);

// --- Ring elements ----------------------------------------------------------------
// Either an expression string or a coefficient map {"X^2":"1","1":"3/2"}.

json ring_element_to_json(const RingElement& e);
RingElement ring_element_from_json(const json& j, int field);

json matrix_to_json(const MatrixOverRing& m);
MatrixOverRing matrix_from_json(const json& j, int dim, int field);

// --- Certificates -------------------------------------------------------------------
// {"ambient": <space>, "steps":[{"r":"p/q","members":[{"part0":[[ids]...],
//  "part1":[[ids]...]}]}], "bound":"p/q"}.

json certificate_to_json(const DecompositionCertificate& cert, const json& space_source);
DecompositionCertificate certificate_from_json(const json& j, const LoadedSpace& sp);

json verify_report_to_json(const VerifyReport& rep, const DecompositionCertificate& cert);

// --- Witnesses ----------------------------------------------------------------------
// {"cover":[[ids]...], "phi":[{"piece":k,"values":{"id":"p/q"}}],
//  "R":"p/q","eps":"p/q","B":"p/q"}.

json witness_to_json(const ExactnessWitness& w);
ExactnessWitness witness_from_json(const json& j, const LoadedSpace& sp);

// --- Complexes ------------------------------------------------------------------------
// {"vertices":[ids],"maximal_simplices":[[ids]],"tags":{...}}.

json complex_to_json(const MetricSimplicialComplex& cx, const json& space_source);
MetricSimplicialComplex complex_from_json(const json& j, const LoadedSpace& sp);

json lemma_report_to_json(const LemmaReport& rep);

} // namespace coarse
