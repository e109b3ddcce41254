#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

enum class Err {
    AMBIENT_MISMATCH,
    INFINITE_DIAMETER,
    BALL_TOO_LARGE,
    UNSUPPORTED_SUBGROUP,
    INVALID_SPEC,
    DOMAIN_MISMATCH,
    SINGULAR_MATRIX,
    ENUMERATION_BUDGET_EXCEEDED,
    NOT_UNIPOTENT,
    THETA_NOT_EXPANDING,
    MALFORMED_CERTIFICATE,
    STRATEGY_STUCK,
    CHALLENGES_EXHAUSTED,
    NOT_LIPSCHITZ,
    SEARCH_BUDGET_EXCEEDED,
    NO_SUITABLE_STEP,
    BAD_PARAMS,
    DIMENSION_CAP_EXCEEDED,
    UNSUPPORTED_DIMENSION,
    DISCONNECTED,
    IO_ERROR,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::AMBIENT_MISMATCH: return "AMBIENT_MISMATCH";
        case Err::INFINITE_DIAMETER: return "INFINITE_DIAMETER";
        case Err::BALL_TOO_LARGE: return "BALL_TOO_LARGE";
        case Err::UNSUPPORTED_SUBGROUP: return "UNSUPPORTED_SUBGROUP";
        case Err::INVALID_SPEC: return "INVALID_SPEC";
        case Err::DOMAIN_MISMATCH: return "DOMAIN_MISMATCH";
        case Err::SINGULAR_MATRIX: return "SINGULAR_MATRIX";
        case Err::ENUMERATION_BUDGET_EXCEEDED: return "ENUMERATION_BUDGET_EXCEEDED";
        case Err::NOT_UNIPOTENT: return "NOT_UNIPOTENT";
        case Err::THETA_NOT_EXPANDING: return "THETA_NOT_EXPANDING";
        case Err::MALFORMED_CERTIFICATE: return "MALFORMED_CERTIFICATE";
        case Err::STRATEGY_STUCK: return "STRATEGY_STUCK";
        case Err::CHALLENGES_EXHAUSTED: return "CHALLENGES_EXHAUSTED";
        case Err::NOT_LIPSCHITZ: return "NOT_LIPSCHITZ";
        case Err::SEARCH_BUDGET_EXCEEDED: return "SEARCH_BUDGET_EXCEEDED";
        case Err::NO_SUITABLE_STEP: return "NO_SUITABLE_STEP";
        case Err::BAD_PARAMS: return "BAD_PARAMS";
        case Err::DIMENSION_CAP_EXCEEDED: return "DIMENSION_CAP_EXCEEDED";
        case Err::UNSUPPORTED_DIMENSION: return "UNSUPPORTED_DIMENSION";
        case Err::DISCONNECTED: return "DISCONNECTED";
        case Err::IO_ERROR: return "IO_ERROR";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

} // namespace coarse
