#include "mrf/error.hpp"

namespace mrf {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Schema: return "SCHEMA";
        case ErrorCode::ProbSum: return "PROB_SUM";
        case ErrorCode::NonPositivePotential: return "NON_POSITIVE_POTENTIAL";
        case ErrorCode::DanglingVertex: return "DANGLING_VERTEX";
        case ErrorCode::PartialMap: return "PARTIAL_MAP";
        case ErrorCode::VertexRange: return "VERTEX_RANGE";
        case ErrorCode::EmptySet: return "EMPTY_SET";
        case ErrorCode::ZeroConditioning: return "ZERO_CONDITIONING";
        case ErrorCode::StateSpaceCap: return "STATE_SPACE_CAP";
        case ErrorCode::SizeCap: return "SIZE_CAP";
        case ErrorCode::NonPositiveTable: return "NON_POSITIVE_TABLE";
        case ErrorCode::NotMrf: return "NOT_MRF";
        case ErrorCode::NotChordal: return "NOT_CHORDAL";
        case ErrorCode::NotConnected: return "NOT_CONNECTED";
        case ErrorCode::InvalidOrder: return "INVALID_ORDER";
        case ErrorCode::Inconsistent: return "INCONSISTENT";
        case ErrorCode::InvariantViolation: return "INVARIANT_VIOLATION";
        case ErrorCode::UnknownName: return "UNKNOWN_NAME";
    }
    return "UNKNOWN";
}

}  // namespace mrf
