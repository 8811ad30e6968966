#include "dsl/error.hpp"

namespace dsl {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Domain: return "DomainError";
        case ErrorCode::NonNormalizable: return "NonNormalizable";
        case ErrorCode::SingularProductivity: return "SingularProductivity";
        case ErrorCode::EmptyTable: return "EmptyTable";
        case ErrorCode::MalformedHeader: return "MalformedHeader";
        case ErrorCode::EmptySource: return "EmptySource";
        case ErrorCode::AllRowsRejected: return "AllRowsRejected";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::DegenerateX: return "DegenerateX";
        case ErrorCode::NoBinsSurvive: return "NoBinsSurvive";
        case ErrorCode::NegativeCurvature: return "NegativeCurvature";
        case ErrorCode::DomainExhausted: return "DomainExhausted";
        case ErrorCode::Io: return "IoError";
    }
    return "UnknownError";
}

}  // namespace dsl
