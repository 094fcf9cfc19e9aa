#include "moebius/errors.hpp"

namespace moebius {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UmbilicPoint: return "UmbilicPoint";
        case ErrorCode::BoundaryPoint: return "BoundaryPoint";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InversionSingularity: return "InversionSingularity";
        case ErrorCode::OrderUnsupported: return "OrderUnsupported";
        case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
        case ErrorCode::StencilOutsideDomain: return "StencilOutsideDomain";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::STensorMismatch: return "STensorMismatch";
        case ErrorCode::NumericalAmbiguity: return "NumericalAmbiguity";
        case ErrorCode::TraceNotZero: return "TraceNotZero";
        case ErrorCode::DegenerateConformalFactor: return "DegenerateConformalFactor";
        case ErrorCode::HalfSpaceViolation: return "HalfSpaceViolation";
        case ErrorCode::SignMismatch: return "SignMismatch";
        case ErrorCode::AmbientMismatch: return "AmbientMismatch";
        case ErrorCode::VanishingCurvature: return "VanishingCurvature";
        case ErrorCode::NotMinimal: return "NotMinimal";
        case ErrorCode::NonConstantMultiplicity: return "NonConstantMultiplicity";
        case ErrorCode::FrameAmbiguity: return "FrameAmbiguity";
        case ErrorCode::Inapplicable: return "Inapplicable";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::UnknownId: return "UnknownId";
    }
    return "Unknown";
}

}  // namespace moebius
