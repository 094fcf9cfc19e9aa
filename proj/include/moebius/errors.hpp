#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moebius {

enum class ErrorCode {
    UmbilicPoint,
    BoundaryPoint,
    DimensionMismatch,
    InversionSingularity,
    OrderUnsupported,
    DegenerateJacobian,
    StencilOutsideDomain,
    DimensionTooSmall,
    STensorMismatch,
    NumericalAmbiguity,
    TraceNotZero,
    DegenerateConformalFactor,
    HalfSpaceViolation,
    SignMismatch,
    AmbientMismatch,
    VanishingCurvature,
    NotMinimal,
    NonConstantMultiplicity,
    FrameAmbiguity,
    Inapplicable,
    DomainMismatch,
    UnknownId,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace moebius
