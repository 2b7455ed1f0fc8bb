#include "liesym/error.hpp"

namespace liesym {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedExpression: return "MalformedExpression";
    case ErrorCode::DerivativeOrderExceeded: return "DerivativeOrderExceeded";
    case ErrorCode::NonPolynomialInJet: return "NonPolynomialInJet";
    case ErrorCode::ProbableZero: return "ProbableZero";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UncoveredJetVariable: return "UncoveredJetVariable";
    case ErrorCode::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorCode::NonzeroRemainder: return "NonzeroRemainder";
    case ErrorCode::ParameterConstraintViolated: return "ParameterConstraintViolated";
    case ErrorCode::DegenerateDiffusion: return "DegenerateDiffusion";
    case ErrorCode::NonRationalExponent: return "NonRationalExponent";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NegativeBesselArgument: return "NegativeBesselArgument";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::SingularityApproached: return "SingularityApproached";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::NonPositiveH: return "NonPositiveH";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::DomainEscape: return "DomainEscape";
  }
  return "Unknown";
}

}  // namespace liesym
