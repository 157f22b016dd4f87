#include "ffmink/errors.hpp"

namespace ffmink {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownLeadingTerm: return "UnknownLeadingTerm";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::HenselFailure: return "HenselFailure";
    case Errc::AsymptoticsViolated: return "AsymptoticsViolated";
    case Errc::NotUnimodularDirection: return "NotUnimodularDirection";
    case Errc::SingularBasis: return "SingularBasis";
    case Errc::CoverageGap: return "CoverageGap";
    case Errc::InclusionViolated: return "InclusionViolated";
    case Errc::IndexExceeded: return "IndexExceeded";
    case Errc::CertificateFailure: return "CertificateFailure";
    case Errc::CongruenceFailure: return "CongruenceFailure";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::IncompleteSearch: return "IncompleteSearch";
    case Errc::ReductionFailed: return "ReductionFailed";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace ffmink
