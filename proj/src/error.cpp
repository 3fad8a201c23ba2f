#include "modspace/error.hpp"

namespace modspace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::IncompatibleDilation: return "IncompatibleDilation";
    case ErrorCode::OddLengthAmbiguity: return "OddLengthAmbiguity";
    case ErrorCode::PartitionGap: return "PartitionGap";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BandOverflow: return "BandOverflow";
    case ErrorCode::DepthOverflow: return "DepthOverflow";
    case ErrorCode::BandTooNarrow: return "BandTooNarrow";
    case ErrorCode::AliasedCollection: return "AliasedCollection";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace modspace
