#include "seqmeta/error.hpp"

namespace seqmeta {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::NonPositiveStdError: return "NonPositiveStdError";
    case ErrorCode::NonFiniteEstimate: return "NonFiniteEstimate";
    case ErrorCode::DuplicateSeqIndex: return "DuplicateSeqIndex";
    case ErrorCode::NonContiguousGroup: return "NonContiguousGroup";
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::LabelUnknownAtTime: return "LabelUnknownAtTime";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonPositiveVariance: return "NonPositiveVariance";
    case ErrorCode::UnlabeledRecord: return "UnlabeledRecord";
    case ErrorCode::UnsupportedTauMode: return "UnsupportedTauMode";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnexpectedColumn: return "UnexpectedColumn";
    case ErrorCode::UnparsableNumber: return "UnparsableNumber";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptyValueGrid: return "EmptyValueGrid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::GridUnderflow: return "GridUnderflow";
    case ErrorCode::NonMonotoneCDF: return "NonMonotoneCDF";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  return code == ErrorCode::SingularCovariance || code == ErrorCode::GridUnderflow ||
         code == ErrorCode::NonMonotoneCDF;
}

}  // namespace seqmeta
