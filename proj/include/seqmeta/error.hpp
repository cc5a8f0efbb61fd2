#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace seqmeta {

enum class ErrorCode {
  // input / validation
  EmptySequence,
  NonPositiveStdError,
  NonFiniteEstimate,
  DuplicateSeqIndex,
  NonContiguousGroup,
  InvalidIdentifier,
  LabelUnknownAtTime,
  InvalidSchedule,
  InvalidConfig,
  NonPositiveVariance,
  UnlabeledRecord,
  UnsupportedTauMode,
  MissingColumn,
  UnexpectedColumn,
  UnparsableNumber,
  SchemaViolation,
  UnknownLabel,
  EmptyValueGrid,
  InvalidArgument,
  Io,
  // numerical failure
  SingularCovariance,
  GridUnderflow,
  NonMonotoneCDF,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures of the numerics rather than of the input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}
  Error(ErrorCode code, const std::string& what, std::string record_id)
      : Error(code, what) {
    record_id_ = std::move(record_id);
  }

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }
  /// Id of the study record the error refers to, if any.
  const std::string& record_id() const noexcept { return record_id_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::string record_id_;
};

}  // namespace seqmeta
