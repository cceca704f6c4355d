#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace decisive {

enum class ErrorCode {
  // input / validation
  Io,
  MalformedInput,
  MissingColumn,
  NonMonotonicTime,
  NonNumericField,
  UnknownCategory,
  DanglingReference,
  DuplicateId,
  SchemaVersionUnsupported,
  ScoreOutOfRange,
  UnknownInstrument,
  MissingDirection,
  MalformedTuple,
  UnknownTerm,
  CyclicCascade,
  SchemaMismatch,
  // computation
  InvalidArgument,
  EmptySpan,
  ZeroDuration,
  InconsistentFlags,
  AllStationary,
  InsufficientSamples,
  RateTooLow,
  CollisionOutsideSpan,
  MissingCategory,
  InvalidP0,
  TooFewValues,
  EmptySample,
  DuplicateTarget,
  ZeroFps,
  LengthMismatch,
  CountOutOfRange,
  TooFewFiducials,
  UnmappedToken,
  NonPositiveValue,
  DomainError,
  NoRuleFired,
  ZeroDenominator,
  AllTestsMissing,
  NonPositiveScore,
  NonPositiveParam,
  DegenerateFit,
  EmptyCondition,
  EmptyData,
};

std::string_view to_string(ErrorCode code);

// True for codes that describe bad or inconsistent input files (CLI exit 1);
// everything else is a computation failure (CLI exit 2).
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<std::size_t> line = std::nullopt,
        std::string where = {});

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::string where_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, std::string message);

}  // namespace decisive
