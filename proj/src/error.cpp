#include "decisive/error.hpp"

namespace decisive {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::NonNumericField: return "NonNumericField";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::SchemaVersionUnsupported: return "SchemaVersionUnsupported";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::UnknownInstrument: return "UnknownInstrument";
    case ErrorCode::MissingDirection: return "MissingDirection";
    case ErrorCode::MalformedTuple: return "MalformedTuple";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::CyclicCascade: return "CyclicCascade";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptySpan: return "EmptySpan";
    case ErrorCode::ZeroDuration: return "ZeroDuration";
    case ErrorCode::InconsistentFlags: return "InconsistentFlags";
    case ErrorCode::AllStationary: return "AllStationary";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::RateTooLow: return "RateTooLow";
    case ErrorCode::CollisionOutsideSpan: return "CollisionOutsideSpan";
    case ErrorCode::MissingCategory: return "MissingCategory";
    case ErrorCode::InvalidP0: return "InvalidP0";
    case ErrorCode::TooFewValues: return "TooFewValues";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::DuplicateTarget: return "DuplicateTarget";
    case ErrorCode::ZeroFps: return "ZeroFps";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::CountOutOfRange: return "CountOutOfRange";
    case ErrorCode::TooFewFiducials: return "TooFewFiducials";
    case ErrorCode::UnmappedToken: return "UnmappedToken";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoRuleFired: return "NoRuleFired";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::AllTestsMissing: return "AllTestsMissing";
    case ErrorCode::NonPositiveScore: return "NonPositiveScore";
    case ErrorCode::NonPositiveParam: return "NonPositiveParam";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::EmptyCondition: return "EmptyCondition";
    case ErrorCode::EmptyData: return "EmptyData";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return static_cast<int>(code) <= static_cast<int>(ErrorCode::SchemaMismatch);
}

namespace {

std::string compose(ErrorCode code, const std::string& message, std::optional<std::size_t> line,
                    const std::string& where) {
  std::string out(to_string(code));
  if (!where.empty() || line) {
    out += " (";
    out += where;
    if (line) {
      if (!where.empty()) out += ":";
      out += "line " + std::to_string(*line);
    }
    out += ")";
  }
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::optional<std::size_t> line, std::string where)
    : std::runtime_error(compose(code, message, line, where)),
      code_(code),
      line_(line),
      where_(std::move(where)),
      detail_(std::move(message)) {}

void fail(ErrorCode code, std::string message) { throw Error(code, std::move(message)); }

}  // namespace decisive
