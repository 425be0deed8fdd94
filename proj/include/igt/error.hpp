#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace igt {

enum class ErrorCode {
  MalformedRecord,
  BadRatios,
  EmptyLine,
  BlockShape,
  TokenCountMismatch,
  UnknownMarker,
  EmptyRecord,
  MalformedToken,
  TableParseError,
  CycleDetected,
  UnknownAnalyzerTag,
  EmptyCorpus,
  SkippedRecord,
  TranslatorTimeout,
  TranslatorCountMismatch,
  TranslatorSpawnFailure,
  LengthMismatch,
  BadLanguageTag,
  BadAnnotation,
  UnknownLabel,
  OovLemma,
  Io,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MALFORMED_RECORD";
    case ErrorCode::BadRatios: return "BAD_RATIOS";
    case ErrorCode::EmptyLine: return "EMPTY_LINE";
    case ErrorCode::BlockShape: return "BLOCK_SHAPE";
    case ErrorCode::TokenCountMismatch: return "TOKEN_COUNT_MISMATCH";
    case ErrorCode::UnknownMarker: return "UNKNOWN_MARKER";
    case ErrorCode::EmptyRecord: return "EMPTY_RECORD";
    case ErrorCode::MalformedToken: return "MALFORMED_TOKEN";
    case ErrorCode::TableParseError: return "TABLE_PARSE_ERROR";
    case ErrorCode::CycleDetected: return "CYCLE_DETECTED";
    case ErrorCode::UnknownAnalyzerTag: return "UNKNOWN_ANALYZER_TAG";
    case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::SkippedRecord: return "SKIPPED_RECORD";
    case ErrorCode::TranslatorTimeout: return "TRANSLATOR_TIMEOUT";
    case ErrorCode::TranslatorCountMismatch: return "TRANSLATOR_COUNT_MISMATCH";
    case ErrorCode::TranslatorSpawnFailure: return "TRANSLATOR_SPAWN_FAILURE";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::BadLanguageTag: return "BAD_LANGUAGE_TAG";
    case ErrorCode::BadAnnotation: return "BAD_ANNOTATION";
    case ErrorCode::UnknownLabel: return "UNKNOWN_LABEL";
    case ErrorCode::OovLemma: return "OOV_LEMMA";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN_ERROR";
}

/// Exception carrying a machine-readable code. what() is "CODE: message".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

/// Non-fatal diagnostic collected by parsers. `line` is 1-based, 0 if unknown.
struct Warning {
  ErrorCode code;
  std::size_t line = 0;
  std::string message;

  std::string str() const {
    std::string out(to_string(code));
    if (line != 0) out += " at line " + std::to_string(line);
    out += ": " + message;
    return out;
  }
};

using Warnings = std::vector<Warning>;

}  // namespace igt
