#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bireco {

enum class ErrorCode {
  kInvalidDataset,
  kInvalidProjections,
  kCandidateExplosion,
  kInconsistentInstance,
  kOracleTooLarge,
  kInfeasibleStatements,
  kInvalidSelection,
  kParseError,
  kInvalidOptions,
  kContradictoryDistinctCount,
  kEmbeddingTooLarge,
};

std::string_view error_code_name(ErrorCode code);

// All recoverable data errors raised by the library. `detail` carries the
// numeric payload some errors report (partial candidate count, line number).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::uint64_t detail = 0)
      : std::runtime_error(message), code_(code), detail_(detail) {}

  ErrorCode code() const { return code_; }
  std::uint64_t detail() const { return detail_; }

  // Same error with a stage name prefixed to the message.
  Error with_stage(std::string_view stage) const {
    return Error(code_, std::string(stage) + ": " + what(), detail_);
  }

 private:
  ErrorCode code_;
  std::uint64_t detail_;
};

}  // namespace bireco
