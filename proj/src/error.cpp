#include "bireco/error.hpp"

namespace bireco {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDataset: return "InvalidDataset";
    case ErrorCode::kInvalidProjections: return "InvalidProjections";
    case ErrorCode::kCandidateExplosion: return "CandidateExplosion";
    case ErrorCode::kInconsistentInstance: return "InconsistentInstance";
    case ErrorCode::kOracleTooLarge: return "OracleTooLarge";
    case ErrorCode::kInfeasibleStatements: return "InfeasibleStatements";
    case ErrorCode::kInvalidSelection: return "InvalidSelection";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidOptions: return "InvalidOptions";
    case ErrorCode::kContradictoryDistinctCount: return "ContradictoryDistinctCount";
    case ErrorCode::kEmbeddingTooLarge: return "EmbeddingTooLarge";
  }
  return "Unknown";
}

}  // namespace bireco
