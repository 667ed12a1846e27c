#include "rdpairs/error.hpp"

namespace rdp {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::MalformedKey: return "MalformedKey";
    case ErrorCode::EmbeddingInvalid: return "EmbeddingInvalid";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::NotEnumerated: return "NotEnumerated";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::SupportNotEnumerated: return "SupportNotEnumerated";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::GraphTooLarge: return "GraphTooLarge";
    case ErrorCode::BallInsufficient: return "BallInsufficient";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::PowerOverflow: return "PowerOverflow";
    case ErrorCode::MissingRho: return "MissingRho";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool isCapError(ErrorCode code) {
  switch (code) {
    case ErrorCode::BallTooLarge:
    case ErrorCode::GraphTooLarge:
    case ErrorCode::TruncationOverflow:
    case ErrorCode::PowerOverflow:
      return true;
    default:
      return false;
  }
}

}  // namespace rdp
