#include "akb/error.hpp"

namespace akb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NoBottom: return "NoBottom";
    case ErrorCode::CycleInOrder: return "CycleInOrder";
    case ErrorCode::UnknownLevelName: return "UnknownLevelName";
    case ErrorCode::DuplicateLevelName: return "DuplicateLevelName";
    case ErrorCode::ForeignLevel: return "ForeignLevel";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateLatticeDecl: return "DuplicateLatticeDecl";
    case ErrorCode::OpenVariableInPattern: return "OpenVariableInPattern";
    case ErrorCode::UnresolvedVariable: return "UnresolvedVariable";
    case ErrorCode::StaleRedex: return "StaleRedex";
    case ErrorCode::ScriptMismatch: return "ScriptMismatch";
    case ErrorCode::MalformedTrace: return "MalformedTrace";
  }
  return "Unknown";
}

}  // namespace akb
