#include "effdiag/error.hpp"

namespace effdiag {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UndeclaredSort: return "UndeclaredSort";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::PremonoidalTensorUndefined: return "PremonoidalTensorUndefined";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::MissingMapping: return "MissingMapping";
    case ErrorKind::MorphismConflict: return "MorphismConflict";
    case ErrorKind::ReservedSortClash: return "ReservedSortClash";
    case ErrorKind::MalformedRuntimeDiagram: return "MalformedRuntimeDiagram";
    case ErrorKind::StaleOccurrence: return "StaleOccurrence";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ReusedVariable: return "ReusedVariable";
    case ErrorKind::UnusedVariable: return "UnusedVariable";
    case ErrorKind::PurityMismatch: return "PurityMismatch";
    case ErrorKind::UnalignedVariables: return "UnalignedVariables";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::Format: return "Format";
  }
  return "Error";
}

}  // namespace effdiag
