#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effdiag {

enum class ErrorKind {
  UndeclaredSort,
  UnknownGenerator,
  BoundaryMismatch,
  IllTyped,
  PremonoidalTensorUndefined,
  SignatureMismatch,
  MissingMapping,
  MorphismConflict,
  ReservedSortClash,
  MalformedRuntimeDiagram,
  StaleOccurrence,
  SyntaxError,
  UnboundVariable,
  ReusedVariable,
  UnusedVariable,
  PurityMismatch,
  UnalignedVariables,
  ArityMismatch,
  SortMismatch,
  Format,
};

std::string_view to_string(ErrorKind kind);

// Domain error. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace effdiag
