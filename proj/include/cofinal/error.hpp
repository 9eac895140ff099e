#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cofinal {

enum class ErrorKind {
  InvalidInput,
  MissingComposite,
  AssociativityViolation,
  UnitViolation,
  TypingMismatch,
  CompositionNotPreserved,
  FunctorialityViolation,
  UnknownObject,
  ShapeMismatch,
  GeneratorClosureTooLarge,
  SimplexBudgetExceeded,
  BudgetExceeded,
  GenerationRetryExceeded,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type; `witness`
/// names the offending ids (a composable pair, a triple, an object) when one
/// exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace cofinal
