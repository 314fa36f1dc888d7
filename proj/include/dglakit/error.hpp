#ifndef DGLAKIT_ERROR_HPP
#define DGLAKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dglakit {

enum class ErrorKind {
  NotASubspace,
  BadProjector,
  DimensionMismatch,
  AxiomViolation,
  NotAnAutomorphism,
  InvalidSplitting,
  NoAction,
  UnsupportedArity,
  NotAnInvolution,
  OddDiagonal,
  ShapeMismatch,
  NotInvertible,
  InfiniteGlobalDimension,
  NotProjective,
  DegenerateForm,
  NotSymmetric,
  ParseError,
  SchemaViolation,
  InvariantViolation,
  UnknownCommand,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` is the
/// stable machine-readable part, `what()` carries the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace dglakit

#endif  // DGLAKIT_ERROR_HPP
