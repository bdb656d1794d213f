#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnblp {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gate operand refers to a qubit outside the circuit width.
class OperandOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A gate names the same qubit twice.
class DuplicateOperand : public Error {
 public:
  using Error::Error;
};

/// A placement would put two gates touching the same qubit into one layer.
class LayerConflict : public Error {
 public:
  using Error::Error;
};

/// Circuits of different widths were combined.
class WidthMismatch : public Error {
 public:
  using Error::Error;
};

/// Two circuits declare the same register role with different qubits.
class RegisterMismatch : public Error {
 public:
  using Error::Error;
};

/// T metrics were requested on a circuit still containing macro gates.
class MacroPresent : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to materialize more state than its width cap allows.
class WidthCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Circuit text could not be parsed; carries the 1-based offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Approximation cutoff outside [2, l].
class BetaOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A bit vector has the wrong length for the requested operation.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Address width q outside the supported range for the operation.
class QOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The all-zero offset has no failure probability; the caller must exclude it.
class PhiZero : public Error {
 public:
  using Error::Error;
};

/// Confidence parameter delta outside (0, 1].
class DeltaOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A feasibility inequality does not hold; what() names the inequality.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

/// Fewer successful episodes than the vote target requires.
class InsufficientSuccesses : public Error {
 public:
  using Error::Error;
};

/// Ancilla registers did not return to |0> after uncomputation.
class AncillaNotRestored : public Error {
 public:
  using Error::Error;
};

/// Problem size too large for an exhaustive or dense-state routine.
class NTooLarge : public Error {
 public:
  using Error::Error;
};

/// Marginal distribution requested over more qubits than supported.
class TooManyQubits : public Error {
 public:
  using Error::Error;
};

/// Memory table shape disagrees with its declared (n, q).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace qnblp
