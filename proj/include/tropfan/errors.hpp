#ifndef TROPFAN_ERRORS_HPP
#define TROPFAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tropfan {

// Base class for all library errors.  Conditions that a caller is expected
// to branch on (solver failure reasons, validation diagnostics, decomposition
// failures) are returned as values instead; exceptions signal contract
// violations or inputs outside an operation's domain.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroVectorError : Error {
  ZeroVectorError() : Error("zero vector has no primitive representative") {}
};

struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& msg)
      : Error("dimension mismatch: " + msg) {}
};

struct MalformedInputError : Error {
  explicit MalformedInputError(const std::string& msg) : Error(msg) {}
};

struct UnbalancedError : Error {
  explicit UnbalancedError(const std::string& msg)
      : Error("fan is not balanced: " + msg) {}
};

struct NegativeWeightError : Error {
  explicit NegativeWeightError(const std::string& msg)
      : Error("negative weight: " + msg) {}
};

struct NotOneDimensionalError : Error {
  NotOneDimensionalError() : Error("operation requires a one-dimensional fan") {}
  explicit NotOneDimensionalError(const std::string& msg) : Error(msg) {}
};

struct GenericityFailureError : Error {
  explicit GenericityFailureError(const std::string& msg)
      : Error("generic shift certification failed: " + msg) {}
};

struct AmbientSpaceNotSpannedError : Error {
  AmbientSpaceNotSpannedError()
      : Error("fan rays do not span the ambient space") {}
  explicit AmbientSpaceNotSpannedError(const std::string& msg) : Error(msg) {}
};

struct RayNotInClassError : Error {
  explicit RayNotInClassError(const std::string& msg)
      : Error("ray not in class: " + msg) {}
};

struct NotRegularError : Error {
  NotRegularError() : Error("fan has no galleries") {}
  explicit NotRegularError(const std::string& msg) : Error(msg) {}
};

struct NotBergmanImageError : Error {
  explicit NotBergmanImageError(const std::string& msg)
      : Error("projection image is not a sum of minimal balanced groups: " + msg) {}
};

struct FactorizationFailedError : Error {
  explicit FactorizationFailedError(const std::string& msg)
      : Error("projection factorization failed: " + msg) {}
};

struct NotRegularFunctionError : Error {
  explicit NotRegularFunctionError(const std::string& msg)
      : Error("function is not regular on the fan: " + msg) {}
};

struct NotRegularSequenceError : Error {
  explicit NotRegularSequenceError(const std::string& msg)
      : Error("binomial pair is not a regular sequence on the fan: " + msg) {}
};

struct StructureViolationError : Error {
  explicit StructureViolationError(const std::string& msg)
      : Error("structure violation: " + msg) {}
};

struct SearchBoundExceededError : Error {
  explicit SearchBoundExceededError(const std::string& msg)
      : Error("search bound exceeded: " + msg) {}
};

// Interchange-layer errors.  ParseError means the bytes are not valid JSON
// (or a file could not be read); SchemaError means valid JSON that violates
// a named constraint of the fan or function format.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& msg) : Error("schema error: " + msg) {}
};

}  // namespace tropfan

#endif
