#pragma once

#include <stdexcept>
#include <string>

namespace rank1 {

// Base for all typed errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct FieldMismatch : Error {
  explicit FieldMismatch(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

// A metric, height or coordinate map was evaluated at the point at infinity.
struct InfinityArgument : Error {
  explicit InfinityArgument(const std::string& msg) : Error(msg) {}
};

// A point violates the defining inequality of its model.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A matrix preserves the form but does not decompose over the supported
// (identity-scalar-part) rotation block, or an automorphism pair with a
// nontrivial scalar factor was asked for a matrix lift.
struct NotInGres : Error {
  explicit NotInGres(const std::string& msg) : Error(msg) {}
};

// An isometric sphere was requested for an element fixing infinity.
struct StabilizerElement : Error {
  explicit StabilizerElement(const std::string& msg) : Error(msg) {}
};

struct NonStabilizerConjugator : Error {
  explicit NonStabilizerConjugator(const std::string& msg) : Error(msg) {}
};

// The cocycle is undefined because the image point is infinity.
struct UndefinedCocycle : Error {
  explicit UndefinedCocycle(const std::string& msg) : Error(msg) {}
};

// Structural axioms ((H1)-(H3) or (M1)-(M3)) failed on input data.
struct AxiomFailure : Error {
  explicit AxiomFailure(const std::string& msg) : Error(msg) {}
};

struct UnsupportedStabilizer : Error {
  explicit UnsupportedStabilizer(const std::string& msg) : Error(msg) {}
};

struct BudgetExhausted : Error {
  explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

// Malformed group spec, matrix file or point literal.
struct SpecError : Error {
  explicit SpecError(const std::string& msg) : Error(msg) {}
};

}  // namespace rank1
