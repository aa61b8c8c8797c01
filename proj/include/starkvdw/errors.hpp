#pragma once

#include <stdexcept>
#include <string>

namespace starkvdw {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Quantum numbers outside the n <= 2 hydrogen basis.
class UnsupportedBasisError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// External field too strong for the perturbative treatment.
class ValidityError : public std::range_error {
public:
  using std::range_error::range_error;
};

/// A bracketed search found no sign change, or a crossover does not exist.
class NoSolutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed sweep or configuration input.
class SpecError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An independent numerical check could not converge.
class OracleFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace starkvdw
