#pragma once

#include <stdexcept>
#include <string>

namespace qgrover {

// Base of every error raised by the simulator, the search engine and the
// interpreter. The CLI maps concrete subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Qubit budget exceeded (machine capacity, allocation, oracle matrix size).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A register refers to qubits that do not exist or repeats an index.
class InvalidRegister : public Error {
 public:
  using Error::Error;
};

// Target and control registers share a qubit.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// State vector is no longer normalized to within tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (e.g. target 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Repeat-until search did not hit the target within the round budget.
class RoundLimitError : public Error {
 public:
  using Error::Error;
};

// Phase-kickback ancilla was not in |0> when required.
class AncillaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgrover
