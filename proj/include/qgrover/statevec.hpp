#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace qgrover {

using Amplitude = std::complex<double>;

// Tolerances shared by the simulator and its tests.
inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kProbabilityTolerance = 1e-9;

// Ordered list of machine qubits. Position i of the handle carries bit
// significance 2^i in the integer value of the register.
class RegisterHandle {
 public:
  RegisterHandle() = default;
  explicit RegisterHandle(std::vector<std::size_t> qubits) : qubits_(std::move(qubits)) {}
  RegisterHandle(std::initializer_list<std::size_t> qubits) : qubits_(qubits) {}

  std::size_t width() const { return qubits_.size(); }
  bool empty() const { return qubits_.empty(); }
  std::size_t operator[](std::size_t i) const { return qubits_[i]; }
  const std::vector<std::size_t>& qubits() const { return qubits_; }

  // Single-qubit sub-register at position i. Throws InvalidRegister if out of range.
  RegisterHandle at(std::size_t i) const;

  // Bitmask of the machine basis index covered by this register.
  std::uint64_t mask() const;

  // Integer encoded by this register in machine basis state `basis_index`.
  std::uint64_t extract(std::uint64_t basis_index) const;

  friend bool operator==(const RegisterHandle&, const RegisterHandle&) = default;

 private:
  std::vector<std::size_t> qubits_;
};

struct MeasurementOutcome {
  std::uint64_t value = 0;
  double probability = 0.0;

  friend bool operator==(const MeasurementOutcome&, const MeasurementOutcome&) = default;
};

// Dense row-major real matrix; only used for the Hadamard verification oracle.
struct RealMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  double operator()(std::size_t row, std::size_t col) const { return data[row * dim + col]; }
  double& operator()(std::size_t row, std::size_t col) { return data[row * dim + col]; }
};

// n-qubit quantum machine backed by a dense state vector of 2^n amplitudes.
//
// Newly allocated qubits are appended as the most significant bits of the
// basis index and start in |0>. Measurement draws one uniform double per call
// from a std::mt19937_64 seeded with the constructor seed; the double is
// formed from the top 53 bits of a single 64-bit draw, so the stream is
// identical across standard library implementations.
class Machine {
 public:
  static constexpr std::size_t kMaxCapacity = 30;

  Machine(std::size_t max_qubits, std::uint64_t seed);

  std::size_t allocated_qubits() const { return allocated_; }
  std::size_t max_qubits() const { return max_qubits_; }

  RegisterHandle allocate(std::size_t width);

  void apply_hadamard(const RegisterHandle& reg);
  void apply_not(const RegisterHandle& reg);
  // X on the single `target` qubit for basis states where every control bit is 1.
  void apply_cnot(const RegisterHandle& target, const RegisterHandle& controls);
  // Multiply amplitudes where every bit of `reg` is 1 by e^{i angle}.
  void apply_cphase(double angle, const RegisterHandle& reg);

  MeasurementOutcome measure(const RegisterHandle& reg);

  // Force the machine to |0...0> without measuring; allocations are kept.
  void reset();

  std::vector<Amplitude> snapshot() const { return amplitudes_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }

  // Replace the state; the length must be 2^allocated_qubits and the vector
  // normalized within kProbabilityTolerance.
  void load_amplitudes(std::span<const Amplitude> amplitudes);

  double total_probability() const;

  // Probability that measuring `reg` would yield `value`, without collapsing.
  double probability_of(const RegisterHandle& reg, std::uint64_t value) const;

  // Throws NumericalError when the state is non-finite or not normalized within `tolerance`.
  void check_normalized(double tolerance = kStateTolerance) const;

 private:
  void validate(const RegisterHandle& reg) const;
  double next_uniform();

  std::size_t max_qubits_;
  std::size_t allocated_ = 0;
  std::vector<Amplitude> amplitudes_{Amplitude{1.0, 0.0}};
  std::mt19937_64 rng_;
};

// Recursive construction H_m = 1/sqrt2 [[H_{m-1}, H_{m-1}], [H_{m-1}, -H_{m-1}]],
// H_0 = [1]. Verification oracle only; m <= 10.
RealMatrix hadamard_matrix(std::size_t m);

// Max elementwise |a - u*b| where u is the unit phase aligning the largest
// magnitude entry of b with the same entry of a. Sizes must match.
double distance_up_to_global_phase(std::span<const Amplitude> a, std::span<const Amplitude> b);

// Max elementwise |a - b|.
double max_abs_difference(std::span<const Amplitude> a, std::span<const Amplitude> b);

}  // namespace qgrover
