#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgrover/statevec.hpp"

namespace qgrover {

inline constexpr std::size_t kDefaultMaxRounds = 1000;

// Bit length of `target`, i.e. floor(log2(target)) + 1. Throws DomainError for 0.
std::size_t qubits_needed(std::uint64_t target);

// ceil(pi/8 * sqrt(2^qubits)). Throws DomainError for 0 qubits.
std::size_t iterations_needed(std::size_t qubits);

// sin^2((2k+1) * asin(2^{-n/2})): probability of reading the single marked
// element after k Grover iterations on n qubits.
double analytic_success_probability(std::size_t qubits, std::size_t iterations);

struct SearchParams {
  std::uint64_t target = 1;
  std::size_t qubits = 1;
  std::size_t iterations = 1;
  std::size_t max_rounds = kDefaultMaxRounds;

  // Sizes the search for `target` with the qubit and iteration formulas.
  static SearchParams for_target(std::uint64_t target, std::size_t max_rounds = kDefaultMaxRounds);
};

struct SearchReport {
  std::uint64_t input = 0;
  std::size_t qubits = 0;
  std::size_t iterations_per_round = 0;
  std::vector<std::uint64_t> measured_values;
  std::size_t rounds = 0;
  std::size_t total_iterations = 0;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

struct ProbabilityProbe {
  std::size_t qubits = 0;
  std::size_t iterations = 0;
  double analytic_p = 0.0;
  double simulated_p = 0.0;
};

// Flips `flag` exactly on basis states where `x` encodes `target`:
// X on every x qubit whose target bit is 0, multi-controlled CNot(flag, x),
// then the same X gates again.
void query(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag, std::uint64_t target);

// query with its gate list replayed in reverse; same unitary.
void query_adjoint(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag, std::uint64_t target);

// query, CPhase(pi) on the flag, inverse query: negates the amplitude of the
// marked basis state of `x`. The flag must start (and ends) in |0>.
void phase_flip_marked(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag,
                       std::uint64_t target);

// H, Not, CPhase(pi), Not, H on `q`: inversion about the mean up to a global phase of -1.
void diffuse(Machine& machine, const RegisterHandle& q);

// One phase_flip_marked followed by diffuse.
void grover_iteration(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag,
                      std::uint64_t target);

// Repeat { reset; H(q); `iterations` Grover iterations; measure q } until the
// measured value equals the target. Allocates q and the flag on `machine`.
SearchReport grover_search(const SearchParams& params, Machine& machine);

// Runs `iterations` Grover iterations for `target` on a fresh n-qubit register
// (plus flag) and pairs the marked-state probability read from the amplitudes
// with the analytic value.
ProbabilityProbe probe(std::size_t qubits, std::uint64_t target, std::size_t iterations, Machine& machine);

}  // namespace qgrover
