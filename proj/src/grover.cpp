#include "qgrover/grover.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qgrover/errors.hpp"

namespace qgrover {

std::size_t qubits_needed(std::uint64_t target) {
  if (target < 1) throw DomainError("search target must be >= 1");
  return static_cast<std::size_t>(std::bit_width(target));
}

std::size_t iterations_needed(std::size_t qubits) {
  if (qubits < 1) throw DomainError("qubit count must be >= 1");
  if (qubits > 62) throw DomainError("qubit count too large: " + std::to_string(qubits));
  const double n = std::ldexp(1.0, static_cast<int>(qubits));
  return static_cast<std::size_t>(std::ceil(std::numbers::pi / 8.0 * std::sqrt(n)));
}

double analytic_success_probability(std::size_t qubits, std::size_t iterations) {
  if (qubits < 1) throw DomainError("qubit count must be >= 1");
  const double theta = std::asin(std::pow(2.0, -0.5 * static_cast<double>(qubits)));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

SearchParams SearchParams::for_target(std::uint64_t target, std::size_t max_rounds) {
  SearchParams p;
  p.target = target;
  p.qubits = qubits_needed(target);
  p.iterations = iterations_needed(p.qubits);
  p.max_rounds = max_rounds;
  return p;
}

namespace {

void check_query_args(const RegisterHandle& x, const RegisterHandle& flag, std::uint64_t target) {
  if (flag.width() != 1) throw InvalidRegister("flag register must have width 1");
  for (auto q : flag.qubits()) {
    for (auto xq : x.qubits()) {
      if (q == xq) throw OverlapError("flag qubit is part of the searched register");
    }
  }
  if (x.width() < 64 && target >> x.width()) {
    throw DomainError("target " + std::to_string(target) + " does not fit in " + std::to_string(x.width()) +
                      " qubits");
  }
}

void flip_zero_bits(Machine& machine, const RegisterHandle& x, std::uint64_t target, bool descending) {
  const std::size_t w = x.width();
  for (std::size_t step = 0; step < w; ++step) {
    const std::size_t i = descending ? w - 1 - step : step;
    if (!((target >> i) & 1u)) machine.apply_not(x.at(i));
  }
}

}  // namespace

void query(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag, std::uint64_t target) {
  check_query_args(x, flag, target);
  flip_zero_bits(machine, x, target, false);
  machine.apply_cnot(flag, x);
  flip_zero_bits(machine, x, target, false);
}

void query_adjoint(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag, std::uint64_t target) {
  check_query_args(x, flag, target);
  flip_zero_bits(machine, x, target, true);
  machine.apply_cnot(flag, x);
  flip_zero_bits(machine, x, target, true);
}

void phase_flip_marked(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag,
                       std::uint64_t target) {
  check_query_args(x, flag, target);
  const double excited = machine.probability_of(flag, 1);
  if (excited > kProbabilityTolerance) {
    throw AncillaError("flag qubit not in |0> (P(1) = " + std::to_string(excited) + ")");
  }
  query(machine, x, flag, target);
  machine.apply_cphase(std::numbers::pi, flag);
  query_adjoint(machine, x, flag, target);
}

void diffuse(Machine& machine, const RegisterHandle& q) {
  machine.apply_hadamard(q);
  machine.apply_not(q);
  machine.apply_cphase(std::numbers::pi, q);
  machine.apply_not(q);
  machine.apply_hadamard(q);
}

void grover_iteration(Machine& machine, const RegisterHandle& x, const RegisterHandle& flag,
                      std::uint64_t target) {
  phase_flip_marked(machine, x, flag, target);
  diffuse(machine, x);
}

SearchReport grover_search(const SearchParams& params, Machine& machine) {
  if (params.target < 1) throw DomainError("search target must be >= 1");
  const RegisterHandle q = machine.allocate(params.qubits);
  const RegisterHandle flag = machine.allocate(1);

  SearchReport report;
  report.input = params.target;
  report.qubits = params.qubits;
  report.iterations_per_round = params.iterations;

  std::uint64_t measured = 0;
  do {
    if (report.rounds == params.max_rounds) {
      throw RoundLimitError("target " + std::to_string(params.target) + " not found within " +
                            std::to_string(params.max_rounds) + " rounds");
    }
    machine.reset();
    machine.apply_hadamard(q);
    for (std::size_t i = 0; i < params.iterations; ++i) grover_iteration(machine, q, flag, params.target);
    measured = machine.measure(q).value;
    report.measured_values.push_back(measured);
    ++report.rounds;
  } while (measured != params.target);
  machine.reset();

  report.total_iterations = report.iterations_per_round * report.rounds;
  return report;
}

ProbabilityProbe probe(std::size_t qubits, std::uint64_t target, std::size_t iterations, Machine& machine) {
  if (qubits < 1) throw DomainError("probe needs at least one qubit");
  if (qubits >= 64 || target >> qubits) {
    throw DomainError("target " + std::to_string(target) + " does not fit in " + std::to_string(qubits) +
                      " qubits");
  }
  const RegisterHandle q = machine.allocate(qubits);
  const RegisterHandle flag = machine.allocate(1);
  machine.reset();
  machine.apply_hadamard(q);
  for (std::size_t i = 0; i < iterations; ++i) grover_iteration(machine, q, flag, target);

  ProbabilityProbe result;
  result.qubits = qubits;
  result.iterations = iterations;
  result.analytic_p = analytic_success_probability(qubits, iterations);
  result.simulated_p = machine.probability_of(q, target);
  return result;
}

}  // namespace qgrover
