#include "qgrover/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qgrover/errors.hpp"

namespace qgrover {

RegisterHandle RegisterHandle::at(std::size_t i) const {
  if (i >= qubits_.size()) {
    throw InvalidRegister("register index " + std::to_string(i) + " out of range for width " +
                          std::to_string(qubits_.size()));
  }
  return RegisterHandle{qubits_[i]};
}

std::uint64_t RegisterHandle::mask() const {
  std::uint64_t m = 0;
  for (auto q : qubits_) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t RegisterHandle::extract(std::uint64_t basis_index) const {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    value |= ((basis_index >> qubits_[i]) & 1u) << i;
  }
  return value;
}

Machine::Machine(std::size_t max_qubits, std::uint64_t seed) : max_qubits_(max_qubits), rng_(seed) {
  if (max_qubits < 1 || max_qubits > kMaxCapacity) {
    throw CapacityError("max_qubits must be in [1, " + std::to_string(kMaxCapacity) + "], got " +
                        std::to_string(max_qubits));
  }
}

RegisterHandle Machine::allocate(std::size_t width) {
  if (width > max_qubits_ - allocated_) {
    throw CapacityError("cannot allocate " + std::to_string(width) + " qubits: " +
                        std::to_string(allocated_) + " of " + std::to_string(max_qubits_) + " in use");
  }
  std::vector<std::size_t> qubits(width);
  for (std::size_t i = 0; i < width; ++i) qubits[i] = allocated_ + i;
  allocated_ += width;
  // New qubits are the high bits, so existing amplitudes keep their index.
  amplitudes_.resize(std::size_t{1} << allocated_, Amplitude{0.0, 0.0});
  return RegisterHandle{std::move(qubits)};
}

void Machine::validate(const RegisterHandle& reg) const {
  std::uint64_t seen = 0;
  for (auto q : reg.qubits()) {
    if (q >= allocated_) {
      throw InvalidRegister("qubit " + std::to_string(q) + " is not allocated (" +
                            std::to_string(allocated_) + " allocated)");
    }
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit) throw InvalidRegister("qubit " + std::to_string(q) + " repeated in register");
    seen |= bit;
  }
}

void Machine::apply_hadamard(const RegisterHandle& reg) {
  validate(reg);
  constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
  const std::size_t dim = amplitudes_.size();
  for (auto q : reg.qubits()) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & stride) continue;
      const Amplitude a = amplitudes_[i];
      const Amplitude b = amplitudes_[i | stride];
      amplitudes_[i] = (a + b) * kInvSqrt2;
      amplitudes_[i | stride] = (a - b) * kInvSqrt2;
    }
  }
}

void Machine::apply_not(const RegisterHandle& reg) {
  validate(reg);
  const std::size_t dim = amplitudes_.size();
  for (auto q : reg.qubits()) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(i & stride)) std::swap(amplitudes_[i], amplitudes_[i | stride]);
    }
  }
}

void Machine::apply_cnot(const RegisterHandle& target, const RegisterHandle& controls) {
  validate(target);
  validate(controls);
  if (target.width() != 1) {
    throw InvalidRegister("CNot target must be a single qubit, got width " + std::to_string(target.width()));
  }
  const std::uint64_t target_bit = target.mask();
  const std::uint64_t control_mask = controls.mask();
  if (target_bit & control_mask) throw OverlapError("CNot target qubit is also a control");
  const std::size_t dim = amplitudes_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(i & target_bit) && (i & control_mask) == control_mask) {
      std::swap(amplitudes_[i], amplitudes_[i | target_bit]);
    }
  }
}

void Machine::apply_cphase(double angle, const RegisterHandle& reg) {
  validate(reg);
  const Amplitude phase = std::polar(1.0, angle);
  const std::uint64_t mask = reg.mask();
  const std::size_t dim = amplitudes_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) amplitudes_[i] *= phase;
  }
}

double Machine::next_uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

MeasurementOutcome Machine::measure(const RegisterHandle& reg) {
  validate(reg);
  const double total = total_probability();
  if (!(std::abs(total - 1.0) <= kProbabilityTolerance)) {
    throw NumericalError("total probability " + std::to_string(total) + " deviates from 1 before measurement");
  }

  // Sample a basis index from |a_i|^2; its register bits are the outcome.
  const double r = next_uniform() * total;
  const std::size_t dim = amplitudes_.size();
  std::size_t chosen = dim;
  std::size_t last_nonzero = 0;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double p = std::norm(amplitudes_[i]);
    if (p == 0.0) continue;
    last_nonzero = i;
    cumulative += p;
    if (r < cumulative) {
      chosen = i;
      break;
    }
  }
  if (chosen == dim) chosen = last_nonzero;

  const std::uint64_t mask = reg.mask();
  const std::uint64_t pattern = chosen & mask;
  double p_value = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == pattern) p_value += std::norm(amplitudes_[i]);
  }
  const double scale = 1.0 / std::sqrt(p_value);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == pattern) {
      amplitudes_[i] *= scale;
    } else {
      amplitudes_[i] = Amplitude{0.0, 0.0};
    }
  }
  return MeasurementOutcome{reg.extract(chosen), std::min(1.0, p_value / total)};
}

void Machine::reset() {
  std::fill(amplitudes_.begin(), amplitudes_.end(), Amplitude{0.0, 0.0});
  amplitudes_[0] = Amplitude{1.0, 0.0};
}

void Machine::load_amplitudes(std::span<const Amplitude> amplitudes) {
  if (amplitudes.size() != amplitudes_.size()) {
    throw InvalidRegister("state length " + std::to_string(amplitudes.size()) + " does not match 2^" +
                          std::to_string(allocated_));
  }
  double total = 0.0;
  for (const auto& a : amplitudes) total += std::norm(a);
  if (!(std::abs(total - 1.0) <= kProbabilityTolerance)) {
    throw NumericalError("loaded state is not normalized (total probability " + std::to_string(total) + ")");
  }
  std::copy(amplitudes.begin(), amplitudes.end(), amplitudes_.begin());
}

double Machine::total_probability() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

double Machine::probability_of(const RegisterHandle& reg, std::uint64_t value) const {
  validate(reg);
  double p = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (reg.extract(i) == value) p += std::norm(amplitudes_[i]);
  }
  return p;
}

void Machine::check_normalized(double tolerance) const {
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw NumericalError("non-finite amplitude");
  }
  const double total = total_probability();
  if (!(std::abs(total - 1.0) <= tolerance)) {
    throw NumericalError("state norm drifted: total probability " + std::to_string(total));
  }
}

RealMatrix hadamard_matrix(std::size_t m) {
  if (m > 10) throw CapacityError("hadamard_matrix supports m <= 10, got " + std::to_string(m));
  RealMatrix h{1, {1.0}};
  constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t level = 1; level <= m; ++level) {
    const std::size_t half = h.dim;
    RealMatrix next{2 * half, std::vector<double>(4 * half * half)};
    for (std::size_t r = 0; r < half; ++r) {
      for (std::size_t c = 0; c < half; ++c) {
        const double v = kInvSqrt2 * h(r, c);
        next(r, c) = v;
        next(r, c + half) = v;
        next(r + half, c) = v;
        next(r + half, c + half) = -v;
      }
    }
    h = std::move(next);
  }
  return h;
}

double distance_up_to_global_phase(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  if (a.size() != b.size()) throw InvalidRegister("state size mismatch");
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (std::abs(b[i]) > std::abs(b[pivot])) pivot = i;
  }
  Amplitude phase{1.0, 0.0};
  if (std::abs(a[pivot]) > 0.0 && std::abs(b[pivot]) > 0.0) {
    const Amplitude ratio = a[pivot] / b[pivot];
    phase = ratio / std::abs(ratio);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

double max_abs_difference(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  if (a.size() != b.size()) throw InvalidRegister("state size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace qgrover
