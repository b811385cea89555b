#include "qgrover/qcl/diagnostics.hpp"

namespace qgrover::qcl {

const char* to_string(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::UnboundName: return "UnboundName";
    case RuntimeErrorKind::TypeMismatch: return "TypeMismatch";
    case RuntimeErrorKind::EmptyInputFeed: return "EmptyInputFeed";
    case RuntimeErrorKind::RoundLimit: return "RoundLimit";
    case RuntimeErrorKind::NonUnitaryInverse: return "NonUnitaryInverse";
    case RuntimeErrorKind::Unsupported: return "Unsupported";
    case RuntimeErrorKind::Domain: return "DomainError";
    case RuntimeErrorKind::Capacity: return "CapacityError";
    case RuntimeErrorKind::Machine: return "MachineError";
  }
  return "?";
}

}  // namespace qgrover::qcl
