#include "qgrover/exit_code.hpp"

#include "qgrover/errors.hpp"
#include "qgrover/qcl/diagnostics.hpp"

namespace qgrover {

ExitCode exit_code_for(const std::exception& error) {
  if (dynamic_cast<const qcl::LexError*>(&error) || dynamic_cast<const qcl::ParseError*>(&error)) {
    return ExitCode::Parse;
  }
  if (const auto* rt = dynamic_cast<const qcl::RuntimeError*>(&error)) {
    switch (rt->kind()) {
      case qcl::RuntimeErrorKind::Capacity: return ExitCode::Capacity;
      case qcl::RuntimeErrorKind::RoundLimit: return ExitCode::RoundLimit;
      default: return ExitCode::Runtime;
    }
  }
  if (dynamic_cast<const CapacityError*>(&error)) return ExitCode::Capacity;
  if (dynamic_cast<const DomainError*>(&error)) return ExitCode::Domain;
  if (dynamic_cast<const RoundLimitError*>(&error)) return ExitCode::RoundLimit;
  return ExitCode::Runtime;
}

}  // namespace qgrover
