#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgrover/grover.hpp"
#include "qgrover/qcl/ast.hpp"
#include "qgrover/statevec.hpp"

namespace qgrover::cli {

struct CliConfig {
  std::uint64_t seed = 0;
  std::size_t max_qubits = Machine::kMaxCapacity;
  bool json = false;
  std::size_t max_rounds = kDefaultMaxRounds;
};

struct TableRow {
  std::uint64_t input = 0;
  std::optional<SearchReport> report;
  std::string error;
  int exit_code = 0;
};

// Iteration counts from the historical results table that the formula does
// not reproduce, keyed by input.
std::optional<std::size_t> published_iteration_mismatch(std::uint64_t input);

nlohmann::ordered_json to_json(const SearchReport& report);

// Entry point used when `--entry` is not given: the last zero-argument procedure.
std::string default_entry(const qcl::Program& program);

int cmd_run(const std::string& path, const CliConfig& config, const std::vector<std::int64_t>& input_feed,
            const std::optional<std::string>& entry, std::ostream& out, std::ostream& err);
int cmd_search(std::int64_t target, const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_table(const std::vector<std::int64_t>& inputs, const CliConfig& config, std::ostream& out,
              std::ostream& err);
int cmd_probe(std::int64_t qubits, std::int64_t target, std::int64_t iterations, const CliConfig& config,
              std::ostream& out, std::ostream& err);

// Parses `args` (args[0] is the program name) and dispatches to a command.
// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgrover::cli
