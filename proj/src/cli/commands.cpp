#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qgrover/cli.hpp"
#include "qgrover/errors.hpp"
#include "qgrover/exit_code.hpp"
#include "qgrover/qcl/interpreter.hpp"
#include "qgrover/qcl/parser.hpp"

namespace qgrover::cli {

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

std::string join_measured(const std::vector<std::uint64_t>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string format_probability(double p) {
  std::ostringstream os;
  os << std::setprecision(12) << p;
  return os.str();
}

std::uint64_t positive_target(std::int64_t value) {
  if (value < 1) throw DomainError("search target must be >= 1, got " + std::to_string(value));
  return static_cast<std::uint64_t>(value);
}

SearchReport search_one(std::int64_t target, const CliConfig& config) {
  const SearchParams params = SearchParams::for_target(positive_target(target), config.max_rounds);
  Machine machine(config.max_qubits, config.seed);
  return grover_search(params, machine);
}

std::vector<std::int64_t> parse_int_list(const std::vector<std::string>& items) {
  std::vector<std::int64_t> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      piece.erase(std::remove_if(piece.begin(), piece.end(), [](unsigned char c) { return std::isspace(c); }),
                  piece.end());
      if (piece.empty()) continue;
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(piece, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != piece.size()) throw CLI::ValidationError("not an integer: '" + piece + "'");
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::optional<std::size_t> published_iteration_mismatch(std::uint64_t input) {
  if (input == 9999) return 54;
  return std::nullopt;
}

nlohmann::ordered_json to_json(const SearchReport& report) {
  nlohmann::ordered_json j;
  j["input"] = report.input;
  j["qubits"] = report.qubits;
  j["iterations"] = report.iterations_per_round;
  j["measured"] = report.measured_values;
  j["rounds"] = report.rounds;
  j["total_iterations"] = report.total_iterations;
  return j;
}

std::string default_entry(const qcl::Program& program) {
  for (auto it = program.procedures.rbegin(); it != program.procedures.rend(); ++it) {
    if (it->params.empty()) return it->name;
  }
  return {};
}

int cmd_run(const std::string& path, const CliConfig& config, const std::vector<std::int64_t>& input_feed,
            const std::optional<std::string>& entry, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": cannot open file\n";
    return code(ExitCode::Usage);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  qcl::Program program;
  try {
    program = qcl::parse_source(buffer.str());
  } catch (const qcl::SourceError& e) {
    err << path << ":" << e.what() << "\n";
    return code(ExitCode::Parse);
  }

  const std::string entry_name = entry ? *entry : default_entry(program);
  if (entry_name.empty()) {
    err << path << ": no procedure without parameters to run; pass --entry\n";
    return code(ExitCode::Runtime);
  }

  try {
    Machine machine(config.max_qubits, config.seed);
    qcl::InterpreterOptions options;
    options.max_rounds = config.max_rounds;
    options.echo = &out;
    const auto result = qcl::interpret(program, entry_name, machine, input_feed, options);
    if (result.exit_status != 0) err << path << ":" << result.diagnostic << "\n";
    return result.exit_status;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return code(exit_code_for(e));
  }
}

int cmd_search(std::int64_t target, const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const SearchReport report = search_one(target, config);
    if (config.json) {
      out << to_json(report).dump() << "\n";
    } else {
      out << "Input: " << report.input << "\n"
          << "Qubits: " << report.qubits << "\n"
          << "Iterations: " << report.iterations_per_round << "\n"
          << "List of Measured Number: " << join_measured(report.measured_values, " - ") << "\n"
          << "Rounds: " << report.rounds << "\n"
          << "Total Iterations: " << report.total_iterations << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code(exit_code_for(e));
  }
}

int cmd_table(const std::vector<std::int64_t>& inputs, const CliConfig& config, std::ostream& out,
              std::ostream& err) {
  std::vector<TableRow> rows;
  rows.reserve(inputs.size());
  int status = 0;
  for (const std::int64_t input : inputs) {
    TableRow row;
    row.input = static_cast<std::uint64_t>(input);
    try {
      row.report = search_one(input, config);
    } catch (const Error& e) {
      row.error = e.what();
      row.exit_code = code(exit_code_for(e));
      err << "error: input " << input << ": " << e.what() << "\n";
      if (status == 0) status = row.exit_code;
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::string> notes;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].report) continue;
    const auto reference = published_iteration_mismatch(rows[i].input);
    if (reference && *reference != rows[i].report->iterations_per_round) {
      notes.push_back("input " + std::to_string(rows[i].input) + ": iterations = ceil(pi/8*sqrt(2^" +
                      std::to_string(rows[i].report->qubits) + ")) = " +
                      std::to_string(rows[i].report->iterations_per_round) +
                      "; the published results table lists " + std::to_string(*reference));
    }
  }

  if (config.json) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].report) {
        j["rows"].push_back(to_json(*rows[i].report));
      } else {
        nlohmann::ordered_json e;
        e["input"] = static_cast<std::int64_t>(inputs[i]);
        e["error"] = rows[i].error;
        j["rows"].push_back(e);
      }
    }
    if (!notes.empty()) j["notes"] = notes;
    out << j.dump() << "\n";
    return status;
  }

  const std::vector<std::string> header = {"Input", "Qubits", "Iterations", "List of Measured Number",
                                           "Total Iterations"};
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.report) {
      const bool noted = published_iteration_mismatch(r.input).has_value() &&
                         *published_iteration_mismatch(r.input) != r.report->iterations_per_round;
      cells.push_back({std::to_string(r.report->input), std::to_string(r.report->qubits),
                       std::to_string(r.report->iterations_per_round) + (noted ? "*" : ""),
                       join_measured(r.report->measured_values, " - "), std::to_string(r.report->total_iterations)});
    } else {
      cells.push_back({std::to_string(inputs[i]), "-", "-", "error: " + r.error, "-"});
    }
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }
  auto print_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << " | ";
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size(), ' ');
    }
    out << "\n";
  };
  print_row(header);
  std::size_t rule = 3 * (header.size() - 1);
  for (auto w : widths) rule += w;
  out << std::string(rule, '-') << "\n";
  for (const auto& row : cells) print_row(row);
  for (const auto& note : notes) out << "* " << note << "\n";
  return status;
}

int cmd_probe(std::int64_t qubits, std::int64_t target, std::int64_t iterations, const CliConfig& config,
              std::ostream& out, std::ostream& err) {
  try {
    if (qubits < 1) throw DomainError("qubit count must be >= 1");
    if (target < 0) throw DomainError("target must be >= 0");
    if (iterations < 0) throw DomainError("iteration count must be >= 0");
    if (qubits >= 63 || static_cast<std::uint64_t>(target) >> qubits) {
      throw DomainError("target " + std::to_string(target) + " does not fit in " + std::to_string(qubits) +
                        " qubits");
    }
    Machine machine(config.max_qubits, config.seed);
    const ProbabilityProbe p = probe(static_cast<std::size_t>(qubits), static_cast<std::uint64_t>(target),
                                     static_cast<std::size_t>(iterations), machine);
    const double delta = std::abs(p.analytic_p - p.simulated_p);
    if (config.json) {
      nlohmann::ordered_json j;
      j["n"] = p.qubits;
      j["bil"] = target;
      j["k"] = p.iterations;
      j["analytic_p"] = p.analytic_p;
      j["simulated_p"] = p.simulated_p;
      j["delta"] = delta;
      out << j.dump() << "\n";
    } else {
      out << "n: " << p.qubits << "\n"
          << "bil: " << target << "\n"
          << "k: " << p.iterations << "\n"
          << "analytic_p: " << format_probability(p.analytic_p) << "\n"
          << "simulated_p: " << format_probability(p.simulated_p) << "\n"
          << "delta: " << format_probability(delta) << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code(exit_code_for(e));
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical simulator of Grover's quantum search", "qgrover"};
  app.require_subcommand(1);

  CliConfig config;
  auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Seed of the measurement random stream")->capture_default_str();
    sub->add_option("--max-qubits", config.max_qubits, "Qubit budget of the simulated machine")
        ->capture_default_str();
    sub->add_option("--max-rounds", config.max_rounds, "Give up after this many search rounds")
        ->capture_default_str();
    sub->add_flag("--json", config.json, "Machine-readable output");
  };

  std::string file;
  std::vector<std::string> input_values;
  std::string entry;
  auto* run_cmd = app.add_subcommand("run", "Execute a QCL-subset program");
  run_cmd->add_option("file", file, "Program source")->required();
  run_cmd->add_option("--input", input_values, "Values fed to `input` statements, comma separated")
      ->delimiter(',');
  run_cmd->add_option("--entry", entry, "Procedure to run (default: last one without parameters)");
  add_common(run_cmd);

  std::int64_t target = 0;
  auto* search_cmd = app.add_subcommand("search", "Run one Grover search");
  search_cmd->add_option("bil", target, "Value to search for")->required();
  add_common(search_cmd);

  std::vector<std::string> table_inputs;
  auto* table_cmd = app.add_subcommand("table", "Reproduce the results table for a list of inputs");
  table_cmd->add_option("inputs", table_inputs, "Comma separated inputs");
  add_common(table_cmd);

  std::int64_t probe_n = 0;
  std::int64_t probe_bil = 0;
  std::int64_t probe_k = 0;
  auto* probe_cmd = app.add_subcommand("probe", "Compare simulated and analytic success probability");
  probe_cmd->add_option("n", probe_n, "Qubit count")->required();
  probe_cmd->add_option("bil", probe_bil, "Marked value")->required();
  probe_cmd->add_option("k", probe_k, "Grover iterations")->required();
  add_common(probe_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : code(ExitCode::Usage);
  }

  try {
    if (*run_cmd) {
      return cmd_run(file, config, parse_int_list(input_values), entry.empty() ? std::nullopt : std::optional(entry),
                     out, err);
    }
    if (*search_cmd) return cmd_search(target, config, out, err);
    if (*table_cmd) return cmd_table(parse_int_list(table_inputs), config, out, err);
    if (*probe_cmd) return cmd_probe(probe_n, probe_bil, probe_k, config, out, err);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return code(ExitCode::Usage);
  }
  return code(ExitCode::Usage);
}

}  // namespace qgrover::cli
