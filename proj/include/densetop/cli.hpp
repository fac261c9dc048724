#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densetop/io.hpp"

namespace densetop::cli {

/// One batch invocation. Numeric fields are already parsed; unset optionals
/// fall back to per-command defaults.
struct CommandRequest {
  std::string subcommand;
  std::optional<std::string> input;  // file path, or inline JSON starting with '{'
  std::optional<std::string> output;
  std::uint64_t seed = 0;
  bool json_only = false;
  std::optional<std::size_t> n;
  std::optional<std::vector<std::size_t>> dense_set;  // --F
  std::optional<double> eps;
  std::optional<std::size_t> samples;  // --K
  std::optional<double> horizon;       // --T
  std::optional<double> dt;
  std::optional<std::size_t> segments;
  std::string initial = "sine";  // demo-schrodinger: sine | zero
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

struct CommandResult {
  int exit_code = kExitOk;
  io::json report;
  std::string summary;
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand. Never throws for module errors: they become a report
/// with an "error" object and exit code 2.
CommandResult run(const CommandRequest& request);

/// Canonical report bytes: two-space indented JSON plus a trailing newline.
std::string render(const io::json& report);

// Locale-independent numeric parsing; throw Error(ParseError).
double parse_double(std::string_view text);
std::uint64_t parse_unsigned(std::string_view text);
std::vector<std::size_t> parse_index_list(std::string_view text);

/// Full command-line entry point: parses flags, runs, writes the report to
/// --output (or standard output) and prints the summary unless --json-only.
int main(int argc, char** argv);

}  // namespace densetop::cli
