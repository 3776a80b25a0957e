#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chanwit/oracle.hpp"

namespace chanwit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

enum class Mode { Auto, ClosedForm, Oracle, Verify };

/// Parses "auto", "closedform", "oracle" or "verify"; nullopt otherwise.
std::optional<Mode> parse_mode(const std::string& text);

/// Seed precedence: explicit flag, then CHANWIT_SEED, then the oracle default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

struct RunSpec {
  std::string channel_path;
  std::string game_path;
  Mode mode = Mode::Auto;
  oracle::OracleConfig oracle;
};

/// Prints the utility as JSON on `out`; diagnostics go to `err`.
int cmd_utility(const RunSpec& spec, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::vector<std::string> families{"pauli", "ampdamp", "cloning", "shifted"};
  std::size_t points = 8;
  oracle::OracleConfig oracle;
};

/// Samples each family deterministically from the oracle seed and writes
/// the CSV report. Pass means closed - 2e-4 <= oracle <= closed + 1e-6.
int cmd_verify(const VerifyOptions& opts, std::ostream& csv, std::ostream& err);

/// Known ids: "ampdamp", "cloning".
int cmd_figure(const std::string& id, std::ostream& csv, std::ostream& err);

}  // namespace chanwit::cli
