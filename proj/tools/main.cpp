#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli/cli.hpp"

namespace {

using namespace chanwit::cli;

// Writes `body` to `path`, or to stdout when path is empty.
int emit(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return kExitOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write \"" << path << "\"\n";
    return kExitInputError;
  }
  out << body;
  return kExitOk;
}

struct OracleFlags {
  std::optional<std::size_t> restarts;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;

  void attach(CLI::App& app) {
    app.add_option("--restarts", restarts, "see-saw random restarts")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "RNG seed (falls back to CHANWIT_SEED)");
    app.add_option("--grid", grid, "qubit Bloch grid resolution")->check(CLI::Range(2, 100000));
  }

  chanwit::oracle::OracleConfig config() const {
    chanwit::oracle::OracleConfig cfg;
    if (restarts) cfg.restarts = *restarts;
    if (grid) cfg.grid_points = *grid;
    cfg.seed = resolve_seed(seed);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Communication utility of quantum channels"};
  app.require_subcommand(1);

  std::string out_path;

  auto* utility = app.add_subcommand("utility", "compute the utility of a channel for a game");
  std::string channel_path, game_path, mode_text = "auto";
  OracleFlags utility_flags;
  utility->add_option("--channel", channel_path, "channel JSON file")->required();
  utility->add_option("--game", game_path, "game JSON file")->required();
  utility->add_option("--mode", mode_text, "auto | closedform | oracle | verify");
  utility->add_option("--out", out_path, "write JSON here instead of stdout");
  utility_flags.attach(*utility);

  auto* verify = app.add_subcommand("verify", "compare closed forms against numerical oracles");
  VerifyOptions verify_opts;
  OracleFlags verify_flags;
  verify->add_option("--family", verify_opts.families, "pauli | ampdamp | cloning | shifted")
      ->delimiter(',');
  verify->add_option("--points", verify_opts.points, "samples per family")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "write CSV here instead of stdout");
  verify_flags.attach(*verify);

  auto* figure = app.add_subcommand("figure", "emit a figure dataset as CSV");
  std::string figure_id;
  figure->add_option("--figure", figure_id, "ampdamp | cloning")->required();
  figure->add_option("--out", out_path, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  std::ostringstream body;
  int code = kExitInputError;
  if (utility->parsed()) {
    const auto mode = parse_mode(mode_text);
    if (!mode) {
      std::cerr << "error: unknown mode \"" << mode_text << "\"\n";
      return kExitInputError;
    }
    code = cmd_utility({channel_path, game_path, *mode, utility_flags.config()}, body, std::cerr);
  } else if (verify->parsed()) {
    verify_opts.oracle = verify_flags.config();
    code = cmd_verify(verify_opts, body, std::cerr);
  } else if (figure->parsed()) {
    code = cmd_figure(figure_id, body, std::cerr);
  }
  if (code == kExitInputError) return code;
  const int write = emit(out_path, body.str());
  return write != kExitOk ? write : code;
}
