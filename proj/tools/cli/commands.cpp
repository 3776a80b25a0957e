#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>

#include "chanwit/io.hpp"
#include "cli/cli.hpp"

namespace chanwit::cli {

std::optional<Mode> parse_mode(const std::string& text) {
  if (text == "auto") return Mode::Auto;
  if (text == "closedform") return Mode::ClosedForm;
  if (text == "oracle") return Mode::Oracle;
  if (text == "verify") return Mode::Verify;
  return std::nullopt;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CHANWIT_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0') return v;
  }
  return oracle::OracleConfig{}.seed;
}

int cmd_utility(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  std::optional<channels::Channel> ch;
  std::optional<games::Game> g;
  try {
    spec.oracle.validate();
    ch.emplace(io::parse_channel(io::read_json_file(spec.channel_path)));
    g.emplace(io::parse_game(io::read_json_file(spec.game_path)));
    if (g->n() == 0 || g->m() == 0) throw io::ParseError("game: empty payoff matrix");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    switch (spec.mode) {
      case Mode::ClosedForm: {
        const auto cf = closedform::dispatch(*ch, *g);
        if (!cf) {
          err << "error: no closed form for channel " << channels::describe(ch->label())
              << " with a " << g->n() << "x" << g->m() << " game\n";
          return kExitInputError;
        }
        out << io::to_json(*cf).dump(2) << '\n';
        return kExitOk;
      }
      case Mode::Oracle:
        out << io::to_json(oracle::seesaw(*ch, *g, spec.oracle)).dump(2) << '\n';
        return kExitOk;
      case Mode::Auto: {
        if (const auto cf = closedform::dispatch(*ch, *g)) {
          out << io::to_json(*cf).dump(2) << '\n';
          return kExitOk;
        }
        err << "warning: no closed form applies; reporting a numerical lower bound\n";
        out << io::to_json(oracle::seesaw(*ch, *g, spec.oracle)).dump(2) << '\n';
        return kExitOk;
      }
      case Mode::Verify: {
        const auto cf = closedform::dispatch(*ch, *g);
        if (!cf) {
          err << "error: verify mode needs a closed form for channel "
              << channels::describe(ch->label()) << '\n';
          return kExitInputError;
        }
        const auto num = oracle::seesaw(*ch, *g, spec.oracle);
        const double delta = num.value - cf->value;
        const bool pass = delta <= 1e-6 && delta >= -2e-4;
        io::json report{{"closed", io::to_json(*cf)},
                        {"oracle", io::to_json(num)},
                        {"delta", delta},
                        {"pass", pass}};
        out << report.dump(2) << '\n';
        return pass ? kExitOk : kExitVerifyFailed;
      }
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace chanwit::cli
