#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <ostream>

#include "chanwit/random.hpp"
#include "cli/cli.hpp"
#include "cli/csv.hpp"

namespace chanwit::cli {
namespace {

constexpr double kAbove = 1e-6;
constexpr double kBelow = 2e-4;

struct Point {
  std::string params;
  double closed;
  double oracle;
};

using Sampler = std::function<Point(rnd::Rng&, std::size_t, const oracle::OracleConfig&)>;

Point pauli_point(rnd::Rng& rng, std::size_t, const oracle::OracleConfig& cfg) {
  const auto p = rnd::random_probability(4, rng);
  const double g0 = rnd::uniform(rng);
  const std::array<double, 4> l{p[0], p[1], p[2], p[3]};
  const auto grid = oracle::qubit_binary_grid(channels::pauli(l), g0, cfg.grid_points);
  return {"l0=" + fmt9(l[0]) + ";l1=" + fmt9(l[1]) + ";l2=" + fmt9(l[2]) + ";l3=" + fmt9(l[3]) +
              ";g0=" + fmt9(g0),
          closedform::utility_pauli_binary(l, g0).value, grid.value};
}

Point ampdamp_point(rnd::Rng& rng, std::size_t, const oracle::OracleConfig& cfg) {
  const double eta = rnd::uniform(rng);
  const double g0 = rnd::uniform(rng);
  const auto grid = oracle::qubit_binary_grid(channels::amplitude_damping(eta), g0, cfg.grid_points);
  return {"eta=" + fmt9(eta) + ";g0=" + fmt9(g0),
          closedform::utility_ampdamp_binary(eta, g0).value, grid.value};
}

// Qubit input goes through the grid; larger inputs through the see-saw.
Point cloning_point(rnd::Rng& rng, std::size_t i, const oracle::OracleConfig& cfg) {
  const std::size_t d = 2 + i % 2;
  const double g0 = rnd::uniform(rng);
  const auto ch = channels::cloning_1to2(d);
  const double num = d == 2 ? oracle::qubit_binary_grid(ch, g0, cfg.grid_points).value
                            : oracle::seesaw(ch, games::binary_discrimination(g0), cfg).value;
  return {"d=" + std::to_string(d) + ";g0=" + fmt9(g0),
          closedform::utility_cloning_binary(d, g0).value, num};
}

Point shifted_point(rnd::Rng& rng, std::size_t, const oracle::OracleConfig& cfg) {
  const double lambda = rnd::uniform(rng);
  const channels::DensityMatrix sigma(rnd::random_density(2, rng));
  const double g0 = rnd::uniform(rng);
  const auto& s = sigma.matrix();
  const auto grid =
      oracle::qubit_binary_grid(channels::shifted_depolarizing(lambda, sigma), g0, cfg.grid_points);
  return {"lambda=" + fmt9(lambda) + ";rx=" + fmt9(2.0 * s(0, 1).real()) +
              ";ry=" + fmt9(-2.0 * s(0, 1).imag()) + ";rz=" + fmt9((s(0, 0) - s(1, 1)).real()) +
              ";g0=" + fmt9(g0),
          closedform::utility_shifted_depolarizing_binary(lambda, sigma, g0).value, grid.value};
}

const std::map<std::string, Sampler>& samplers() {
  static const std::map<std::string, Sampler> table{{"pauli", pauli_point},
                                                    {"ampdamp", ampdamp_point},
                                                    {"cloning", cloning_point},
                                                    {"shifted", shifted_point}};
  return table;
}

}  // namespace

int cmd_verify(const VerifyOptions& opts, std::ostream& csv, std::ostream& err) {
  try {
    opts.oracle.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  for (const auto& f : opts.families) {
    if (!samplers().contains(f)) {
      err << "error: unknown family \"" << f << "\" (known: pauli, ampdamp, cloning, shifted)\n";
      return kExitInputError;
    }
  }

  csv << "family,params,closed,oracle,delta,pass\n";
  bool all_pass = true;
  for (std::size_t fi = 0; fi < opts.families.size(); ++fi) {
    const auto& family = opts.families[fi];
    auto rng = rnd::make_rng(opts.oracle.seed, 1000 + fi);
    for (std::size_t i = 0; i < opts.points; ++i) {
      const Point p = samplers().at(family)(rng, i, opts.oracle);
      const double delta = p.oracle - p.closed;
      const bool pass = delta <= kAbove && delta >= -kBelow;
      all_pass = all_pass && pass;
      csv << family << ',' << p.params << ',' << fmt9(p.closed) << ',' << fmt9(p.oracle) << ','
          << fmt9(delta) << ',' << (pass ? "true" : "false") << '\n';
    }
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace chanwit::cli
