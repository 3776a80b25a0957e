#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "chanwit/closedform.hpp"

namespace chanwit::oracle {

using channels::Channel;
using channels::DensityMatrix;
using channels::Povm;
using closedform::UtilityResult;
using games::Game;

struct OracleConfig {
  std::size_t restarts = 20;
  std::size_t max_iters = 2000;
  /// Stop a restart once one see-saw round improves the value by less than this.
  double tol = 1e-10;
  std::uint64_t seed = 20201116;
  /// Bloch-grid resolution per angle for qubit_binary_grid.
  std::size_t grid_points = 200;
  /// Fixed-point POVM ascent iterations per decoding step (m > 2 only).
  std::size_t inner_iters = 25;
  /// Restarts run on up to this many threads; results do not depend on it.
  std::size_t threads = 1;

  /// Throws ValidationError unless restarts >= 1, tol > 0 and grid_points >= 2.
  void validate() const;
};

struct SeesawReport {
  UtilityResult result;
  /// Value (on the original game) after every see-saw round, per restart.
  std::vector<std::vector<double>> histories;
  /// Largest drop between consecutive rounds over all restarts (<= 0 if monotone).
  double worst_decrease = 0.0;
  /// Largest |sum_y pi_y - I| seen after any decoding step.
  double max_povm_residual = 0.0;
  /// Smallest POVM eigenvalue seen after any decoding step.
  double min_povm_eigenvalue = std::numeric_limits<double>::infinity();
  std::size_t best_restart = 0;
};

/// Alternating maximisation of the average payoff. The encoding step is exact
/// (top eigenvector of sum_y g(x,y) C^dagger(pi_y)); the decoding step is the
/// Helstrom measurement for two outputs and a fixed-point POVM ascent
/// otherwise. The game is shifted to nonnegative rows first and the value is
/// shifted back. The result is a lower bound on the utility.
SeesawReport seesaw_report(const Channel& ch, const Game& g, const OracleConfig& cfg);
UtilityResult seesaw(const Channel& ch, const Game& g, const OracleConfig& cfg);

/// Best decoding for a fixed encoding (exact for two outputs) and the
/// resulting average payoff on g.
struct DecodingResult {
  Povm povm;
  double value;
};
DecodingResult best_decoding(const Channel& ch, const Game& g,
                             std::span<const DensityMatrix> encoding, const OracleConfig& cfg);

/// Exhaustive search over orthonormal pure qubit encodings (Bloch direction
/// on a grid_points x grid_points (theta, phi) grid), each scored by the
/// Helstrom value for diag(g0, 1 - g0). The best few grid cells are then
/// refined by repeated local grids at doubling resolution.
UtilityResult qubit_binary_grid(const Channel& ch, double g0, std::size_t grid_points);

/// Exact utility of a classical channel p(z|w) (column-stochastic, k x n_in):
/// maximum over deterministic decodings [k] -> [m] and, per input, the best
/// channel input. Throws BudgetError when m^k exceeds 1e7.
double classical_utility(const Eigen::MatrixXd& p_cond, const Game& g);

}  // namespace chanwit::oracle
