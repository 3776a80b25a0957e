#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chanwit/channels.hpp"
#include "chanwit/games.hpp"

namespace chanwit::closedform {

using channels::Channel;
using channels::DensityMatrix;
using channels::Povm;
using games::Game;
using mat::CMatrix;

/// Optimal average payoff of a game over a channel, with the strategy that
/// attains it where one is known.
struct UtilityResult {
  double value = 0.0;
  std::optional<std::vector<DensityMatrix>> encoding;
  std::optional<Povm> decoding;
  /// Classical post-processing (channel output symbol -> Bob's answer) when
  /// the decoding is a relabelling of a fixed measurement.
  std::optional<std::vector<std::size_t>> decision;
  /// Which formula or numerical method produced the value.
  std::string provenance;
  /// Set by numerical maximisers: the value is only a certified lower bound.
  bool lower_bound = false;
  bool converged = true;
};

struct HelstromResult {
  CMatrix helstrom;
  double value = 0.0;
  /// {projector onto eigenvalues >= 0, its complement}.
  Povm povm;
};

/// sum_{x,y} g(x,y) Tr[C(rho_x) pi_y].
double average_payoff(const Channel& ch, const Game& g, std::span<const DensityMatrix> encoding,
                      const Povm& decoding);

/// H = g0 C(rho0) - (1 - g0) C(rho1); value (1 + ||H||_1) / 2.
HelstromResult helstrom(const Channel& ch, const DensityMatrix& rho0, const DensityMatrix& rho1,
                        double g0);
/// Same, from the channel outputs directly.
HelstromResult helstrom_outputs(const CMatrix& out0, const CMatrix& out1, double g0);

// --- arbitrary games -------------------------------------------------------

/// Noiseless d-dimensional channel. Orthonormal encodings with a commuting
/// projective decoding are optimal, so the value is the best choice of at
/// most d outputs S: max_S sum_x max_{y in S} g(x, y), found by enumerating
/// all C(m, min(m, d)) subsets.
UtilityResult utility_identity(const Game& g, std::size_t d);
/// Unitary channel: identity strategy with the decoding rotated by u.
UtilityResult utility_unitary(const Game& g, const CMatrix& u);
/// Dephasing leaves the identity value unchanged; strategy along `basis`.
UtilityResult utility_dephasing(double lambda, const Game& g, const CMatrix& basis);
UtilityResult utility_dephasing(double lambda, const Game& g, std::size_t d);
/// max_y sum_x g(x, y); any encoding, decoding pi_y = [y == y*] 1.
UtilityResult utility_trace_class(const Game& g, std::size_t din = 1, std::size_t dout = 1);
/// lambda U(id_d, g) + (1 - lambda) max_y sum_x g(x, y).
UtilityResult utility_erasure(double lambda, const Game& g, std::size_t d);
/// Quantum-classical channel of `povm`: maximum over every relabelling
/// f: [k] -> [m] of sum_x lambda_max(sum_y g(x, f(y)) pi_y). Throws
/// BudgetError when k log2(m) > 20.
UtilityResult utility_qc(const Povm& povm, const Game& g);

// --- unbiased and discrimination games ---------------------------------------

/// lambda U(id_d, g) for unbiased games. Games whose columns all share the
/// sum c are shifted to unbiased first, giving lambda U(id_d, g) + (1 - lambda) c.
/// Throws ScopeError for unequal column sums.
UtilityResult utility_depolarizing_unbiased(double lambda, const Game& g, std::size_t d);

/// Unitary channel, diagonal game: sum of the d largest g_x, negatives
/// dropped. With a single input or d == 1 no zero-payoff fallback exists and
/// the value is max_x g_x.
UtilityResult utility_unitary_discrimination(std::span<const double> gdiag, std::size_t d);

// --- binary discrimination games diag(g0, 1 - g0) --------------------------
//
// Each formula is written for g0 >= 1/2; smaller g0 is handled by swapping
// the two labels, so every value is at least max(g0, 1 - g0). Results carry
// the analytic optimal encoding and its Helstrom decoding.

UtilityResult utility_pauli_binary(const std::array<double, 4>& lambda, double g0);
UtilityResult utility_ampdamp_binary(double eta, double g0);
UtilityResult utility_shifted_depolarizing_binary(double lambda, const DensityMatrix& sigma,
                                                  double g0);
/// Shifted-depolarizing formula with sigma = 1/d (smallest eigenvalue 1/d).
UtilityResult utility_depolarizing_binary(double lambda, std::size_t d, double g0);
/// (d + g0) / (d + 1); any orthonormal pure encoding is optimal.
UtilityResult utility_cloning_binary(std::size_t d, double g0);
/// max(g0, ((d - 2) g0 + d + 3) / (2 (d + 1))).
UtilityResult utility_partialtrace_cloning_binary(std::size_t d, double g0);

/// Lifts a result for reduction.reduced_game() back to the binary-output game g.
UtilityResult lift_binary(const Game& g, const games::BinaryReduction& reduction,
                          const UtilityResult& reduced);

/// Closed form for (channel, game) selected by the channel's constructor
/// label and the game's shape, or nullopt when no formula applies.
std::optional<UtilityResult> dispatch(const Channel& ch, const Game& g);

}  // namespace chanwit::closedform
