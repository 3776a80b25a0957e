#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace chanwit::games {

/// Payoff mass g(x, y) = p_x u(x, y) of a communication game with n inputs
/// (Alice) and m outputs (Bob). Two games with the same mass have the same
/// average payoff under every strategy, so the prior never appears separately.
class Game {
 public:
  /// Throws ValidationError for empty or non-finite payoffs.
  explicit Game(Eigen::MatrixXd payoff);

  std::size_t n() const { return static_cast<std::size_t>(g_.rows()); }
  std::size_t m() const { return static_cast<std::size_t>(g_.cols()); }
  double operator()(std::size_t x, std::size_t y) const {
    return g_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }
  const Eigen::MatrixXd& matrix() const { return g_; }

  bool is_diagonal() const;

 private:
  Eigen::MatrixXd g_;
};

/// diag(values) as an n x n discrimination game.
Game discrimination(std::span<const double> values);

/// diag(g0, 1 - g0).
Game binary_discrimination(double g0);

/// g(x, y) = p_x u(x, y); p must be a probability vector.
Game game_from_prior_payoff(std::span<const double> prior, const Eigen::MatrixXd& payoff);

/// g'(x, y) = alpha (g(x, y) + beta_x), alpha >= 0. The utility of g' is
/// alpha (U(g) + sum(beta)), attained by the same strategy.
Game affine_transform(const Game& g, double alpha, std::span<const double> beta);

/// Sum over rows of the row maximum; no channel beats this.
double upper_bound(const Game& g);

/// Every column sums to zero within tol::kUnbiased.
bool is_unbiased(const Game& g);

/// Column sums.
std::vector<double> column_sums(const Game& g);

/// Binary-output games reduce to diag(g0, 1 - g0) via U(g) = a U(g') + b.
struct BinaryReduction {
  double a = 0.0;
  double b = 0.0;
  double g0 = 0.0;
  /// a == 0: the payoff does not depend on Bob's output. U(g) == b and g0
  /// carries no meaning.
  bool trivial = false;

  Game reduced_game() const { return binary_discrimination(g0); }
  double lift(double reduced_utility) const { return trivial ? b : a * reduced_utility + b; }
};

/// Requires m == 2; throws ValidationError otherwise. Rows with
/// g(x,0) >= g(x,1) are the "0-type" rows (Heaviside convention Theta(0) = 1).
BinaryReduction reduce_binary_output(const Game& g);

/// Input x whose reduced label is 0 under reduce_binary_output.
bool prefers_first_output(const Game& g, std::size_t x);

struct NonnegativeShift {
  Game game;
  double alpha = 1.0;
  /// sum_x beta_x; U(original) = U(shifted) - offset.
  double offset = 0.0;
  std::vector<double> beta;
};

/// Row-wise shift beta_x = -min_y g(x, y), so every row has minimum 0.
NonnegativeShift normalize_to_nonneg(const Game& g);

}  // namespace chanwit::games
