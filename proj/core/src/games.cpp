#include "chanwit/games.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chanwit/error.hpp"
#include "chanwit/tolerances.hpp"

namespace chanwit::games {

Game::Game(Eigen::MatrixXd payoff) : g_(std::move(payoff)) {
  if (g_.rows() < 1 || g_.cols() < 1)
    throw ValidationError("Game: payoff matrix must have at least one input and one output");
  if (!g_.allFinite()) throw ValidationError("Game: payoff entries must be finite");
}

bool Game::is_diagonal() const {
  if (g_.rows() != g_.cols()) return false;
  for (Eigen::Index i = 0; i < g_.rows(); ++i)
    for (Eigen::Index j = 0; j < g_.cols(); ++j)
      if (i != j && g_(i, j) != 0.0) return false;
  return true;
}

Game discrimination(std::span<const double> values) {
  if (values.empty()) throw ValidationError("discrimination: empty diagonal");
  const auto n = static_cast<Eigen::Index>(values.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) g(i, i) = values[static_cast<std::size_t>(i)];
  return Game(std::move(g));
}

Game binary_discrimination(double g0) {
  const double diag[] = {g0, 1.0 - g0};
  return discrimination(diag);
}

Game game_from_prior_payoff(std::span<const double> prior, const Eigen::MatrixXd& payoff) {
  if (static_cast<Eigen::Index>(prior.size()) != payoff.rows()) {
    std::ostringstream msg;
    msg << "game_from_prior_payoff: prior has " << prior.size() << " entries but payoff has "
        << payoff.rows() << " rows";
    throw ValidationError(msg.str());
  }
  double total = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw ValidationError("game_from_prior_payoff: prior entries must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kProbabilitySum) {
    std::ostringstream msg;
    msg << "game_from_prior_payoff: prior sums to " << total << ", expected 1";
    throw ValidationError(msg.str());
  }
  Eigen::MatrixXd g = payoff;
  for (Eigen::Index x = 0; x < g.rows(); ++x) g.row(x) *= prior[static_cast<std::size_t>(x)];
  return Game(std::move(g));
}

Game affine_transform(const Game& g, double alpha, std::span<const double> beta) {
  if (!(alpha >= 0.0)) throw RangeError("affine_transform: alpha must be nonnegative");
  if (beta.size() != g.n())
    throw ValidationError("affine_transform: beta length must equal the number of inputs");
  Eigen::MatrixXd out = g.matrix();
  for (Eigen::Index x = 0; x < out.rows(); ++x)
    out.row(x) = alpha * (out.row(x).array() + beta[static_cast<std::size_t>(x)]).matrix();
  return Game(std::move(out));
}

double upper_bound(const Game& g) { return g.matrix().rowwise().maxCoeff().sum(); }

std::vector<double> column_sums(const Game& g) {
  const Eigen::RowVectorXd sums = g.matrix().colwise().sum();
  return {sums.data(), sums.data() + sums.size()};
}

bool is_unbiased(const Game& g) {
  const auto sums = column_sums(g);
  return std::all_of(sums.begin(), sums.end(),
                     [](double s) { return std::abs(s) <= tol::kUnbiased; });
}

bool prefers_first_output(const Game& g, std::size_t x) { return g(x, 0) - g(x, 1) >= 0.0; }

BinaryReduction reduce_binary_output(const Game& g) {
  if (g.m() != 2) {
    std::ostringstream msg;
    msg << "reduce_binary_output: game has " << g.m() << " outputs, expected 2";
    throw ValidationError(msg.str());
  }
  BinaryReduction r;
  double positive_mass = 0.0;
  for (std::size_t x = 0; x < g.n(); ++x) {
    const double diff = g(x, 0) - g(x, 1);
    r.a += std::abs(diff);
    r.b += std::min(g(x, 0), g(x, 1));
    if (diff >= 0.0) positive_mass += diff;
  }
  if (r.a == 0.0) {
    r.trivial = true;
    r.b = g.matrix().col(0).sum();
    r.g0 = 0.0;
    return r;
  }
  r.g0 = std::clamp(positive_mass / r.a, 0.0, 1.0);
  return r;
}

NonnegativeShift normalize_to_nonneg(const Game& g) {
  std::vector<double> beta(g.n());
  double offset = 0.0;
  for (std::size_t x = 0; x < g.n(); ++x) {
    beta[x] = -g.matrix().row(static_cast<Eigen::Index>(x)).minCoeff();
    offset += beta[x];
  }
  return NonnegativeShift{affine_transform(g, 1.0, beta), 1.0, offset, std::move(beta)};
}

}  // namespace chanwit::games
