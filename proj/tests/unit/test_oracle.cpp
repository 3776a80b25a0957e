#include <cmath>

#include <gtest/gtest.h>

#include "chanwit/error.hpp"
#include "chanwit/oracle.hpp"
#include "chanwit/random.hpp"

using namespace chanwit;
using namespace chanwit::oracle;
using games::Game;

namespace {

Game make(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) g(r, c++) = v;
    ++r;
  }
  return Game(g);
}

const Game kTrineGame = make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

}  // namespace

TEST(OracleConfig, Validation) {
  OracleConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.tol = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Seesaw, Examples) {
  const OracleConfig cfg;
  EXPECT_NEAR(seesaw(channels::identity(2), games::binary_discrimination(0.5), cfg).value, 1.0, 1e-6);
  const auto trine = seesaw(channels::quantum_classical(channels::Povm::trine()), kTrineGame, cfg);
  EXPECT_NEAR(trine.value, 2.0, 1e-4);
  EXPECT_TRUE(trine.lower_bound);
  EXPECT_NE(trine.provenance.find("seed=20201116"), std::string::npos);
  EXPECT_NEAR(seesaw(channels::amplitude_damping(0.5), games::binary_discrimination(0.5), cfg).value,
              0.85355339, 1e-4);
}

TEST(Seesaw, ReportsMonotoneHistoriesAndValidPovms) {
  auto rng = rnd::make_rng(31);
  OracleConfig cfg;
  cfg.restarts = 5;
  for (int trial = 0; trial < 6; ++trial) {
    const channels::Channel ch(2, 3, rnd::random_kraus(2, 3, 2, rng));
    Eigen::MatrixXd g(3, 3);
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rnd::uniform(rng, -1.0, 1.0);
    const auto report = seesaw_report(ch, Game(g), cfg);
    EXPECT_LE(-report.worst_decrease, 1e-10);
    EXPECT_LE(report.max_povm_residual, 1e-9);
    EXPECT_GE(report.min_povm_eigenvalue, -1e-10);
    EXPECT_EQ(report.histories.size(), cfg.restarts);
    EXPECT_LE(report.result.value, games::upper_bound(Game(g)) + 1e-9);
    ASSERT_TRUE(report.result.encoding && report.result.decoding);
    EXPECT_NEAR(closedform::average_payoff(ch, Game(g), *report.result.encoding, *report.result.decoding),
                report.result.value, 1e-9);
  }
}

TEST(Seesaw, ThreadCountDoesNotChangeTheResult) {
  OracleConfig one;
  one.restarts = 6;
  OracleConfig many = one;
  many.threads = 3;
  const auto ch = channels::depolarizing(0.4, 3);
  const auto g = make({{0.2, 0.5, 0.1}, {0.4, 0.0, 0.3}, {0.1, 0.2, 0.6}});
  EXPECT_EQ(seesaw(ch, g, one).value, seesaw(ch, g, many).value);
}

TEST(Seesaw, AgreesWithClosedFormsWithinTolerance) {
  const OracleConfig cfg;
  struct Case {
    channels::Channel ch;
    Game g;
  };
  const std::vector<Case> cases{
      {channels::dephasing(0.37, 2), games::binary_discrimination(0.5)},
      {channels::erasure(0.5, 2), make({{0.6, 0}, {0, 0.4}})},
      {channels::depolarizing(0.6, 2), make({{0.5, -0.5}, {-0.5, 0.5}})},
      {channels::cloning_1to2(3), games::binary_discrimination(0.7)},
      {channels::identity(2), make({{0.3, 0.1, 0.0}, {0.2, 0.5, 0.1}, {0.0, 0.2, 0.4}})},
  };
  for (const auto& c : cases) {
    const auto cf = closedform::dispatch(c.ch, c.g);
    ASSERT_TRUE(cf.has_value()) << c.ch.name();
    const double v = seesaw(c.ch, c.g, cfg).value;
    EXPECT_LE(v, cf->value + 1e-6) << c.ch.name();
    EXPECT_GE(v, cf->value - 2e-4) << c.ch.name();
  }
}

TEST(BestDecoding, AnalyticEncodingsReproduceClosedForms) {
  const OracleConfig cfg;
  const auto check = [&](const channels::Channel& ch, const Game& g, const closedform::UtilityResult& r) {
    ASSERT_TRUE(r.encoding.has_value()) << r.provenance;
    EXPECT_NEAR(best_decoding(ch, g, *r.encoding, cfg).value, r.value, 1e-9) << r.provenance;
  };
  const auto bin = games::binary_discrimination(0.7);
  check(channels::amplitude_damping(0.5), bin, closedform::utility_ampdamp_binary(0.5, 0.7));
  check(channels::pauli({0.5, 0.2, 0.2, 0.1}), bin, closedform::utility_pauli_binary({0.5, 0.2, 0.2, 0.1}, 0.7));
  check(channels::cloning_1to2(3), bin, closedform::utility_cloning_binary(3, 0.7));
  check(channels::quantum_classical(channels::Povm::trine()), kTrineGame,
        closedform::utility_qc(channels::Povm::trine(), kTrineGame));
  const auto g = make({{0.3, 0.1, 0.0}, {0.2, 0.5, 0.1}, {0.0, 0.2, 0.4}});
  check(channels::identity(2), g, closedform::utility_identity(g, 2));
  check(channels::erasure(0.7, 2), g, closedform::utility_erasure(0.7, g, 2));
}

TEST(QubitBinaryGrid, Examples) {
  EXPECT_NEAR(qubit_binary_grid(channels::identity(2), 0.7, 200).value, 1.0, 1e-12);
  EXPECT_NEAR(qubit_binary_grid(channels::pauli({0.25, 0.25, 0.25, 0.25}), 0.7, 200).value, 0.7, 1e-5);
  EXPECT_NEAR(qubit_binary_grid(channels::amplitude_damping(0.5), 0.8, 200).value, 0.91231056, 1e-5);
  EXPECT_THROW(qubit_binary_grid(channels::identity(3), 0.5, 200), ValidationError);
  EXPECT_THROW(qubit_binary_grid(channels::identity(2), 1.5, 200), RangeError);
}

TEST(QubitBinaryGrid, ReturnsItsWitness) {
  const auto ch = channels::amplitude_damping(0.3);
  const auto r = qubit_binary_grid(ch, 0.65, 50);
  ASSERT_TRUE(r.encoding && r.decoding);
  EXPECT_NEAR(closedform::average_payoff(ch, games::binary_discrimination(0.65), *r.encoding, *r.decoding),
              r.value, 1e-12);
  EXPECT_NEAR(r.value, 0.801247406628, 1e-5);
}

TEST(ClassicalUtility, Examples) {
  EXPECT_NEAR(classical_utility(Eigen::Matrix2d::Identity(), make({{0.6, 0}, {0, 0.4}})), 1.0, 1e-15);
  Eigen::Matrix2d bsc;
  bsc << 0.9, 0.1, 0.1, 0.9;
  EXPECT_NEAR(classical_utility(bsc, games::binary_discrimination(0.5)), 0.9, 1e-15);
  Eigen::MatrixXd constant(3, 2);
  constant << 0.2, 0.2, 0.5, 0.5, 0.3, 0.3;
  const auto g = make({{0.3, 0.1, 0.0}, {0.2, 0.5, 0.1}, {0.0, 0.2, 0.4}});
  EXPECT_NEAR(classical_utility(constant, g), closedform::utility_trace_class(g).value, 1e-15);
}

TEST(ClassicalUtility, Errors) {
  Eigen::Matrix2d bad;
  bad << 0.5, 0.5, 0.4, 0.5;
  EXPECT_THROW(classical_utility(bad, games::binary_discrimination(0.5)), ValidationError);
  Eigen::Matrix2d neg;
  neg << 1.2, 0.0, -0.2, 1.0;
  EXPECT_THROW(classical_utility(neg, games::binary_discrimination(0.5)), ValidationError);
  EXPECT_THROW(classical_utility(Eigen::MatrixXd::Identity(15, 15), kTrineGame), BudgetError);
}
