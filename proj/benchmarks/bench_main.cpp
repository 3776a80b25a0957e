#include <benchmark/benchmark.h>

#include "chanwit/oracle.hpp"
#include "chanwit/random.hpp"

using namespace chanwit;

static void BM_HermitianEig(benchmark::State& state) {
  auto rng = rnd::make_rng(1);
  const auto a = rnd::random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(mat::hermitian_eig(a));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(9)->Arg(16)->Arg(32);

static void BM_ChannelApply(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto ch = channels::cloning_1to2(d);
  auto rng = rnd::make_rng(2);
  const auto rho = rnd::random_density(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(channels::apply(ch, rho));
}
BENCHMARK(BM_ChannelApply)->Arg(2)->Arg(3)->Arg(4);

static void BM_SeesawTrine(benchmark::State& state) {
  const auto ch = channels::quantum_classical(channels::Povm::trine());
  const games::Game g(Eigen::MatrixXd::Identity(3, 3));
  oracle::OracleConfig cfg;
  cfg.restarts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::seesaw(ch, g, cfg));
}
BENCHMARK(BM_SeesawTrine)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_SeesawCloningBinary(benchmark::State& state) {
  const auto ch = channels::cloning_1to2(3);
  const auto g = games::binary_discrimination(0.7);
  const oracle::OracleConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::seesaw(ch, g, cfg));
}
BENCHMARK(BM_SeesawCloningBinary)->Unit(benchmark::kMillisecond);

static void BM_QubitGrid(benchmark::State& state) {
  const auto ch = channels::amplitude_damping(0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::qubit_binary_grid(ch, 0.8, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_QubitGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_UtilityIdentity(benchmark::State& state) {
  auto rng = rnd::make_rng(3);
  const auto m = static_cast<Eigen::Index>(state.range(0));
  Eigen::MatrixXd g(6, m);
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rnd::uniform(rng);
  const games::Game game(g);
  for (auto _ : state) benchmark::DoNotOptimize(closedform::utility_identity(game, 4));
}
BENCHMARK(BM_UtilityIdentity)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
