#include <benchmark/benchmark.h>

#include <random>

#include "scg/applications/fermat_weber.hpp"
#include "scg/cone.hpp"
#include "scg/element.hpp"
#include "scg/game.hpp"
#include "scg/learner.hpp"
#include "scg/rng.hpp"
#include "scg/spectral.hpp"

namespace {

scg::Element gaussian(const scg::ConeDescriptor& cone, std::uint64_t seed) {
  scg::Rng rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd coords(static_cast<Eigen::Index>(cone.ambient_dim()));
  for (auto& v : coords) v = normal(rng);
  return scg::Element::from_coordinates(cone, coords);
}

void BM_SymExp(benchmark::State& state) {
  const auto x = gaussian(scg::ConeDescriptor::sym(static_cast<std::size_t>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(scg::lowner_apply(x, scg::ScalarFunction::exp()));
}
BENCHMARK(BM_SymExp)->Arg(4)->Arg(16)->Arg(40);

void BM_SpinExp(benchmark::State& state) {
  const auto x = gaussian(scg::ConeDescriptor::spin(static_cast<std::size_t>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(scg::lowner_apply(x, scg::ScalarFunction::exp()));
}
BENCHMARK(BM_SpinExp)->Arg(11)->Arg(101);

void BM_LearnerStep(benchmark::State& state) {
  const auto cone = scg::ConeDescriptor::sym(static_cast<std::size_t>(state.range(0)));
  const scg::LearnerConfig cfg(cone, 0.1, state.range(1) != 0);
  const auto m = gaussian(cone, 3);
  auto s = scg::learner_init(cfg);
  for (auto _ : state) {
    s = scg::learner_step(s, m, cfg);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LearnerStep)->Args({8, 0})->Args({8, 1})->Args({40, 1});

void BM_FermatWeberSelfPlay(benchmark::State& state) {
  auto rng = scg::make_rng(0, 0);
  const auto game = scg::fermat_weber::build_game(scg::fermat_weber::synthetic_instance(10, 15, 5.0, rng));
  const scg::LearnerConfig cx(game.x_space(), 0.07, true);
  const scg::LearnerConfig cy(game.y_space(), 0.07, true);
  scg::SelfPlayOptions o;
  o.rounds = static_cast<std::size_t>(state.range(0));
  o.record_every = o.rounds;
  for (auto _ : state) benchmark::DoNotOptimize(scg::self_play(game, cx, cy, o));
}
BENCHMARK(BM_FermatWeberSelfPlay)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
