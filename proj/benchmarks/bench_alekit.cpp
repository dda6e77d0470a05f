#include <benchmark/benchmark.h>

#include "ale/models.hpp"
#include "ale/radial.hpp"
#include "ale/stability.hpp"

namespace {

void BM_BallVolumeEguchiHanson(benchmark::State& state) {
  const ale::RadialProfile eh = ale::profile_of(ale::ALEModel::eguchi_hanson(1.0));
  const double R = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ale::ball_volume(eh, R, {}).value);
}
BENCHMARK(BM_BallVolumeEguchiHanson)->Arg(10)->Arg(1000);

void BM_TotalScalarBurns(benchmark::State& state) {
  const ale::RadialProfile burns = ale::profile_of(ale::ALEModel::burns(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(ale::total_scalar_ball(burns, 100.0, {}).value);
}
BENCHMARK(BM_TotalScalarBurns);

void BM_FitAsymptotics(benchmark::State& state) {
  const ale::RadialProfile eh = ale::profile_of(ale::ALEModel::eguchi_hanson(1.0));
  std::vector<std::pair<double, double>> samples;
  for (double t : ale::geometric_schedule(1e3, 1e6, static_cast<int>(state.range(0)))) samples.emplace_back(t, eh.value(t));
  for (auto _ : state) benchmark::DoNotOptimize(ale::fit_asymptotics(samples, 2).c_hat);
}
BENCHMARK(BM_FitAsymptotics)->Arg(16)->Arg(256);

void BM_Classify(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ale::OrbifoldConfig c;
  c.m = 3;
  c.d = d;
  c.s_bar = 1.0;
  for (int i = 0; i < 4; ++i) {
    ale::ALEModelInvariants inv;
    inv.m = 3;
    inv.gamma = 2;
    inv.e = i % 2;
    inv.a = 1.0;
    inv.scalar_flat = true;
    c.points.push_back({"p" + std::to_string(i), 2, Eigen::VectorXd::LinSpaced(d, i, i + d),
                        Eigen::VectorXd::Constant(d, 0.5), inv});
  }
  for (auto _ : state) benchmark::DoNotOptimize(ale::classify(c).regime);
}
BENCHMARK(BM_Classify)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
