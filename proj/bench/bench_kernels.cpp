// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "decisive/cfis.hpp"
#include "decisive/ingest.hpp"
#include "decisive/kernels.hpp"

using namespace decisive;

namespace {

std::vector<Vec3> random_points(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-20, 20);
  std::vector<Vec3> v(n);
  for (auto& p : v) p = {u(rng), u(rng), u(rng) * 0.1};
  return v;
}

std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.01, 5);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

const auto kPath = random_points(64, 3);

template <bool Par>
void BM_polyline(benchmark::State& st) {
  const auto pts = random_points(st.range(0), 1);
  for (auto _ : st) {
    auto d = Par ? kernels::parallel::polyline_distances(pts, kPath, false)
                 : kernels::serial::polyline_distances(pts, kPath, false);
    benchmark::DoNotOptimize(d.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void BM_obstacle(benchmark::State& st) {
  const auto pts = random_points(st.range(0), 2);
  ObstacleGeometry ob;
  ob.p0 = {0, -1};
  ob.p1 = {0, 1};
  ob.height = 2;
  for (auto _ : st) {
    auto d = Par ? kernels::parallel::obstacle_distances(pts, ob) : kernels::serial::obstacle_distances(pts, ob);
    benchmark::DoNotOptimize(d.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void BM_min_ratio(benchmark::State& st) {
  const auto num = random_values(st.range(0), 4), den = random_values(st.range(0), 5);
  for (auto _ : st)
    benchmark::DoNotOptimize(Par ? kernels::parallel::min_ratio(num, den, 0.1)
                                 : kernels::serial::min_ratio(num, den, 0.1));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void BM_max_norm(benchmark::State& st) {
  const auto v = random_points(st.range(0), 6);
  for (auto _ : st)
    benchmark::DoNotOptimize(Par ? kernels::parallel::max_norm(v, false) : kernels::serial::max_norm(v, false));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void BM_fis_batch(benchmark::State& st) {
  const auto cfg =
      ingest::parse_fis_config(std::filesystem::path(DECISIVE_SOURCE_DIR) / "data/fis/takeoff_land.json").value.config;
  const auto& fis = cfg.system(cfg.combined);
  std::mt19937 rng(7);
  std::vector<std::vector<double>> pts(st.range(0));
  for (auto& p : pts) {
    p.clear();
    for (const auto& in : fis.inputs) p.push_back(std::uniform_real_distribution<double>(in.lo, in.hi)(rng));
  }
  for (auto _ : st) {
    auto r = Par ? cfis::parallel::batch_eval(cfg, fis, pts) : cfis::serial::batch_eval(cfg, fis, pts);
    benchmark::DoNotOptimize(r.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_polyline<false>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_polyline<true>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_obstacle<false>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_obstacle<true>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_min_ratio<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_min_ratio<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_max_norm<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_max_norm<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_fis_batch<false>)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_fis_batch<true>)->Arg(1 << 10)->Arg(1 << 14);

BENCHMARK_MAIN();
