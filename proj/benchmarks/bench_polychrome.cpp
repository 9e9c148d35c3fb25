#include <benchmark/benchmark.h>

#include "polychrome/chromatic.hpp"
#include "polychrome/euclid.hpp"
#include "polychrome/random.hpp"
#include "polychrome/wcp.hpp"

using namespace polychrome;

namespace {

void BM_RationalMulAdd(benchmark::State& state) {
  Rng rng(1);
  std::vector<Rational> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(rng.nonzero_rational(1000, 1000));
  for (auto _ : state) {
    Rational acc;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) acc += xs[i] * xs[i + 1];
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RationalMulAdd);

void BM_QuarticInverse(benchmark::State& state) {
  const Quartic a(Rational(3, 7), Rational(-2), Rational(5, 3), Rational(1, 9));
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_QuarticInverse);

void BM_QuarticSign(benchmark::State& state) {
  const Quartic a(Rational(-665857, 470832), 0, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(quartic_sign(a));
}
BENCHMARK(BM_QuarticSign);

void BM_Concyclic(benchmark::State& state) {
  Rng rng(2);
  std::vector<Point> pts;
  for (int i = 0; i < 64; ++i) pts.push_back(Point{Scalar(rng.rational(9, 4)), Scalar(rng.rational(9, 4))});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(concyclic(pts[i % 64], pts[(i + 1) % 64], pts[(i + 2) % 64], pts[(i + 3) % 64]));
    ++i;
  }
}
BENCHMARK(BM_Concyclic);

void BM_MaxPolychromaticFlag(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cfg = sample_config(ProceduralColoring(FlagInversive{n}), static_cast<std::size_t>(state.range(1)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(max_polychromatic(cfg, n - 1));
  state.counters["points"] = static_cast<double>(cfg.entries.size());
}
BENCHMARK(BM_MaxPolychromaticFlag)->Args({2, 10})->Args({2, 30})->Args({3, 8})->Unit(benchmark::kMillisecond);

void BM_TwoLineSharpness(benchmark::State& state) {
  const auto cfg = sample_config(ProceduralColoring(TwoLine{false}), static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(two_line_sharpness(cfg.entries));
}
BENCHMARK(BM_TwoLineSharpness)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SeparatingCircle(benchmark::State& state) {
  const auto pts = generic_position_points(2, 5, 3);
  std::vector<ColoredPoint> cps;
  for (std::size_t j = 0; j < 5; ++j) cps.push_back({pts[j], static_cast<int>(j) + 1});
  for (auto _ : state) benchmark::DoNotOptimize(separating_circle_5pts(cps));
}
BENCHMARK(BM_SeparatingCircle);

void BM_GreatIntersection(benchmark::State& state) {
  const GreatFlat s({{Scalar(1), Scalar(2), Scalar(0), Scalar(-1)},
                     {Scalar(0), Scalar(1), Scalar(3), Scalar(1)},
                     {Scalar(2), Scalar(0), Scalar(1), Scalar(1)}});
  const GreatFlat c({{Scalar(1), Scalar(0), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1), Scalar(1), Scalar(0)}});
  for (auto _ : state) benchmark::DoNotOptimize(great_intersection(s, c));
}
BENCHMARK(BM_GreatIntersection);

void BM_WcpSharpMap(benchmark::State& state) {
  const auto map = build_sharp_map(std::vector<Point>{Point{Scalar(0), Scalar(0)}, Point{Scalar(1), Scalar(0)},
                                                      Point::infinity(2), Point{Scalar(0), Scalar(1)}});
  const auto circles = sample_circles(200, 6, 1);
  for (auto _ : state) benchmark::DoNotOptimize(wcp_check(map, circles));
}
BENCHMARK(BM_WcpSharpMap)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
