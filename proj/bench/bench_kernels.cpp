#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "multicheb/domain.hpp"
#include "multicheb/kernels.hpp"
#include "multicheb/poly.hpp"

using namespace multicheb;

namespace {

const Domain& grid(std::size_t k) {
  static std::map<std::size_t, Domain> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, box_grid({-1.0, -1.0}, {1.0, 1.0}, k)).first;
  return it->second;
}

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_DesignMatrix(benchmark::State& s) {
  const auto basis = enumerate_degree_basis(2, 6);
  const Domain& d = grid(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::design_matrix(*basis, d.points(), exec_of(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(d.size()));
}

void BM_Residuals(benchmark::State& s) {
  const auto basis = enumerate_degree_basis(2, 6);
  const Domain& d = grid(static_cast<std::size_t>(s.range(0)));
  const auto g = kernels::design_matrix(*basis, d.points(), Exec::Serial);
  std::vector<double> c(basis->size(), 0.5), f(d.size(), 1.0);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::residuals(g, c, f, exec_of(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(d.size()));
}

void BM_Sample(benchmark::State& s) {
  const Domain& d = grid(static_cast<std::size_t>(s.range(0)));
  auto f = [](std::span<const double> x) { return std::sin(3 * x[0]) * std::cos(2 * x[1]); };
  for (auto _ : s) benchmark::DoNotOptimize(kernels::sample(f, d.points(), exec_of(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(d.size()));
}

}  // namespace

BENCHMARK(BM_DesignMatrix)->ArgsProduct({{65, 257}, {0, 1}});
BENCHMARK(BM_Residuals)->ArgsProduct({{65, 257}, {0, 1}});
BENCHMARK(BM_Sample)->ArgsProduct({{65, 257}, {0, 1}});

BENCHMARK_MAIN();
