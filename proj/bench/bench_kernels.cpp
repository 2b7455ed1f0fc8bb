// Serial vs OpenMP versions of the numeric hot loops.

#include <benchmark/benchmark.h>

#include <cmath>

#include "liesym/numerics.hpp"
#include "liesym/pde_check.hpp"

using namespace liesym;

namespace {

Model case_b() {
  return {[](double u) { return std::exp(u) + 1.0; }, [](double u) { return std::exp(u); }};
}

std::vector<double> field(std::size_t nx, std::size_t nt, const std::vector<double>& xs) {
  std::vector<double> U(nx * nt);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nt; ++j) U[i * nt + j] = 0.1 * j / nt + std::log(bessel_j0(xs[i]));
  return U;
}

template <auto Kernel>
void BM_residual(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto xs = linspace(1, 2, static_cast<int>(n));
  auto U = field(n, n, xs);
  auto m = case_b();
  std::vector<double> r;
  for (auto _ : st) {
    Kernel(U, xs, 1e-3, n, m, r);
    benchmark::DoNotOptimize(r.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n * n));
}

template <auto Kernel>
void BM_step(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto xs = linspace(1, 2, static_cast<int>(n));
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = std::log(bessel_j0(xs[i]));
  auto out = u;
  auto m = case_b();
  for (auto _ : st) {
    Kernel(u, xs, 1e-7, m, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(n));
}

template <auto Surface>
void BM_surface(benchmark::State& st) {
  static const Trajectory tr = solve_example2(0.25, 2.0, 2.5, 0.5, 16.0, 1e-10);
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto g = Surface(0.25, 0.5, tr, {1.0, 2.0}, {0.5, 2.0}, n, n);
    benchmark::DoNotOptimize(g.u.data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
}

}  // namespace

BENCHMARK(BM_residual<kernels::residual_serial>)->Arg(129)->Arg(513);
BENCHMARK(BM_residual<kernels::residual_parallel>)->Arg(129)->Arg(513);
BENCHMARK(BM_step<kernels::diffusion_step_serial>)->Arg(1025)->Arg(16385);
BENCHMARK(BM_step<kernels::diffusion_step_parallel>)->Arg(1025)->Arg(16385);
BENCHMARK(BM_surface<surface_case_a_serial>)->Arg(65)->Arg(257);
BENCHMARK(BM_surface<surface_case_a>)->Arg(65)->Arg(257);

BENCHMARK_MAIN();
