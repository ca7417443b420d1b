// Microbenchmarks for the hot paths: modular arithmetic, group operations,
// subgroup enumeration, the transform/sampling kernels, and full solves.
// Build target: hsp-benchmarks (not registered with ctest; run manually).

#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hsp/decomposition.hpp"
#include "hsp/group.hpp"
#include "hsp/modmath.hpp"
#include "hsp/oracle.hpp"
#include "hsp/qsim.hpp"
#include "hsp/rng.hpp"
#include "hsp/subgroups.hpp"

namespace {

using namespace hsp;

void BM_MulMod(benchmark::State& state) {
  const std::uint64_t m = (1ull << 31) - 1;
  std::uint64_t a = 1'234'567'891 % m;
  for (auto _ : state) {
    a = mul_mod(a, 1'111'111'117 % m, m);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_MulMod);

void BM_PowMod(benchmark::State& state) {
  const std::uint64_t m = (1ull << 31) - 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pow_mod(3, m - 2, m));
  }
}
BENCHMARK(BM_PowMod);

void BM_ElementOrderClosedForm(benchmark::State& state) {
  const GroupSpec spec = make_canonical_spec(1, 3, 5);  // order 1458
  const Element g{7, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(element_order_closed_form(g, spec));
  }
}
BENCHMARK(BM_ElementOrderClosedForm);

void BM_ElementOrderIterative(benchmark::State& state) {
  const GroupSpec spec = make_canonical_spec(1, 3, 5);
  const Element g{7, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(element_order_iterative(g, spec));
  }
}
BENCHMARK(BM_ElementOrderIterative);

void BM_Closure(benchmark::State& state) {
  const GroupSpec spec = make_canonical_spec(0, 3, 6);  // order 2187
  const std::vector<Element> gens{{1, 0}, {0, 1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure(std::span<const Element>(gens), spec));
  }
}
BENCHMARK(BM_Closure);

void BM_EnumerateSubgroups(benchmark::State& state) {
  const GroupSpec spec = make_canonical_spec(1, 3, 2);  // 20 subgroups
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_subgroups(spec));
  }
}
BENCHMARK(BM_EnumerateSubgroups);

void BM_Qft(benchmark::State& state) {
  QState psi;
  psi.amps.assign(243, std::complex<double>(1.0 / std::sqrt(243.0), 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_qft(psi));
  }
}
BENCHMARK(BM_Qft);

void BM_Qft2d(benchmark::State& state) {
  QState psi;
  psi.amps.assign(45 * 3, std::complex<double>(0.0, 0.0));
  psi.amps[7] = {1.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_qft_2d(psi, 45, 3));
  }
}
BENCHMARK(BM_Qft2d);

void BM_RunRound(benchmark::State& state) {
  const GroupSpec spec = validate_spec(18, 3, 7);
  const HidingOracle oracle =
      HidingOracle::scrambled(spec, SubgroupDesc{TwoGenDesc{0, 1, 1}}, 11);
  auto rng = make_engine(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_round(oracle, 0, 1, rng));
  }
}
BENCHMARK(BM_RunRound);

void BM_RoundDistribution(benchmark::State& state) {
  const GroupSpec spec = make_canonical_spec(1, 5, 2);  // order 250
  const HidingOracle oracle =
      HidingOracle::canonical(spec, SubgroupDesc{TwoGenDesc{1, 2, 3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(round_distribution(oracle, 1, 2));
  }
}
BENCHMARK(BM_RoundDistribution);

void BM_AbelianHspCyclic(benchmark::State& state) {
  const GroupSpec spec = validate_spec(54, 3, 1);
  std::vector<std::uint64_t> table(spec.order());
  for (std::uint64_t a = 0; a < 54; ++a)
    for (std::uint64_t b = 0; b < 3; ++b)
      table[element_index({a, b}, spec)] = a % 6;
  const HidingOracle oracle = HidingOracle::from_table(spec, table);
  const auto embed = [](std::uint64_t u) { return Element{u % 54, 0}; };
  auto rng = make_engine(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(abelian_hsp_cyclic(oracle, 54, embed, rng));
  }
}
BENCHMARK(BM_AbelianHspCyclic);

void BM_Solve2pr(benchmark::State& state) {
  const GroupSpec spec = make_canonical_spec(1, 3, 2);  // order 54
  const HidingOracle oracle =
      HidingOracle::scrambled(spec, SubgroupDesc{TwoGenDesc{0, 1, 1}}, 21);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_2pr(oracle, seed++));
  }
}
BENCHMARK(BM_Solve2pr);

void BM_SolveGeneral(benchmark::State& state) {
  const GroupSpec spec = validate_spec(45, 3, 31);
  const Element gen{3, 0};
  const auto elems = closure(std::span<const Element>(&gen, 1), spec);
  const HidingOracle oracle =
      HidingOracle::scrambled(spec, SubgroupDesc{make_explicit_set(elems, spec)}, 21);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_general(oracle, seed++));
  }
}
BENCHMARK(BM_SolveGeneral);

}  // namespace

BENCHMARK_MAIN();
