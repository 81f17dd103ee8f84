// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Micro-benchmarks for the hot kernels: transforms, form assembly, the
// entropy objective and its gradient, the samplers, and the certificate
// scans.  Sizes are chosen to bracket the sizes the tools run at.

#include <benchmark/benchmark.h>

#include <random>

#include <Eigen/Dense>

#include <lsiforge/cascade.hpp>
#include <lsiforge/dft.hpp>
#include <lsiforge/hyper.hpp>
#include <lsiforge/induction.hpp>
#include <lsiforge/kkt.hpp>
#include <lsiforge/rng.hpp>
#include <lsiforge/spectral.hpp>
#include <lsiforge/weight.hpp>

namespace {

constexpr std::uint64_t kSeed = 20260823ULL;

Eigen::VectorXcd random_complex(int n) {
  std::mt19937_64 rng = lsiforge::chunk_rng(kSeed, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd x(n);
  for (int j = 0; j < n; ++j) x(j) = {gauss(rng), gauss(rng)};
  return x;
}

void BM_dft_forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::VectorXcd x = random_complex(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::dft_forward(x));
  }
}
BENCHMARK(BM_dft_forward)->Arg(16)->Arg(64)->Arg(256)->Arg(1024);

void BM_build_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lsiforge::Weight w = lsiforge::word_length(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::build_form(w));
  }
}
BENCHMARK(BM_build_form)->Arg(8)->Arg(24)->Arg(64);

void BM_lsi_objective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lsiforge::SpectralForm form =
      lsiforge::build_form(lsiforge::word_length(n));
  std::mt19937_64 rng = lsiforge::chunk_rng(kSeed, 1);
  const Eigen::VectorXd lam = lsiforge::random_positive_sphere(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::lsi_objective(form, lam));
  }
}
BENCHMARK(BM_lsi_objective)->Arg(6)->Arg(24);

void BM_lsi_gradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lsiforge::SpectralForm form =
      lsiforge::build_form(lsiforge::word_length(n));
  std::mt19937_64 rng = lsiforge::chunk_rng(kSeed, 2);
  const Eigen::VectorXd lam = lsiforge::random_positive_sphere(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::lsi_gradient(form, lam));
  }
}
BENCHMARK(BM_lsi_gradient)->Arg(6)->Arg(24);

void BM_entropy_split(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng = lsiforge::chunk_rng(kSeed, 3);
  const Eigen::VectorXd a = lsiforge::random_positive_sphere(rng, n);
  const Eigen::VectorXd b = lsiforge::random_positive_sphere(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::entropy_split(a, b));
  }
}
BENCHMARK(BM_entropy_split)->Arg(8)->Arg(64);

void BM_sample_minimum(benchmark::State& state) {
  const lsiforge::SpectralForm form = lsiforge::build_form(lsiforge::phi4());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::sample_minimum(form, 4096, kSeed));
  }
}
BENCHMARK(BM_sample_minimum)->Unit(benchmark::kMillisecond);

void BM_minimize_on_sphere(benchmark::State& state) {
  const lsiforge::SpectralForm form = lsiforge::build_form(lsiforge::phi4());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::minimize_on_sphere(form, 64, kSeed));
  }
}
BENCHMARK(BM_minimize_on_sphere)->Unit(benchmark::kMillisecond);

void BM_kkt_search(benchmark::State& state) {
  const lsiforge::SpectralForm form = lsiforge::build_form(lsiforge::phi4());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::kkt_search(form, 100, kSeed));
  }
}
BENCHMARK(BM_kkt_search)->Unit(benchmark::kMillisecond);

void BM_cascade_chain_z6(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::cascade_chain_z6(50.0, 2000));
  }
}
BENCHMARK(BM_cascade_chain_z6)->Unit(benchmark::kMillisecond);

void BM_scan_quadratic(benchmark::State& state) {
  const lsiforge::Weight base = lsiforge::gamma_even_tower(8);
  const lsiforge::Weight doubled = lsiforge::gamma_even_tower(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::scan_quadratic(base, doubled, 51));
  }
}
BENCHMARK(BM_scan_quadratic)->Unit(benchmark::kMillisecond);

void BM_induction_step(benchmark::State& state) {
  const lsiforge::Weight base = lsiforge::gamma_even_tower(8);
  const lsiforge::Weight doubled = lsiforge::gamma_even_tower(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lsiforge::induction_step(base, doubled, 2000, kSeed));
  }
}
BENCHMARK(BM_induction_step)->Unit(benchmark::kMillisecond);

void BM_apply_semigroup(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lsiforge::SemigroupOperator op =
      lsiforge::make_semigroup(lsiforge::word_length(n), 0.3);
  std::mt19937_64 rng = lsiforge::chunk_rng(kSeed, 4);
  const Eigen::VectorXd f = lsiforge::random_positive_sphere(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::apply_semigroup(op, f));
  }
}
BENCHMARK(BM_apply_semigroup)->Arg(16)->Arg(64);

void BM_max_ratio(benchmark::State& state) {
  const lsiforge::Weight w = lsiforge::word_length(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lsiforge::max_ratio(w, 0.3, 2.0, 4.0, 8, kSeed));
  }
}
BENCHMARK(BM_max_ratio)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
