#include <benchmark/benchmark.h>

#include <random>

#include "senlex/solver.hpp"

namespace {

using namespace senlex;

double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ConstraintSet make_instance(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Triplet<double>> ta;
  for (int i = 0; i < m; ++i) {
    int k = 1 + static_cast<int>(rng() % 5);
    for (int e = 0; e < k; ++e) {
      double sign = rand_unit(rng) < 0.2 ? -1.0 : 1.0;
      ta.emplace_back(i, static_cast<int>(rng() % n), sign / k);
    }
  }
  SpMat A(m, n);
  A.setFromTriplets(ta.begin(), ta.end());

  Eigen::MatrixXd Xtilde = Eigen::MatrixXd::Zero(m, 2);
  for (int i = 0; i < m; ++i) Xtilde(i, rng() % 2) = 1.0;
  Eigen::MatrixXd X0 = Eigen::MatrixXd::Zero(n, 2);
  Eigen::VectorXd G = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (rand_unit(rng) < 0.4) {
      X0(i, rng() % 2) = 1.0;
      G(i) = 1.0;
    }
  }
  auto sym = [&](int edges) {
    std::vector<Eigen::Triplet<double>> t;
    for (int e = 0; e < edges; ++e) {
      int i = static_cast<int>(rng() % n);
      int j = static_cast<int>(rng() % n);
      if (i == j) continue;
      t.emplace_back(i, j, 1.0);
      t.emplace_back(j, i, 1.0);
    }
    SpMat W(n, n);
    W.setFromTriplets(t.begin(), t.end());
    return W;
  };
  return ConstraintSet::assemble(A, Xtilde, X0, G, sym(n), sym(n / 2), sym(n));
}

void BM_UpdateStep(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ConstraintSet C = make_instance(n, 4 * n, 42);
  Eigen::MatrixXd X =
      C.X0 + Eigen::MatrixXd::Constant(n, 2, 0.1);
  for (auto _ : state) {
    X = update_step(X, C, HyperParams{});
    benchmark::DoNotOptimize(X.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_UpdateStep)->Arg(100)->Arg(400)->Arg(1600)->Complexity();

void BM_Solve(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ConstraintSet C = make_instance(n, 4 * n, 7);
  for (auto _ : state) {
    SolveResult res = solve(C, HyperParams{});
    benchmark::DoNotOptimize(res.iterations);
  }
}
BENCHMARK(BM_Solve)->Arg(100)->Arg(400);

void BM_Objective(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ConstraintSet C = make_instance(n, 4 * n, 11);
  Eigen::MatrixXd X = C.X0 + Eigen::MatrixXd::Constant(n, 2, 0.1);
  for (auto _ : state) {
    ObjectiveTerms t = objective(X, C, HyperParams{});
    benchmark::DoNotOptimize(t.total);
  }
}
BENCHMARK(BM_Objective)->Arg(100)->Arg(400)->Arg(1600);

}  // namespace
