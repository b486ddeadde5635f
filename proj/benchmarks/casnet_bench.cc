// Copyright 2026 The CASNET Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "casnet/algos/gae.h"
#include "casnet/algos/replay_buffer.h"
#include "casnet/algos/sac.h"
#include "casnet/autodiff/ops.h"
#include "casnet/envs/reacher.h"
#include "casnet/envs/registry.h"
#include "casnet/nn/init.h"
#include "casnet/policy/actor_critic.h"

namespace casnet {
namespace {

using ad::Graph;
using ad::Shape;
using ad::Tensor;

Tensor RandomTensor(Shape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Tensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

void BM_MatMulTanhBackward(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const ad::Parameter w{"w", RandomTensor(Shape{n, n}, 1)};
  const Tensor x = RandomTensor(Shape{64, n}, 2);
  for (auto _ : state) {
    Graph g;
    const auto loss = ad::Sum(ad::Tanh(ad::MatMul(g.Constant(x), g.Param(w))));
    g.Backward(loss);
    benchmark::DoNotOptimize(g.Grad(g.Param(w)));
  }
}
BENCHMARK(BM_MatMulTanhBackward)->Arg(32)->Arg(64);

void BM_PolicyForward(benchmark::State& state) {
  const std::string kind = state.range(0) == 0 ? "casnet" : "expert";
  const std::size_t n = state.range(1);
  auto rng = nn::MakeRng(3);
  auto net = policy::MakeActorCritic(kind, n, rng);
  const Tensor obs = RandomTensor(Shape{64, envs::FlatObservationSize(n)}, 4);
  for (auto _ : state) {
    Graph g;
    benchmark::DoNotOptimize(net->Forward(g, obs, n).means.value());
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_PolicyForward)
    ->ArgNames({"expert", "links"})
    ->Args({0, 1})
    ->Args({0, 3})
    ->Args({0, 6})
    ->Args({1, 6});

void BM_PolicyForwardBackward(benchmark::State& state) {
  const std::size_t n = state.range(0);
  auto rng = nn::MakeRng(5);
  auto net = policy::MakeActorCritic("casnet", n, rng);
  const Tensor obs = RandomTensor(Shape{64, envs::FlatObservationSize(n)}, 6);
  for (auto _ : state) {
    Graph g;
    const auto out = net->Forward(g, obs, n);
    g.Backward(ad::Sum(ad::Square(out.means)) + ad::Sum(out.value));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_PolicyForwardBackward)->Arg(1)->Arg(6);

void BM_EnvStep(benchmark::State& state) {
  const auto& spec = envs::Registry()[state.range(0)];
  envs::ReacherEnv env(spec, 7);
  env.Reset();
  const std::vector<double> action(spec.num_links(), 0.3);
  for (auto _ : state) {
    if (env.done()) env.Reset();
    benchmark::DoNotOptimize(env.Step(action).reward);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStep)->Arg(0)->Arg(17);

void BM_Gae(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Tensor r = RandomTensor(Shape{n}, 8), v = RandomTensor(Shape{n}, 9);
  std::vector<bool> done(n, false);
  for (std::size_t i = 99; i < n; i += 100) done[i] = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        algos::ComputeGae({r.data(), n}, {v.data(), n}, done, 0.1, 0.99, 0.95));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Gae)->Arg(2048);

void BM_SacUpdate(benchmark::State& state) {
  const std::string kind = state.range(0) == 0 ? "casnet" : "expert";
  const int batch = static_cast<int>(state.range(1));
  auto rng = nn::MakeRng(10);
  algos::SacConfig config;
  config.batch_size = batch;
  algos::SacLearner learner(algos::SacNets::Make(kind, 1, rng), config);
  algos::ReplayBuffer replay(4096);
  const std::size_t width = envs::FlatObservationSize(1);
  for (int i = 0; i < 4096; ++i) {
    algos::Transition t;
    t.num_links = 1;
    const Tensor o = RandomTensor(Shape{width}, i);
    t.obs.assign(o.data(), o.data() + width);
    t.next_obs = t.obs;
    t.action = {0.1};
    t.reward = -0.1;
    replay.Insert(std::move(t));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(learner.Update(replay, rng).q_loss);
  }
}
BENCHMARK(BM_SacUpdate)
    ->ArgNames({"expert", "batch"})
    ->Args({0, 256})
    ->Args({1, 256});

}  // namespace
}  // namespace casnet

BENCHMARK_MAIN();
