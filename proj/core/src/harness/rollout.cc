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
#include "casnet/harness/rollout.h"

#include <cmath>
#include <random>

#include "casnet/errors.h"
#include "casnet/harness/evaluate.h"
#include "casnet/nn/gaussian.h"

namespace casnet::harness {

ad::Tensor EnvGroup::Observations() const {
  const std::size_t width = envs::FlatObservationSize(spec.num_links());
  ad::Tensor obs(ad::Shape{instances.size(), width});
  for (std::size_t i = 0; i < instances.size(); ++i) {
    instances[i].Observation(
        std::span<double>(obs.data() + i * width, width));
  }
  return obs;
}

std::vector<EnvGroup> MakeEnvGroups(const std::vector<envs::ReacherSpec>& specs,
                                    int per_spec, std::uint64_t seed,
                                    bool fixed_goal) {
  if (per_spec < 1) throw DomainError("need at least one env per spec");
  nn::Rng seeds = nn::MakeRng(seed, 0xE5);
  std::vector<EnvGroup> groups;
  for (const auto& spec : specs) {
    EnvGroup group{spec, {}};
    std::optional<envs::Vec2> goal;
    if (fixed_goal) goal = FixedGoalFor(spec, seed);
    for (int i = 0; i < per_spec; ++i) {
      group.instances.emplace_back(spec, seeds(), goal);
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

SampledActions SampleActions(const policy::ActorCritic& net,
                             const ad::Tensor& obs, std::size_t num_links,
                             nn::Rng& rng) {
  ad::Graph g;
  const policy::PolicyOutput out = net.Forward(g, obs, num_links);
  ad::Tensor noise(out.means.shape());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : noise.values()) v = normal(rng);
  ad::Var action =
      nn::GaussianSample(out.means, out.log_std, g.Constant(std::move(noise)));
  ad::Var logp = nn::GaussianLogProb(out.means, out.log_std, action);
  SampledActions s;
  s.actions = action.value();
  const auto lp = logp.value().values();
  s.logp.assign(lp.begin(), lp.end());
  const auto v = out.value.value().values();
  s.values.assign(v.begin(), v.end());
  return s;
}

namespace {

double StateValue(const policy::ActorCritic& net, const EnvGroup& group,
                  std::size_t instance) {
  const std::size_t n = group.spec.num_links();
  ad::Tensor obs(ad::Shape{1, envs::FlatObservationSize(n)});
  group.instances[instance].Observation(obs.values());
  ad::Graph g;
  return net.Forward(g, obs, n).value.value()[0];
}

}  // namespace

std::int64_t CollectRollout(const policy::ActorCritic& net,
                            std::vector<EnvGroup>& groups,
                            int steps_per_instance, double gamma,
                            nn::Rng& rng, algos::RolloutBuffer& buffer) {
  if (steps_per_instance < 1) {
    throw DomainError("rollout needs at least one step per instance");
  }
  std::vector<std::vector<algos::Trajectory>> traj(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    traj[gi].resize(groups[gi].instances.size());
    for (auto& t : traj[gi]) t.num_links = groups[gi].spec.num_links();
  }
  std::int64_t steps = 0;
  for (int t = 0; t < steps_per_instance; ++t) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      EnvGroup& group = groups[gi];
      const std::size_t n = group.spec.num_links();
      const ad::Tensor obs = group.Observations();
      const std::size_t width = obs.cols();
      const SampledActions sample = SampleActions(net, obs, n, rng);
      for (std::size_t i = 0; i < group.instances.size(); ++i) {
        envs::ReacherEnv& env = group.instances[i];
        algos::RolloutStep step;
        step.obs.assign(obs.data() + i * width, obs.data() + (i + 1) * width);
        step.action.assign(sample.actions.data() + i * n,
                           sample.actions.data() + (i + 1) * n);
        step.logp = sample.logp[i];
        step.value = sample.values[i];
        step.reward = env.Step(step.action).reward;
        if (env.done()) {
          step.reward += gamma * StateValue(net, group, i);
          step.done = true;
          env.Reset();
        }
        traj[gi][i].steps.push_back(std::move(step));
        ++steps;
      }
    }
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t i = 0; i < traj[gi].size(); ++i) {
      traj[gi][i].bootstrap_value = StateValue(net, groups[gi], i);
      buffer.Add(std::move(traj[gi][i]));
    }
  }
  return steps;
}

}  // namespace casnet::harness
