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
#ifndef CASNET_HARNESS_ROLLOUT_H_
#define CASNET_HARNESS_ROLLOUT_H_

#include <cstdint>
#include <vector>

#include "casnet/algos/ppo.h"
#include "casnet/autodiff/tensor.h"
#include "casnet/envs/reacher.h"
#include "casnet/nn/init.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::harness {

// Parallel instances of one environment, stepped in lockstep so a single
// batched forward pass serves all of them.
struct EnvGroup {
  envs::ReacherSpec spec;
  std::vector<envs::ReacherEnv> instances;

  // [instances x (3N + 2)].
  ad::Tensor Observations() const;
};

// One group per spec, each with per_spec instances. Instance seeds are
// drawn from a stream of seed; fixed_goal pins every episode of a spec to
// FixedGoalFor(spec, seed).
std::vector<EnvGroup> MakeEnvGroups(const std::vector<envs::ReacherSpec>& specs,
                                    int per_spec, std::uint64_t seed,
                                    bool fixed_goal);

// Gaussian sample around the means with the policy's std, plus its log
// density; actions are [B x N], logp has B entries.
struct SampledActions {
  ad::Tensor actions;
  std::vector<double> logp;
  std::vector<double> values;
};
SampledActions SampleActions(const policy::ActorCritic& net,
                             const ad::Tensor& obs, std::size_t num_links,
                             nn::Rng& rng);

// Collects steps_per_instance on-policy steps from every instance, visiting
// the groups round-robin one batched step at a time, and adds one trajectory
// per instance to buffer. When an episode hits the time limit the reward of
// its last step absorbs gamma * V(s_final), the step is marked done and the
// instance is reset. Returns the number of env steps taken.
std::int64_t CollectRollout(const policy::ActorCritic& net,
                            std::vector<EnvGroup>& groups,
                            int steps_per_instance, double gamma,
                            nn::Rng& rng, algos::RolloutBuffer& buffer);

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_ROLLOUT_H_
