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
#ifndef CASNET_HARNESS_EVALUATE_H_
#define CASNET_HARNESS_EVALUATE_H_

#include <cstdint>
#include <memory>
#include <optional>

#include "casnet/envs/reacher.h"
#include "casnet/envs/registry.h"
#include "casnet/harness/checkpoint.h"
#include "casnet/harness/config.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::harness {

// How a deterministic action is read off the policy mean. PPO policies act
// with the raw mean (the env clamps torques); SAC policies squash it.
enum class ActionMode { kMean, kTanhMean };

ActionMode ActionModeFor(std::string_view algo);

struct EvalResult {
  double mean_return = 0.0;
  double mean_final_distance = 0.0;  // m, at the end of each episode
};

// Runs episodes with deterministic actions; the only randomness is the goal
// draw, seeded from seed. Episodes run in lockstep as one batch. DomainError
// if episodes < 1, ShapeError if the policy cannot drive the env.
EvalResult EvalPolicy(const policy::ActorCritic& policy,
                      const envs::ReacherSpec& spec, int episodes,
                      std::uint64_t seed, ActionMode mode = ActionMode::kMean,
                      std::optional<envs::Vec2> fixed_goal = std::nullopt);

// Mean of EvalPolicy over k freshly initialized CASNET policies; policy i is
// initialized from nn::MakeRng(seed, i) and evaluated with the same seed.
// DomainError if k < 1.
EvalResult RandomBaseline(const envs::ReacherSpec& spec, int k, int episodes,
                          std::uint64_t seed);

// 100 (general - random) / (expert - random). ComputationError when
// |expert - random| <= 1e-9.
double NormalizedScore(double r_general, double r_random, double r_expert);

// The goal used on spec for every episode of a fixed-goal run with seed.
envs::Vec2 FixedGoalFor(const envs::ReacherSpec& spec, std::uint64_t seed);

// Rebuilds the policy stored in a checkpoint. FormatError if its config
// snapshot is unusable, LookupError/ShapeError on missing or mismatched
// tensors.
std::unique_ptr<policy::ActorCritic> PolicyFromCheckpoint(
    const Checkpoint& checkpoint);

// EvalPolicy on a checkpoint, honoring its algo and fixed-goal setting.
EvalResult EvalCheckpoint(const Checkpoint& checkpoint,
                          const envs::ReacherSpec& spec, int episodes,
                          std::uint64_t seed);

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_EVALUATE_H_
