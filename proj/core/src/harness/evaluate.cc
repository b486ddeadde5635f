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
#include "casnet/harness/evaluate.h"

#include <cmath>
#include <vector>

#include "casnet/errors.h"

namespace casnet::harness {

ActionMode ActionModeFor(std::string_view algo) {
  if (algo == "ppo") return ActionMode::kMean;
  if (algo == "sac") return ActionMode::kTanhMean;
  throw ConfigError("unknown algo '" + std::string(algo) + "'");
}

EvalResult EvalPolicy(const policy::ActorCritic& policy,
                      const envs::ReacherSpec& spec, int episodes,
                      std::uint64_t seed, ActionMode mode,
                      std::optional<envs::Vec2> fixed_goal) {
  if (episodes < 1) {
    throw DomainError("evaluation needs at least one episode, got " +
                      std::to_string(episodes));
  }
  const std::size_t n = spec.num_links();
  if (!policy.Supports(n)) {
    throw ShapeError("policy cannot drive " + spec.name + " (" +
                     std::to_string(n) + " links)");
  }
  const std::size_t count = static_cast<std::size_t>(episodes);
  const std::size_t width = envs::FlatObservationSize(n);
  nn::Rng seeds = nn::MakeRng(seed, 0);
  std::vector<envs::ReacherEnv> envs;
  envs.reserve(count);
  for (std::size_t e = 0; e < count; ++e) {
    envs.emplace_back(spec, seeds(), fixed_goal);
  }
  std::vector<double> returns(count, 0.0);
  ad::Tensor obs(ad::Shape{count, width});
  std::vector<double> action(n);
  for (int t = 0; t < envs::kEpisodeLength; ++t) {
    for (std::size_t e = 0; e < count; ++e) {
      envs[e].Observation(std::span<double>(obs.data() + e * width, width));
    }
    ad::Graph g;
    const ad::Tensor& means = policy.Forward(g, obs, n).means.value();
    for (std::size_t e = 0; e < count; ++e) {
      for (std::size_t j = 0; j < n; ++j) {
        const double m = means[e * n + j];
        action[j] = mode == ActionMode::kTanhMean ? std::tanh(m) : m;
      }
      returns[e] += envs[e].Step(action).reward;
    }
  }
  EvalResult r;
  for (std::size_t e = 0; e < count; ++e) {
    r.mean_return += returns[e];
    r.mean_final_distance += envs[e].GoalDistance();
  }
  r.mean_return /= static_cast<double>(count);
  r.mean_final_distance /= static_cast<double>(count);
  return r;
}

EvalResult RandomBaseline(const envs::ReacherSpec& spec, int k, int episodes,
                          std::uint64_t seed) {
  if (k < 1) {
    throw DomainError("random baseline needs k >= 1, got " +
                      std::to_string(k));
  }
  EvalResult total;
  for (int i = 0; i < k; ++i) {
    nn::Rng rng = nn::MakeRng(seed, static_cast<std::uint64_t>(i));
    auto policy = policy::MakeActorCritic("casnet", spec.num_links(), rng);
    const EvalResult r = EvalPolicy(*policy, spec, episodes, seed);
    total.mean_return += r.mean_return;
    total.mean_final_distance += r.mean_final_distance;
  }
  total.mean_return /= k;
  total.mean_final_distance /= k;
  return total;
}

double NormalizedScore(double r_general, double r_random, double r_expert) {
  const double denom = r_expert - r_random;
  if (!(std::abs(denom) > 1e-9)) {
    throw ComputationError("normalized score undefined: expert and random "
                           "returns differ by " + std::to_string(denom));
  }
  return 100.0 * (r_general - r_random) / denom;
}

envs::Vec2 FixedGoalFor(const envs::ReacherSpec& spec, std::uint64_t seed) {
  nn::Rng rng = nn::MakeRng(seed, 0x601 + envs::SpecIndex(spec.name));
  return envs::SampleGoal(spec, rng);
}

namespace {

TrainConfig SnapshotConfig(const Checkpoint& checkpoint) {
  try {
    return ParseConfig(checkpoint.config, "checkpoint config");
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

std::unique_ptr<policy::ActorCritic> PolicyFromCheckpoint(
    const Checkpoint& checkpoint) {
  const TrainConfig config = SnapshotConfig(checkpoint);
  std::size_t num_links = 0;
  if (config.run.policy == "expert") {
    if (config.run.envs.size() != 1) {
      throw FormatError("expert checkpoint does not name exactly one env");
    }
    num_links = envs::FindSpec(config.run.envs.front()).num_links();
  }
  nn::Rng rng = nn::MakeRng(0);
  std::unique_ptr<policy::ActorCritic> net;
  try {
    net = policy::MakeActorCritic(config.run.policy, num_links, rng);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("checkpoint: ") + e.what());
  }
  RestoreTensors(checkpoint, net->Parameters());
  return net;
}

EvalResult EvalCheckpoint(const Checkpoint& checkpoint,
                          const envs::ReacherSpec& spec, int episodes,
                          std::uint64_t seed) {
  const TrainConfig config = SnapshotConfig(checkpoint);
  const auto policy = PolicyFromCheckpoint(checkpoint);
  std::optional<envs::Vec2> goal;
  if (checkpoint.algo == "sac" && config.sac.fixed_goal) {
    goal = FixedGoalFor(spec, checkpoint.seed);
  }
  ActionMode mode;
  try {
    mode = ActionModeFor(checkpoint.algo);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("checkpoint: ") + e.what());
  }
  return EvalPolicy(*policy, spec, episodes, seed, mode, goal);
}

}  // namespace casnet::harness
