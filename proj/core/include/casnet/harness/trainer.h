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
#ifndef CASNET_HARNESS_TRAINER_H_
#define CASNET_HARNESS_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string_view>
#include <vector>

#include "casnet/algos/sac.h"
#include "casnet/harness/checkpoint.h"
#include "casnet/harness/config.h"
#include "casnet/harness/metrics.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::harness {

struct TrainResult {
  std::vector<MetricsRow> rows;
  std::int64_t env_steps = 0;
  std::int64_t updates = 0;
  std::filesystem::path final_checkpoint;
  bool reached_target = false;  // stopped early on run.target_distance
};

// Called after every metrics row is written.
using RowCallback = std::function<void(const MetricsRow&)>;

// Trains per config and writes into out_dir:
//   config.txt              the resolved configuration
//   metrics.csv             one row per evaluated env at every eval point
//   checkpoint_<update>.ckpt every run.checkpoint_every updates
//   final.ckpt
// PPO rollouts take equal step shares from every env; SAC collects one
// transition per env instance per cycle. Evaluation happens each time the
// step counter crosses a multiple of run.eval_interval and at the end.
// Throws ConfigError for an invalid config and IoError for file failures.
TrainResult Train(const TrainConfig& config,
                  const std::filesystem::path& out_dir,
                  const RowCallback& on_row = {});

// Shared CASNET policy on config's envs (the training set if none named).
TrainResult TrainGeneral(TrainConfig config,
                         const std::filesystem::path& out_dir,
                         const RowCallback& on_row = {});

// Fully-connected expert on one env with otherwise identical settings.
// LookupError for an unknown env.
TrainResult TrainExpert(std::string_view env_name, TrainConfig config,
                        const std::filesystem::path& out_dir,
                        const RowCallback& on_row = {});

Checkpoint MakePolicyCheckpoint(const TrainConfig& config,
                                const policy::ActorCritic& policy);
Checkpoint MakeSacCheckpoint(const TrainConfig& config,
                             const algos::SacNets& nets);

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_TRAINER_H_
