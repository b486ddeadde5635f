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
#ifndef CASNET_HARNESS_CONFIG_H_
#define CASNET_HARNESS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "casnet/algos/ppo.h"
#include "casnet/algos/sac.h"
#include "casnet/envs/registry.h"

namespace casnet::harness {

struct RunConfig {
  std::string algo = "ppo";       // ppo | sac
  std::string policy = "casnet";  // casnet | expert
  std::vector<std::string> envs;  // explicit env names
  bool train_set = false;         // use the five training envs instead
  std::uint64_t seed = 0;
  std::int64_t total_env_steps = 1000000;
  std::int64_t checkpoint_every = 50;  // updates
  int envs_per_spec = 1;               // parallel instances of each env
  std::int64_t eval_interval = 10000;  // env steps between metric rows
  int eval_episodes = 10;
  // Stop once every evaluated env is at or below this mean final distance.
  // Zero disables early stopping.
  double target_distance = 0.0;
};

struct EvalConfig {
  int random_policies = 5;
  int episodes = 20;
};

struct TrainConfig {
  RunConfig run;
  algos::PpoConfig ppo;
  algos::SacConfig sac;
  EvalConfig eval;

  // Throws ConfigError (or LookupError for unknown env names).
  void Validate() const;
  // Envs named by run.envs, or the training set when run.train_set is on.
  std::vector<envs::ReacherSpec> ResolveEnvs() const;
  // Canonical "key = value" text listing every key; parses back to an equal
  // config.
  std::string ToText() const;
};

// Parses "key = value" lines with dotted keys. '#' starts a comment. Unknown
// keys, duplicate keys and malformed values raise ConfigError naming the
// origin and line. Missing keys keep their defaults. Does not validate.
TrainConfig ParseConfig(std::string_view text,
                        std::string_view origin = "<config>");

// Reads and parses a file; IoError if it cannot be read.
TrainConfig LoadConfig(const std::filesystem::path& path);

// Applies CASNET_SEED from the environment when set; ConfigError if it is
// not an unsigned integer.
void ApplySeedOverride(TrainConfig& config);

// Every recognized key, in canonical order.
std::vector<std::string> ConfigKeys();

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_CONFIG_H_
