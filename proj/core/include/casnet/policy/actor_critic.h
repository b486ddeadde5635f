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
#ifndef CASNET_POLICY_ACTOR_CRITIC_H_
#define CASNET_POLICY_ACTOR_CRITIC_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "casnet/autodiff/graph.h"
#include "casnet/nn/layers.h"

namespace casnet::policy {

inline constexpr std::size_t kPairFeatures = 3;  // angle, velocity, length
inline constexpr std::size_t kGoalDims = 2;
inline constexpr std::size_t kEmbeddingWidth = 32;
inline constexpr std::size_t kTrunkWidth = 64;

struct PolicyOutput {
  ad::Var means;    // [batch x N]
  ad::Var value;    // [batch x 1]
  ad::Var log_std;  // clamped; one shared element or [N]
};

// Gaussian actor with a state-value head. Observations use the flat layout
// of envs::FlattenObservation, batched as [batch x (3N + 2)].
class ActorCritic {
 public:
  virtual ~ActorCritic() = default;

  virtual PolicyOutput Forward(ad::Graph& g, const ad::Tensor& obs,
                               std::size_t num_links) const = 0;
  virtual void Init(nn::Rng& rng) = 0;
  virtual nn::ParameterRefs Parameters() = 0;
  virtual nn::ConstParameterRefs Parameters() const = 0;
  virtual std::unique_ptr<ActorCritic> Clone() const = 0;
  // "casnet" or "expert".
  virtual std::string kind() const = 0;
  virtual bool Supports(std::size_t num_links) const = 0;

  std::size_t ParamCount() const;
};

// Throws ShapeError unless obs is [batch x (3N + 2)] with N >= 1.
void CheckObservation(const ad::Tensor& obs, std::size_t num_links);

// kind is "casnet" (num_links ignored) or "expert". Parameters are
// initialized from rng. Throws ConfigError for other kinds.
std::unique_ptr<ActorCritic> MakeActorCritic(std::string_view kind,
                                             std::size_t num_links,
                                             nn::Rng& rng);

}  // namespace casnet::policy

#endif  // CASNET_POLICY_ACTOR_CRITIC_H_
