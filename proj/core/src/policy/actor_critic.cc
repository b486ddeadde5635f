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
#include "casnet/policy/actor_critic.h"

#include <string>

#include "casnet/errors.h"
#include "casnet/policy/casnet_policy.h"
#include "casnet/policy/expert_policy.h"

namespace casnet::policy {

std::size_t ActorCritic::ParamCount() const {
  return nn::CountParameters(Parameters());
}

void CheckObservation(const ad::Tensor& obs, std::size_t num_links) {
  if (num_links == 0) {
    throw DomainError("policy forward needs at least one actuator-link pair");
  }
  const std::size_t width = kPairFeatures * num_links + kGoalDims;
  if (obs.rank() != 2 || obs.cols() != width || obs.rows() == 0) {
    throw ShapeError("observation " + ad::ShapeString(obs.shape()) +
                     " does not match " + std::to_string(num_links) +
                     " links (expected width " + std::to_string(width) + ")");
  }
}

std::unique_ptr<ActorCritic> MakeActorCritic(std::string_view kind,
                                             std::size_t num_links,
                                             nn::Rng& rng) {
  std::unique_ptr<ActorCritic> net;
  if (kind == "casnet") {
    net = std::make_unique<CasnetPolicy>();
  } else if (kind == "expert") {
    net = std::make_unique<ExpertPolicy>(num_links);
  } else {
    throw ConfigError("unknown policy kind: " + std::string(kind));
  }
  net->Init(rng);
  return net;
}

}  // namespace casnet::policy
