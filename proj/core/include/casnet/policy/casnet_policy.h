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
#ifndef CASNET_POLICY_CASNET_POLICY_H_
#define CASNET_POLICY_CASNET_POLICY_H_

#include <memory>
#include <span>
#include <string>

#include "casnet/envs/reacher.h"
#include "casnet/nn/layers.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::policy {

// Encoder/decoder policy for planar chains. Its parameter shapes do not
// depend on the number of actuator-link pairs:
//
//   pair_encoder   RNN   3 -> 32       over pairs, base to tip, h0 = 0
//   trunk0         64 <- 32 + 2 (final embedding, goal), tanh
//   trunk1         64 <- 64, tanh
//   context_proj   32 <- 64            decoder initial hidden (linear)
//   decoder        RNN   32 -> 32      step i reads encoder hidden i
//   action_head    1  <- 32            one mean per decoder step
//   value_head     1  <- 64
//   log_std        one scalar shared by all actuators
class CasnetPolicy final : public ActorCritic {
 public:
  CasnetPolicy();

  PolicyOutput Forward(ad::Graph& g, const ad::Tensor& obs,
                       std::size_t num_links) const override;
  void Init(nn::Rng& rng) override;
  nn::ParameterRefs Parameters() override;
  nn::ConstParameterRefs Parameters() const override;
  std::unique_ptr<ActorCritic> Clone() const override;
  std::string kind() const override { return "casnet"; }
  bool Supports(std::size_t num_links) const override {
    return num_links >= 1;
  }

 private:
  nn::RnnCell pair_encoder_;
  nn::Affine trunk0_;
  nn::Affine trunk1_;
  nn::Affine context_proj_;
  nn::RnnCell decoder_;
  nn::Affine action_head_;
  nn::Affine value_head_;
  ad::Parameter log_std_;
};

// Single-observation forward from structured pairs. Throws DomainError for an
// empty pair list.
PolicyOutput CasnetForward(ad::Graph& g, const CasnetPolicy& policy,
                           std::span<const envs::PairObservation> pairs,
                           envs::Vec2 goal);

}  // namespace casnet::policy

#endif  // CASNET_POLICY_CASNET_POLICY_H_
