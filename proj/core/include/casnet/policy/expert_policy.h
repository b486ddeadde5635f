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
#ifndef CASNET_POLICY_EXPERT_POLICY_H_
#define CASNET_POLICY_EXPERT_POLICY_H_

#include <cstddef>
#include <memory>
#include <string>

#include "casnet/nn/layers.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::policy {

// Fully connected baseline for one fixed morphology: two tanh layers of 64
// shared by an N-wide action head and a scalar value head, with a
// per-dimension log_std.
class ExpertPolicy final : public ActorCritic {
 public:
  explicit ExpertPolicy(std::size_t num_links);

  PolicyOutput Forward(ad::Graph& g, const ad::Tensor& obs,
                       std::size_t num_links) const override;
  void Init(nn::Rng& rng) override;
  nn::ParameterRefs Parameters() override;
  nn::ConstParameterRefs Parameters() const override;
  std::unique_ptr<ActorCritic> Clone() const override;
  std::string kind() const override { return "expert"; }
  bool Supports(std::size_t num_links) const override {
    return num_links == num_links_;
  }

  std::size_t num_links() const { return num_links_; }

 private:
  std::size_t num_links_;
  nn::Affine trunk0_;
  nn::Affine trunk1_;
  nn::Affine action_head_;
  nn::Affine value_head_;
  ad::Parameter log_std_;
};

}  // namespace casnet::policy

#endif  // CASNET_POLICY_EXPERT_POLICY_H_
