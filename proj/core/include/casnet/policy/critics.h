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
#ifndef CASNET_POLICY_CRITICS_H_
#define CASNET_POLICY_CRITICS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "casnet/autodiff/graph.h"
#include "casnet/nn/layers.h"

namespace casnet::policy {

// State value V(s) or action value Q(s, a), [batch x 1].
class Critic {
 public:
  virtual ~Critic() = default;

  // action is required iff takes_action(); it is a graph node so gradients
  // can flow into the policy that produced it.
  virtual ad::Var Forward(ad::Graph& g, const ad::Tensor& obs,
                          std::size_t num_links,
                          std::optional<ad::Var> action) const = 0;
  virtual void Init(nn::Rng& rng) = 0;
  virtual nn::ParameterRefs Parameters() = 0;
  virtual nn::ConstParameterRefs Parameters() const = 0;
  virtual std::unique_ptr<Critic> Clone() const = 0;
  virtual bool takes_action() const = 0;
};

// Morphology-independent critic: an RNN over pairs (with each actuator's
// action appended to its pair when takes_action), then 64-64 tanh trunk on
// (embedding, goal) and a scalar head.
class CasnetCritic final : public Critic {
 public:
  explicit CasnetCritic(bool with_action);

  ad::Var Forward(ad::Graph& g, const ad::Tensor& obs, std::size_t num_links,
                  std::optional<ad::Var> action) const override;
  void Init(nn::Rng& rng) override;
  nn::ParameterRefs Parameters() override;
  nn::ConstParameterRefs Parameters() const override;
  std::unique_ptr<Critic> Clone() const override;
  bool takes_action() const override { return with_action_; }

 private:
  bool with_action_;
  nn::RnnCell pair_encoder_;
  nn::Affine trunk0_;
  nn::Affine trunk1_;
  nn::Affine head_;
};

// 64-64 tanh MLP on the flat observation (plus action).
class MlpCritic final : public Critic {
 public:
  MlpCritic(std::size_t num_links, bool with_action);

  ad::Var Forward(ad::Graph& g, const ad::Tensor& obs, std::size_t num_links,
                  std::optional<ad::Var> action) const override;
  void Init(nn::Rng& rng) override;
  nn::ParameterRefs Parameters() override;
  nn::ConstParameterRefs Parameters() const override;
  std::unique_ptr<Critic> Clone() const override;
  bool takes_action() const override { return with_action_; }

 private:
  std::size_t num_links_;
  bool with_action_;
  nn::Affine trunk0_;
  nn::Affine trunk1_;
  nn::Affine head_;
};

// "casnet" or "expert" critic, initialized from rng.
std::unique_ptr<Critic> MakeCritic(std::string_view kind,
                                   std::size_t num_links, bool with_action,
                                   nn::Rng& rng);

}  // namespace casnet::policy

#endif  // CASNET_POLICY_CRITICS_H_
