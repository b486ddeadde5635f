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
#ifndef CASNET_ALGOS_SAC_H_
#define CASNET_ALGOS_SAC_H_

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "casnet/algos/adam.h"
#include "casnet/algos/replay_buffer.h"
#include "casnet/autodiff/graph.h"
#include "casnet/nn/init.h"
#include "casnet/policy/actor_critic.h"
#include "casnet/policy/critics.h"

namespace casnet::algos {

struct SacConfig {
  double gamma = 0.99;
  double alpha = 0.2;
  double tau = 0.005;
  double lr = 3e-4;
  int replay_capacity = 100000;
  int batch_size = 256;
  int warmup_steps = 1000;
  int updates_per_cycle = 1;
  bool fixed_goal = false;

  void Validate() const;
};

// The five function approximators: policy, V, target V, Q1, Q2.
struct SacNets {
  std::unique_ptr<policy::ActorCritic> policy;
  std::unique_ptr<policy::Critic> value;
  std::unique_ptr<policy::Critic> value_target;
  std::unique_ptr<policy::Critic> q1;
  std::unique_ptr<policy::Critic> q2;

  // kind is "casnet" or "expert". The target starts as a copy of V.
  static SacNets Make(std::string_view kind, std::size_t num_links,
                      nn::Rng& rng);
};

// A same-morphology minibatch in tensor form.
struct SacBatch {
  std::size_t num_links = 0;
  ad::Tensor obs;       // [B x (3N + 2)]
  ad::Tensor action;    // [B x N], squashed
  ad::Tensor reward;    // [B x 1]
  ad::Tensor next_obs;  // [B x (3N + 2)]
  ad::Tensor done;      // [B x 1], 1.0 for terminal
};

// Groups sampled replay indices by morphology.
std::vector<SacBatch> MakeBatches(const ReplayBuffer& replay,
                                  const std::vector<std::size_t>& indices);

// Tanh-squashed reparameterized action and its log-density.
struct SquashedSample {
  ad::Var action;  // tanh(mu + sigma eps)
  ad::Var logp;    // [B x 1]
};
SquashedSample SampleSquashed(ad::Graph& g, const policy::ActorCritic& pi,
                              const ad::Tensor& obs, std::size_t num_links,
                              const ad::Tensor& noise);

// mean((Q(s, a) - (r + gamma (1 - d) V_target(s')))^2). The backup is a
// constant; only q receives gradients.
ad::Var SacQLoss(ad::Graph& g, const policy::Critic& q, const SacBatch& batch,
                 const policy::Critic& value_target, double gamma);

// mean((V(s) - (min(Q1, Q2)(s, a~) - alpha log pi(a~|s)))^2) with a~ drawn
// from the current policy using the given noise. Only V receives gradients.
ad::Var SacVLoss(ad::Graph& g, const policy::Critic& value,
                 const policy::Critic& q1, const policy::Critic& q2,
                 const policy::ActorCritic& pi, const ad::Tensor& obs,
                 std::size_t num_links, double alpha,
                 const ad::Tensor& noise);

// mean(alpha log pi(a~|s) - min(Q1, Q2)(s, a~)), differentiable through a~.
ad::Var SacPolicyLoss(ad::Graph& g, const policy::ActorCritic& pi,
                      const policy::Critic& q1, const policy::Critic& q2,
                      const ad::Tensor& obs, std::size_t num_links,
                      double alpha, const ad::Tensor& noise);

// target <- tau * source + (1 - tau) * target. Throws ShapeError on any
// mismatch in count or shape.
void PolyakUpdate(const nn::ParameterRefs& target,
                  const nn::ConstParameterRefs& source, double tau);

struct SacStats {
  double q_loss = 0.0;
  double v_loss = 0.0;
  double policy_loss = 0.0;
  double entropy = 0.0;  // -mean log pi(a~|s)
};

// One gradient step on Q1/Q2, V and the policy, then a Polyak step on the
// target value network.
class SacLearner {
 public:
  SacLearner(SacNets nets, const SacConfig& config);

  SacStats Update(const ReplayBuffer& replay, nn::Rng& rng);

  const SacNets& nets() const { return nets_; }
  SacNets& nets() { return nets_; }
  const SacConfig& config() const { return config_; }

 private:
  SacNets nets_;
  SacConfig config_;
  Adam q1_opt_;
  Adam q2_opt_;
  Adam value_opt_;
  Adam policy_opt_;
};

}  // namespace casnet::algos

#endif  // CASNET_ALGOS_SAC_H_
