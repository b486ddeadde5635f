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
#ifndef CASNET_ALGOS_PPO_H_
#define CASNET_ALGOS_PPO_H_

#include <cstddef>
#include <vector>

#include "casnet/algos/adam.h"
#include "casnet/autodiff/graph.h"
#include "casnet/nn/init.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::algos {

struct PpoConfig {
  double gamma = 0.99;
  double lambda = 0.95;
  double clip = 0.2;
  double lr = 3e-4;
  int epochs = 10;
  int minibatch = 64;
  int rollout_len = 2048;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double max_grad_norm = 0.5;
  bool normalize_advantages = true;

  // Throws ConfigError on out-of-range values.
  void Validate() const;
};

struct RolloutStep {
  std::vector<double> obs;
  std::vector<double> action;
  double logp = 0.0;    // under the behavior policy
  double reward = 0.0;  // includes the gamma V bootstrap on truncation
  double value = 0.0;
  bool done = false;
};

// Consecutive steps from one environment instance.
struct Trajectory {
  std::size_t num_links = 0;
  std::vector<RolloutStep> steps;
  double bootstrap_value = 0.0;  // V of the state after the last step
};

// On-policy storage. Finalize() runs GAE per trajectory and flattens every
// step into one indexable batch.
class RolloutBuffer {
 public:
  void Add(Trajectory trajectory);
  void Finalize(double gamma, double lambda, bool normalize_advantages);

  bool finalized() const { return finalized_; }
  // Flattened step count; zero until Finalize().
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return trajectories_.empty(); }

  const RolloutStep& step(std::size_t i) const;
  std::size_t num_links(std::size_t i) const;
  double advantage(std::size_t i) const { return advantages_[i]; }
  double ret(std::size_t i) const { return returns_[i]; }

 private:
  struct Ref {
    std::size_t trajectory;
    std::size_t step;
  };
  std::vector<Trajectory> trajectories_;
  std::vector<Ref> samples_;
  std::vector<double> advantages_;
  std::vector<double> returns_;
  bool finalized_ = false;
};

// r = exp(logp_new - logp_old).
ad::Var PpoRatio(ad::Var logp_new, ad::Var logp_old);

// -mean(min(r A, clip(r, 1 - eps, 1 + eps) A)), to be minimized.
ad::Var PpoClipLoss(ad::Var ratio, ad::Var advantages, double clip);

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;  // mean(logp_old - logp_new)
  double clip_fraction = 0.0;
  std::size_t minibatches = 0;
  // Mean ratio on the very first minibatch, before any parameter change.
  double first_ratio_mean = 0.0;
};

// Several epochs of clipped-surrogate updates on shuffled minibatches. Each
// minibatch loss is clip loss + value_coef * value MSE - entropy_coef *
// entropy, with global-norm gradient clipping. Minibatches that mix
// morphologies are evaluated per morphology group and recombined with
// sample-count weights. Throws DomainError on an empty buffer and
// ProtocolError if the buffer is not finalized.
PpoStats PpoUpdate(policy::ActorCritic& net, const RolloutBuffer& buffer,
                   const PpoConfig& config, Adam& optimizer, nn::Rng& rng);

}  // namespace casnet::algos

#endif  // CASNET_ALGOS_PPO_H_
