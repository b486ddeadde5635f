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
#include "casnet/algos/sac.h"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"
#include "casnet/nn/gaussian.h"

namespace casnet::algos {

void SacConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw ConfigError("sac: " + what);
  };
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma must be in (0, 1]");
  if (!(alpha >= 0.0)) fail("alpha must be non-negative");
  if (!(tau > 0.0 && tau <= 1.0)) fail("tau must be in (0, 1]");
  if (!(lr >= 0.0)) fail("lr must be non-negative");
  if (replay_capacity <= 0 || batch_size <= 0) {
    fail("replay_capacity and batch_size must be positive");
  }
  if (batch_size > replay_capacity) fail("batch_size exceeds replay_capacity");
  if (warmup_steps < 0) fail("warmup_steps must be non-negative");
  if (updates_per_cycle <= 0) fail("updates_per_cycle must be positive");
}

SacNets SacNets::Make(std::string_view kind, std::size_t num_links,
                      nn::Rng& rng) {
  SacNets nets;
  nets.policy = policy::MakeActorCritic(kind, num_links, rng);
  nets.value = policy::MakeCritic(kind, num_links, false, rng);
  nets.value_target = nets.value->Clone();
  nets.q1 = policy::MakeCritic(kind, num_links, true, rng);
  nets.q2 = policy::MakeCritic(kind, num_links, true, rng);
  return nets;
}

std::vector<SacBatch> MakeBatches(const ReplayBuffer& replay,
                                  const std::vector<std::size_t>& indices) {
  std::map<std::size_t, std::vector<std::size_t>> by_links;
  for (std::size_t i : indices) by_links[replay.at(i).num_links].push_back(i);
  std::vector<SacBatch> out;
  for (const auto& [n, members] : by_links) {
    const std::size_t b = members.size();
    const std::size_t width = 3 * n + 2;
    SacBatch batch;
    batch.num_links = n;
    batch.obs = ad::Tensor(ad::Shape{b, width});
    batch.action = ad::Tensor(ad::Shape{b, n});
    batch.reward = ad::Tensor(ad::Shape{b, 1});
    batch.next_obs = ad::Tensor(ad::Shape{b, width});
    batch.done = ad::Tensor(ad::Shape{b, 1});
    for (std::size_t r = 0; r < b; ++r) {
      const Transition& t = replay.at(members[r]);
      if (t.obs.size() != width || t.next_obs.size() != width ||
          t.action.size() != n) {
        throw ShapeError("replay transition does not match its link count");
      }
      std::copy(t.obs.begin(), t.obs.end(), batch.obs.data() + r * width);
      std::copy(t.next_obs.begin(), t.next_obs.end(),
                batch.next_obs.data() + r * width);
      std::copy(t.action.begin(), t.action.end(),
                batch.action.data() + r * n);
      batch.reward[r] = t.reward;
      batch.done[r] = t.done ? 1.0 : 0.0;
    }
    out.push_back(std::move(batch));
  }
  return out;
}

SquashedSample SampleSquashed(ad::Graph& g, const policy::ActorCritic& pi,
                              const ad::Tensor& obs, std::size_t num_links,
                              const ad::Tensor& noise) {
  const policy::PolicyOutput out = pi.Forward(g, obs, num_links);
  if (noise.shape() != out.means.shape()) {
    throw ShapeError("sac noise " + ad::ShapeString(noise.shape()) +
                     " vs means " + ad::ShapeString(out.means.shape()));
  }
  ad::Var u = nn::GaussianSample(out.means, out.log_std, g.Constant(noise));
  return {ad::Tanh(u), nn::SquashedGaussianLogProb(out.means, out.log_std, u)};
}

ad::Var SacQLoss(ad::Graph& g, const policy::Critic& q, const SacBatch& batch,
                 const policy::Critic& value_target, double gamma) {
  ad::Tensor target;
  {
    ad::Graph scratch;
    target = value_target
                 .Forward(scratch, batch.next_obs, batch.num_links,
                          std::nullopt)
                 .value();
  }
  for (std::size_t r = 0; r < target.size(); ++r) {
    target[r] = batch.reward[r] + gamma * (1.0 - batch.done[r]) * target[r];
  }
  ad::Var pred =
      q.Forward(g, batch.obs, batch.num_links, g.Constant(batch.action));
  return ad::Mean(ad::Square(ad::Sub(pred, g.Constant(std::move(target)))));
}

ad::Var SacVLoss(ad::Graph& g, const policy::Critic& value,
                 const policy::Critic& q1, const policy::Critic& q2,
                 const policy::ActorCritic& pi, const ad::Tensor& obs,
                 std::size_t num_links, double alpha,
                 const ad::Tensor& noise) {
  ad::Tensor target;
  {
    ad::Graph scratch;
    SquashedSample s = SampleSquashed(scratch, pi, obs, num_links, noise);
    ad::Var q = ad::Minimum(q1.Forward(scratch, obs, num_links, s.action),
                            q2.Forward(scratch, obs, num_links, s.action));
    target = ad::Sub(q, ad::Scale(s.logp, alpha)).value();
  }
  ad::Var pred = value.Forward(g, obs, num_links, std::nullopt);
  return ad::Mean(ad::Square(ad::Sub(pred, g.Constant(std::move(target)))));
}

ad::Var SacPolicyLoss(ad::Graph& g, const policy::ActorCritic& pi,
                      const policy::Critic& q1, const policy::Critic& q2,
                      const ad::Tensor& obs, std::size_t num_links,
                      double alpha, const ad::Tensor& noise) {
  SquashedSample s = SampleSquashed(g, pi, obs, num_links, noise);
  ad::Var q = ad::Minimum(q1.Forward(g, obs, num_links, s.action),
                          q2.Forward(g, obs, num_links, s.action));
  return ad::Mean(ad::Sub(ad::Scale(s.logp, alpha), q));
}

void PolyakUpdate(const nn::ParameterRefs& target,
                  const nn::ConstParameterRefs& source, double tau) {
  if (target.size() != source.size()) {
    throw ShapeError("polyak update: " + std::to_string(target.size()) +
                     " target vs " + std::to_string(source.size()) +
                     " source parameters");
  }
  for (std::size_t i = 0; i < target.size(); ++i) {
    ad::Tensor& t = target[i]->value;
    const ad::Tensor& s = source[i]->value;
    if (t.shape() != s.shape()) {
      throw ShapeError("polyak update: " + target[i]->name + " " +
                       ad::ShapeString(t.shape()) + " vs " +
                       ad::ShapeString(s.shape()));
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = tau * s[k] + (1.0 - tau) * t[k];
    }
  }
}

SacLearner::SacLearner(SacNets nets, const SacConfig& config)
    : nets_(std::move(nets)),
      config_(config),
      q1_opt_(config.lr),
      q2_opt_(config.lr),
      value_opt_(config.lr),
      policy_opt_(config.lr) {
  config_.Validate();
}

namespace {

ad::Tensor StandardNormal(const ad::Shape& shape, nn::Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ad::Tensor t(shape);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = dist(rng);
  return t;
}

// Runs one weighted loss per morphology group through a fresh graph and
// applies a single optimizer step to params.
template <typename LossFn>
double Step(const std::vector<SacBatch>& batches, double total,
            nn::ParameterRefs params, Adam& opt, LossFn loss_fn) {
  ad::Graph g;
  ad::Var loss;
  double value = 0.0;
  for (const SacBatch& b : batches) {
    const double w = static_cast<double>(b.obs.rows()) / total;
    ad::Var l = loss_fn(g, b);
    value += w * l.value().item();
    l = ad::Scale(l, w);
    loss = loss.valid() ? ad::Add(loss, l) : l;
  }
  g.Backward(loss);
  opt.Step(params, CollectGrads(g, params));
  return value;
}

}  // namespace

SacStats SacLearner::Update(const ReplayBuffer& replay, nn::Rng& rng) {
  const auto indices =
      replay.SampleIndices(static_cast<std::size_t>(config_.batch_size), rng);
  const std::vector<SacBatch> batches = MakeBatches(replay, indices);
  const double total = static_cast<double>(indices.size());

  std::vector<ad::Tensor> noise;
  for (const SacBatch& b : batches) {
    noise.push_back(StandardNormal(b.action.shape(), rng));
  }
  auto noise_for = [&](const SacBatch& b) -> const ad::Tensor& {
    return noise[static_cast<std::size_t>(&b - batches.data())];
  };

  SacStats stats;
  const double gamma = config_.gamma;
  const double alpha = config_.alpha;
  stats.q_loss += Step(batches, total, nets_.q1->Parameters(), q1_opt_,
                       [&](ad::Graph& g, const SacBatch& b) {
                         return SacQLoss(g, *nets_.q1, b,
                                         *nets_.value_target, gamma);
                       });
  stats.q_loss += Step(batches, total, nets_.q2->Parameters(), q2_opt_,
                       [&](ad::Graph& g, const SacBatch& b) {
                         return SacQLoss(g, *nets_.q2, b,
                                         *nets_.value_target, gamma);
                       });
  stats.v_loss = Step(batches, total, nets_.value->Parameters(), value_opt_,
                      [&](ad::Graph& g, const SacBatch& b) {
                        return SacVLoss(g, *nets_.value, *nets_.q1,
                                        *nets_.q2, *nets_.policy, b.obs,
                                        b.num_links, alpha, noise_for(b));
                      });
  double entropy = 0.0;
  stats.policy_loss =
      Step(batches, total, nets_.policy->Parameters(), policy_opt_,
           [&](ad::Graph& g, const SacBatch& b) {
             ad::Graph scratch;
             SquashedSample s = SampleSquashed(scratch, *nets_.policy, b.obs,
                                               b.num_links, noise_for(b));
             const double w = static_cast<double>(b.obs.rows()) / total;
             for (std::size_t r = 0; r < s.logp.value().size(); ++r) {
               entropy -= w * s.logp.value()[r] /
                          static_cast<double>(b.obs.rows());
             }
             return SacPolicyLoss(g, *nets_.policy, *nets_.q1, *nets_.q2,
                                  b.obs, b.num_links, alpha, noise_for(b));
           });
  stats.entropy = entropy;
  const policy::Critic& value = *nets_.value;
  PolyakUpdate(nets_.value_target->Parameters(), value.Parameters(),
               config_.tau);
  return stats;
}

}  // namespace casnet::algos
