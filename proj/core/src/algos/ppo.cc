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
#include "casnet/algos/ppo.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "casnet/algos/gae.h"
#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"
#include "casnet/nn/gaussian.h"

namespace casnet::algos {

void PpoConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw ConfigError("ppo: " + what);
  };
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma must be in (0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda must be in [0, 1]");
  if (!(clip > 0.0 && clip < 1.0)) fail("clip must be in (0, 1)");
  if (!(lr >= 0.0)) fail("lr must be non-negative");
  if (epochs <= 0 || minibatch <= 0 || rollout_len <= 0) {
    fail("epochs, minibatch and rollout_len must be positive");
  }
  if (!(value_coef >= 0.0) || !(entropy_coef >= 0.0)) {
    fail("loss coefficients must be non-negative");
  }
  if (!(max_grad_norm > 0.0)) fail("max_grad_norm must be positive");
}

void RolloutBuffer::Add(Trajectory trajectory) {
  if (trajectory.steps.empty()) return;
  trajectories_.push_back(std::move(trajectory));
  finalized_ = false;
}

void RolloutBuffer::Finalize(double gamma, double lambda,
                             bool normalize_advantages) {
  samples_.clear();
  advantages_.clear();
  returns_.clear();
  for (std::size_t t = 0; t < trajectories_.size(); ++t) {
    const Trajectory& traj = trajectories_[t];
    std::vector<double> rewards, values;
    std::vector<bool> dones;
    for (const auto& s : traj.steps) {
      rewards.push_back(s.reward);
      values.push_back(s.value);
      dones.push_back(s.done);
    }
    GaeResult gae =
        ComputeGae(rewards, values, dones, traj.bootstrap_value, gamma, lambda);
    for (std::size_t k = 0; k < traj.steps.size(); ++k) {
      samples_.push_back({t, k});
      advantages_.push_back(gae.advantages[k]);
      returns_.push_back(gae.returns[k]);
    }
  }
  if (normalize_advantages) NormalizeAdvantages(advantages_);
  finalized_ = true;
}

const RolloutStep& RolloutBuffer::step(std::size_t i) const {
  const Ref& r = samples_.at(i);
  return trajectories_[r.trajectory].steps[r.step];
}

std::size_t RolloutBuffer::num_links(std::size_t i) const {
  return trajectories_[samples_.at(i).trajectory].num_links;
}

ad::Var PpoRatio(ad::Var logp_new, ad::Var logp_old) {
  return ad::Exp(ad::Sub(logp_new, logp_old));
}

ad::Var PpoClipLoss(ad::Var ratio, ad::Var advantages, double clip) {
  if (ratio.shape() != advantages.shape()) {
    throw ShapeError("ppo clip loss: ratio " + ad::ShapeString(ratio.shape()) +
                     " vs advantages " + ad::ShapeString(advantages.shape()));
  }
  ad::Var unclipped = ad::Mul(ratio, advantages);
  ad::Var clipped =
      ad::Mul(ad::Clip(ratio, 1.0 - clip, 1.0 + clip), advantages);
  return ad::Neg(ad::Mean(ad::Minimum(unclipped, clipped)));
}

namespace {

struct GroupTensors {
  std::size_t num_links = 0;
  ad::Tensor obs, action, logp_old, advantage, ret;
};

std::vector<GroupTensors> GroupMinibatch(const RolloutBuffer& buffer,
                                         std::span<const std::size_t> idx) {
  std::map<std::size_t, std::vector<std::size_t>> by_links;
  for (std::size_t i : idx) by_links[buffer.num_links(i)].push_back(i);
  std::vector<GroupTensors> out;
  for (const auto& [n, members] : by_links) {
    const std::size_t b = members.size();
    const std::size_t width = 3 * n + 2;
    GroupTensors gt;
    gt.num_links = n;
    gt.obs = ad::Tensor(ad::Shape{b, width});
    gt.action = ad::Tensor(ad::Shape{b, n});
    gt.logp_old = ad::Tensor(ad::Shape{b, 1});
    gt.advantage = ad::Tensor(ad::Shape{b, 1});
    gt.ret = ad::Tensor(ad::Shape{b, 1});
    for (std::size_t r = 0; r < b; ++r) {
      const std::size_t i = members[r];
      const RolloutStep& s = buffer.step(i);
      std::copy(s.obs.begin(), s.obs.end(), gt.obs.data() + r * width);
      std::copy(s.action.begin(), s.action.end(), gt.action.data() + r * n);
      gt.logp_old[r] = s.logp;
      gt.advantage[r] = buffer.advantage(i);
      gt.ret[r] = buffer.ret(i);
    }
    out.push_back(std::move(gt));
  }
  return out;
}

}  // namespace

PpoStats PpoUpdate(policy::ActorCritic& net, const RolloutBuffer& buffer,
                   const PpoConfig& config, Adam& optimizer, nn::Rng& rng) {
  if (buffer.empty()) throw DomainError("ppo update on an empty buffer");
  if (!buffer.finalized()) {
    throw ProtocolError("ppo update before the rollout buffer is finalized");
  }
  optimizer.set_lr(config.lr);
  nn::ParameterRefs params = net.Parameters();
  std::vector<std::size_t> order(buffer.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t mb = static_cast<std::size_t>(config.minibatch);

  PpoStats stats;
  bool first = true;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += mb) {
      const std::size_t count = std::min(mb, order.size() - start);
      const double total = static_cast<double>(count);
      const auto groups = GroupMinibatch(
          buffer, std::span<const std::size_t>(order).subspan(start, count));

      ad::Graph g;
      ad::Var loss;
      double policy_loss = 0.0, value_loss = 0.0, entropy = 0.0;
      double kl = 0.0, clipped = 0.0, ratio_sum = 0.0;
      for (const GroupTensors& gt : groups) {
        const double weight = static_cast<double>(gt.obs.rows()) / total;
        const policy::PolicyOutput out = net.Forward(g, gt.obs, gt.num_links);
        ad::Var logp = nn::GaussianLogProb(out.means, out.log_std,
                                           g.Constant(gt.action));
        ad::Var ratio = PpoRatio(logp, g.Constant(gt.logp_old));
        ad::Var clip_loss =
            PpoClipLoss(ratio, g.Constant(gt.advantage), config.clip);
        ad::Var v_loss =
            ad::Mean(ad::Square(ad::Sub(out.value, g.Constant(gt.ret))));
        ad::Var ent = nn::GaussianEntropy(out.log_std, gt.num_links);
        ad::Var group_loss = ad::Add(
            ad::Add(clip_loss, ad::Scale(v_loss, config.value_coef)),
            ad::Scale(ent, -config.entropy_coef));
        group_loss = ad::Scale(group_loss, weight);
        loss = loss.valid() ? ad::Add(loss, group_loss) : group_loss;

        policy_loss += weight * clip_loss.value().item();
        value_loss += weight * v_loss.value().item();
        entropy += weight * ent.value().item();
        const ad::Tensor& lp = logp.value();
        const ad::Tensor& rv = ratio.value();
        for (std::size_t r = 0; r < lp.size(); ++r) {
          kl += (gt.logp_old[r] - lp[r]) / total;
          ratio_sum += rv[r] / total;
          if (std::abs(rv[r] - 1.0) > config.clip) clipped += 1.0 / total;
        }
      }
      if (first) {
        stats.first_ratio_mean = ratio_sum;
        first = false;
      }
      g.Backward(loss);
      std::vector<ad::Tensor> grads = CollectGrads(g, params);
      ClipGradNorm(grads, config.max_grad_norm);
      optimizer.Step(params, grads);

      stats.policy_loss += policy_loss;
      stats.value_loss += value_loss;
      stats.entropy += entropy;
      stats.approx_kl += kl;
      stats.clip_fraction += clipped;
      ++stats.minibatches;
    }
  }
  const double n = static_cast<double>(stats.minibatches);
  stats.policy_loss /= n;
  stats.value_loss /= n;
  stats.entropy /= n;
  stats.approx_kl /= n;
  stats.clip_fraction /= n;
  return stats;
}

}  // namespace casnet::algos
