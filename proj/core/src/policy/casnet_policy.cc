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
#include "casnet/policy/casnet_policy.h"

#include <vector>

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"
#include "casnet/nn/gaussian.h"
#include "casnet/nn/init.h"

namespace casnet::policy {

CasnetPolicy::CasnetPolicy()
    : pair_encoder_("pair_encoder", kPairFeatures, kEmbeddingWidth),
      trunk0_("trunk0", kEmbeddingWidth + kGoalDims, kTrunkWidth),
      trunk1_("trunk1", kTrunkWidth, kTrunkWidth),
      context_proj_("context_proj", kTrunkWidth, kEmbeddingWidth),
      decoder_("decoder", kEmbeddingWidth, kEmbeddingWidth),
      action_head_("action_head", kEmbeddingWidth, 1),
      value_head_("value_head", kTrunkWidth, 1),
      log_std_{"log_std", ad::Tensor(ad::Shape{1}, nn::kInitialLogStd)} {}

PolicyOutput CasnetPolicy::Forward(ad::Graph& g, const ad::Tensor& obs,
                                   std::size_t num_links) const {
  CheckObservation(obs, num_links);
  const std::size_t batch = obs.rows();
  ad::Var x = g.Constant(obs);

  std::vector<ad::Var> pairs;
  pairs.reserve(num_links);
  for (std::size_t i = 0; i < num_links; ++i) {
    pairs.push_back(ad::SliceCols(x, kPairFeatures * i, kPairFeatures));
  }
  ad::Var goal = ad::SliceCols(x, kPairFeatures * num_links, kGoalDims);

  const nn::RnnCell::Encoding enc =
      pair_encoder_.Encode(g, pairs, pair_encoder_.ZeroState(g, batch));
  ad::Var trunk = ad::Tanh(trunk0_.Forward(g, ad::ConcatCols({enc.final, goal})));
  trunk = ad::Tanh(trunk1_.Forward(g, trunk));

  ad::Var context = context_proj_.Forward(g, trunk);
  const nn::RnnCell::Encoding dec = decoder_.Encode(g, enc.hiddens, context);
  const nn::Affine::Bound head = action_head_.Bind(g);
  std::vector<ad::Var> means;
  means.reserve(num_links);
  for (const ad::Var& h : dec.hiddens) means.push_back(head.Apply(h));

  PolicyOutput out;
  out.means = num_links == 1 ? means.front() : ad::ConcatCols(means);
  out.value = value_head_.Forward(g, trunk);
  out.log_std = nn::ClampLogStd(g.Param(log_std_));
  return out;
}

void CasnetPolicy::Init(nn::Rng& rng) {
  pair_encoder_.Init(rng);
  trunk0_.Init(rng);
  trunk1_.Init(rng);
  context_proj_.Init(rng);
  decoder_.Init(rng);
  action_head_.Init(rng);
  value_head_.Init(rng);
  log_std_.value.Fill(nn::kInitialLogStd);
}

nn::ParameterRefs CasnetPolicy::Parameters() {
  nn::ParameterRefs out;
  pair_encoder_.AppendParameters(out);
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  context_proj_.AppendParameters(out);
  decoder_.AppendParameters(out);
  action_head_.AppendParameters(out);
  value_head_.AppendParameters(out);
  out.push_back(&log_std_);
  return out;
}

nn::ConstParameterRefs CasnetPolicy::Parameters() const {
  nn::ConstParameterRefs out;
  pair_encoder_.AppendParameters(out);
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  context_proj_.AppendParameters(out);
  decoder_.AppendParameters(out);
  action_head_.AppendParameters(out);
  value_head_.AppendParameters(out);
  out.push_back(&log_std_);
  return out;
}

std::unique_ptr<ActorCritic> CasnetPolicy::Clone() const {
  return std::make_unique<CasnetPolicy>(*this);
}

PolicyOutput CasnetForward(ad::Graph& g, const CasnetPolicy& policy,
                           std::span<const envs::PairObservation> pairs,
                           envs::Vec2 goal) {
  if (pairs.empty()) {
    throw DomainError("casnet forward of an empty observation sequence");
  }
  const std::size_t n = pairs.size();
  ad::Tensor obs(ad::Shape{1, kPairFeatures * n + kGoalDims});
  for (std::size_t i = 0; i < n; ++i) {
    obs[3 * i] = pairs[i].joint_pos;
    obs[3 * i + 1] = pairs[i].joint_vel;
    obs[3 * i + 2] = pairs[i].link_length;
  }
  obs[3 * n] = goal.x;
  obs[3 * n + 1] = goal.y;
  return policy.Forward(g, obs, n);
}

}  // namespace casnet::policy
