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
#include "casnet/policy/expert_policy.h"

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"
#include "casnet/nn/gaussian.h"
#include "casnet/nn/init.h"

namespace casnet::policy {

ExpertPolicy::ExpertPolicy(std::size_t num_links)
    : num_links_(num_links),
      trunk0_("trunk0", kPairFeatures * num_links + kGoalDims, kTrunkWidth),
      trunk1_("trunk1", kTrunkWidth, kTrunkWidth),
      action_head_("action_head", kTrunkWidth, num_links),
      value_head_("value_head", kTrunkWidth, 1),
      log_std_{"log_std", ad::Tensor(ad::Shape{num_links}, nn::kInitialLogStd)} {
}

PolicyOutput ExpertPolicy::Forward(ad::Graph& g, const ad::Tensor& obs,
                                   std::size_t num_links) const {
  if (num_links != num_links_) {
    throw ShapeError("expert policy for " + std::to_string(num_links_) +
                     " links applied to " + std::to_string(num_links));
  }
  CheckObservation(obs, num_links);
  ad::Var x = g.Constant(obs);
  ad::Var h = ad::Tanh(trunk0_.Forward(g, x));
  h = ad::Tanh(trunk1_.Forward(g, h));
  PolicyOutput out;
  out.means = action_head_.Forward(g, h);
  out.value = value_head_.Forward(g, h);
  out.log_std = nn::ClampLogStd(g.Param(log_std_));
  return out;
}

void ExpertPolicy::Init(nn::Rng& rng) {
  trunk0_.Init(rng);
  trunk1_.Init(rng);
  action_head_.Init(rng);
  value_head_.Init(rng);
  log_std_.value.Fill(nn::kInitialLogStd);
}

nn::ParameterRefs ExpertPolicy::Parameters() {
  nn::ParameterRefs out;
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  action_head_.AppendParameters(out);
  value_head_.AppendParameters(out);
  out.push_back(&log_std_);
  return out;
}

nn::ConstParameterRefs ExpertPolicy::Parameters() const {
  nn::ConstParameterRefs out;
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  action_head_.AppendParameters(out);
  value_head_.AppendParameters(out);
  out.push_back(&log_std_);
  return out;
}

std::unique_ptr<ActorCritic> ExpertPolicy::Clone() const {
  return std::make_unique<ExpertPolicy>(*this);
}

}  // namespace casnet::policy
