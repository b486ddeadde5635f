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
#include "casnet/policy/critics.h"

#include <string>
#include <vector>

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"
#include "casnet/policy/actor_critic.h"

namespace casnet::policy {
namespace {

ad::Var CheckedAction(std::optional<ad::Var> action, bool expected,
                      std::size_t batch, std::size_t num_links) {
  if (!expected) {
    if (action) throw ShapeError("state-value critic given an action");
    return {};
  }
  if (!action) throw ShapeError("action-value critic needs an action");
  const ad::Tensor& a = action->value();
  if (a.rank() != 2 || a.rows() != batch || a.cols() != num_links) {
    throw ShapeError("critic action " + ad::ShapeString(a.shape()) +
                     " does not match batch " + std::to_string(batch) +
                     " x " + std::to_string(num_links));
  }
  return *action;
}

}  // namespace

CasnetCritic::CasnetCritic(bool with_action)
    : with_action_(with_action),
      pair_encoder_("pair_encoder", kPairFeatures + (with_action ? 1 : 0),
                    kEmbeddingWidth),
      trunk0_("trunk0", kEmbeddingWidth + kGoalDims, kTrunkWidth),
      trunk1_("trunk1", kTrunkWidth, kTrunkWidth),
      head_("head", kTrunkWidth, 1) {}

ad::Var CasnetCritic::Forward(ad::Graph& g, const ad::Tensor& obs,
                              std::size_t num_links,
                              std::optional<ad::Var> action) const {
  CheckObservation(obs, num_links);
  const std::size_t batch = obs.rows();
  ad::Var a = CheckedAction(action, with_action_, batch, num_links);
  ad::Var x = g.Constant(obs);
  std::vector<ad::Var> pairs;
  pairs.reserve(num_links);
  for (std::size_t i = 0; i < num_links; ++i) {
    ad::Var pair = ad::SliceCols(x, kPairFeatures * i, kPairFeatures);
    if (with_action_) pair = ad::ConcatCols({pair, ad::SliceCols(a, i, 1)});
    pairs.push_back(pair);
  }
  ad::Var goal = ad::SliceCols(x, kPairFeatures * num_links, kGoalDims);
  const auto enc =
      pair_encoder_.Encode(g, pairs, pair_encoder_.ZeroState(g, batch));
  ad::Var h = ad::Tanh(trunk0_.Forward(g, ad::ConcatCols({enc.final, goal})));
  h = ad::Tanh(trunk1_.Forward(g, h));
  return head_.Forward(g, h);
}

void CasnetCritic::Init(nn::Rng& rng) {
  pair_encoder_.Init(rng);
  trunk0_.Init(rng);
  trunk1_.Init(rng);
  head_.Init(rng);
}

nn::ParameterRefs CasnetCritic::Parameters() {
  nn::ParameterRefs out;
  pair_encoder_.AppendParameters(out);
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  head_.AppendParameters(out);
  return out;
}

nn::ConstParameterRefs CasnetCritic::Parameters() const {
  nn::ConstParameterRefs out;
  pair_encoder_.AppendParameters(out);
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  head_.AppendParameters(out);
  return out;
}

std::unique_ptr<Critic> CasnetCritic::Clone() const {
  return std::make_unique<CasnetCritic>(*this);
}

MlpCritic::MlpCritic(std::size_t num_links, bool with_action)
    : num_links_(num_links),
      with_action_(with_action),
      trunk0_("trunk0",
              kPairFeatures * num_links + kGoalDims +
                  (with_action ? num_links : 0),
              kTrunkWidth),
      trunk1_("trunk1", kTrunkWidth, kTrunkWidth),
      head_("head", kTrunkWidth, 1) {}

ad::Var MlpCritic::Forward(ad::Graph& g, const ad::Tensor& obs,
                           std::size_t num_links,
                           std::optional<ad::Var> action) const {
  if (num_links != num_links_) {
    throw ShapeError("mlp critic for " + std::to_string(num_links_) +
                     " links applied to " + std::to_string(num_links));
  }
  CheckObservation(obs, num_links);
  ad::Var a = CheckedAction(action, with_action_, obs.rows(), num_links);
  ad::Var x = g.Constant(obs);
  if (with_action_) x = ad::ConcatCols({x, a});
  ad::Var h = ad::Tanh(trunk0_.Forward(g, x));
  h = ad::Tanh(trunk1_.Forward(g, h));
  return head_.Forward(g, h);
}

void MlpCritic::Init(nn::Rng& rng) {
  trunk0_.Init(rng);
  trunk1_.Init(rng);
  head_.Init(rng);
}

nn::ParameterRefs MlpCritic::Parameters() {
  nn::ParameterRefs out;
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  head_.AppendParameters(out);
  return out;
}

nn::ConstParameterRefs MlpCritic::Parameters() const {
  nn::ConstParameterRefs out;
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  head_.AppendParameters(out);
  return out;
}

std::unique_ptr<Critic> MlpCritic::Clone() const {
  return std::make_unique<MlpCritic>(*this);
}

std::unique_ptr<Critic> MakeCritic(std::string_view kind,
                                   std::size_t num_links, bool with_action,
                                   nn::Rng& rng) {
  std::unique_ptr<Critic> net;
  if (kind == "casnet") {
    net = std::make_unique<CasnetCritic>(with_action);
  } else if (kind == "expert") {
    net = std::make_unique<MlpCritic>(num_links, with_action);
  } else {
    throw ConfigError("unknown critic kind: " + std::string(kind));
  }
  net->Init(rng);
  return net;
}

}  // namespace casnet::policy
