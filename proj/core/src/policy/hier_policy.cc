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
#include "casnet/policy/hier_policy.h"

#include <string>
#include <vector>

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"
#include "casnet/nn/gaussian.h"
#include "casnet/nn/init.h"

namespace casnet::policy {

HierCasnetPolicy::HierCasnetPolicy()
    : leg_encoder_("leg_encoder", kJointFeatures, kEmbeddingWidth),
      robot_encoder_("robot_encoder", kEmbeddingWidth + kAttachDims,
                     kEmbeddingWidth),
      trunk0_("trunk0", kEmbeddingWidth + kGoalDims, kTrunkWidth),
      trunk1_("trunk1", kTrunkWidth, kTrunkWidth),
      value_head_("value_head", kTrunkWidth, 1),
      context_proj_("context_proj", kTrunkWidth, kEmbeddingWidth),
      leg_decoder_("leg_decoder", kEmbeddingWidth, kEmbeddingWidth),
      action_decoder_("action_decoder", 2 * kEmbeddingWidth, kEmbeddingWidth),
      action_head_("action_head", kEmbeddingWidth, 1),
      log_std_{"log_std", ad::Tensor(ad::Shape{1}, nn::kInitialLogStd)} {}

PolicyOutput HierCasnetPolicy::Forward(ad::Graph& g,
                                       const LeggedMorphology& morph,
                                       const ad::Tensor& joint_state,
                                       const ad::Tensor& goal) const {
  morph.Validate();
  const std::size_t total = morph.total_joints();
  if (joint_state.rank() != 2 || joint_state.cols() != 2 * total) {
    throw ShapeError("joint state " + ad::ShapeString(joint_state.shape()) +
                     " does not match " + std::to_string(total) + " joints");
  }
  const std::size_t batch = joint_state.rows();
  if (goal.rank() != 2 || goal.rows() != batch || goal.cols() != kGoalDims) {
    throw ShapeError("goal " + ad::ShapeString(goal.shape()) +
                     " does not match batch " + std::to_string(batch));
  }

  const nn::RnnCell::Bound leg_enc = leg_encoder_.Bind(g);
  const nn::RnnCell::Bound robot_enc = robot_encoder_.Bind(g);
  const ad::Var zero = leg_encoder_.ZeroState(g, batch);

  // Level 1: each leg's joints, outward from the body.
  std::vector<std::vector<ad::Var>> joint_hiddens(morph.legs.size());
  std::vector<ad::Var> robot_inputs;
  std::size_t joint_index = 0;
  for (std::size_t i = 0; i < morph.legs.size(); ++i) {
    const LegDescriptor& leg = morph.legs[i];
    ad::Var h = zero;
    for (const JointDescriptor& jd : leg.joints) {
      ad::Tensor features(ad::Shape{batch, kJointFeatures});
      for (std::size_t b = 0; b < batch; ++b) {
        features.at(b, 0) = joint_state.at(b, 2 * joint_index);
        features.at(b, 1) = joint_state.at(b, 2 * joint_index + 1);
        features.at(b, 2) = jd.link_length;
        features.at(b, 3) = jd.range_lo;
        features.at(b, 4) = jd.range_hi;
        features.at(b, 5) = jd.axis[0];
        features.at(b, 6) = jd.axis[1];
        features.at(b, 7) = jd.axis[2];
      }
      h = leg_enc.Step(g.Constant(std::move(features)), h);
      joint_hiddens[i].push_back(h);
      ++joint_index;
    }
    ad::Tensor attach(ad::Shape{batch, kAttachDims});
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t k = 0; k < kAttachDims; ++k) {
        attach.at(b, k) = leg.attach[k];
      }
    }
    robot_inputs.push_back(ad::ConcatCols({h, g.Constant(std::move(attach))}));
  }

  // Level 2: legs in clockwise order.
  std::vector<ad::Var> leg_hiddens;
  ad::Var robot = zero;
  for (const ad::Var& x : robot_inputs) {
    robot = robot_enc.Step(x, robot);
    leg_hiddens.push_back(robot);
  }

  ad::Var trunk = ad::Tanh(
      trunk0_.Forward(g, ad::ConcatCols({robot, g.Constant(goal)})));
  trunk = ad::Tanh(trunk1_.Forward(g, trunk));

  const nn::RnnCell::Bound leg_dec = leg_decoder_.Bind(g);
  const nn::RnnCell::Bound act_dec = action_decoder_.Bind(g);
  const nn::Affine::Bound head = action_head_.Bind(g);
  std::vector<ad::Var> means;
  means.reserve(total);
  ad::Var leg_state = context_proj_.Forward(g, trunk);
  for (std::size_t i = 0; i < morph.legs.size(); ++i) {
    leg_state = leg_dec.Step(leg_hiddens[i], leg_state);
    ad::Var h = zero;
    for (const ad::Var& joint_hidden : joint_hiddens[i]) {
      h = act_dec.Step(ad::ConcatCols({leg_state, joint_hidden}), h);
      means.push_back(head.Apply(h));
    }
  }

  PolicyOutput out;
  out.means = ad::ConcatCols(means);
  out.value = value_head_.Forward(g, trunk);
  out.log_std = nn::ClampLogStd(g.Param(log_std_));
  return out;
}

void HierCasnetPolicy::Init(nn::Rng& rng) {
  leg_encoder_.Init(rng);
  robot_encoder_.Init(rng);
  trunk0_.Init(rng);
  trunk1_.Init(rng);
  value_head_.Init(rng);
  context_proj_.Init(rng);
  leg_decoder_.Init(rng);
  action_decoder_.Init(rng);
  action_head_.Init(rng);
  log_std_.value.Fill(nn::kInitialLogStd);
}

nn::ParameterRefs HierCasnetPolicy::Parameters() {
  nn::ParameterRefs out;
  leg_encoder_.AppendParameters(out);
  robot_encoder_.AppendParameters(out);
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  value_head_.AppendParameters(out);
  context_proj_.AppendParameters(out);
  leg_decoder_.AppendParameters(out);
  action_decoder_.AppendParameters(out);
  action_head_.AppendParameters(out);
  out.push_back(&log_std_);
  return out;
}

nn::ConstParameterRefs HierCasnetPolicy::Parameters() const {
  nn::ConstParameterRefs out;
  leg_encoder_.AppendParameters(out);
  robot_encoder_.AppendParameters(out);
  trunk0_.AppendParameters(out);
  trunk1_.AppendParameters(out);
  value_head_.AppendParameters(out);
  context_proj_.AppendParameters(out);
  leg_decoder_.AppendParameters(out);
  action_decoder_.AppendParameters(out);
  action_head_.AppendParameters(out);
  out.push_back(&log_std_);
  return out;
}

std::size_t HierCasnetPolicy::ParamCount() const {
  return nn::CountParameters(Parameters());
}

}  // namespace casnet::policy
