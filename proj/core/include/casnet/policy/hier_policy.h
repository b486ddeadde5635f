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
#ifndef CASNET_POLICY_HIER_POLICY_H_
#define CASNET_POLICY_HIER_POLICY_H_

#include <cstddef>

#include "casnet/autodiff/graph.h"
#include "casnet/nn/layers.h"
#include "casnet/policy/actor_critic.h"
#include "casnet/policy/morphology.h"

namespace casnet::policy {

inline constexpr std::size_t kJointFeatures = 8;  // pos, vel, len, lo, hi, axis
inline constexpr std::size_t kAttachDims = 3;

// Two-level encoder/decoder for legged robots. Widths (all hidden 32):
//
//   leg_encoder     RNN  8 -> 32        per leg, joints outward, h0 = 0
//   robot_encoder   RNN  32 + 3 -> 32   legs clockwise, input
//                                       (leg embedding, attach point)
//   trunk0/trunk1   64 <- 32 + 2 <- 64  tanh, on (robot embedding, goal)
//   value_head      1 <- 64
//   context_proj    32 <- 64            leg decoder initial hidden
//   leg_decoder     RNN  32 -> 32       step i reads robot-encoder hidden i
//   action_decoder  RNN  64 -> 32       per leg, h0 = 0, step j reads
//                                       (leg decoding i, leg-encoder hidden j)
//   action_head     1 <- 32             one mean per joint
//   log_std         one shared scalar
class HierCasnetPolicy {
 public:
  HierCasnetPolicy();

  // joint_state: [batch x 2J] with (position, velocity) per joint in
  // leg-then-joint order; goal: [batch x 2] heading. Means come out in the
  // same order. Throws ShapeError on count mismatch.
  PolicyOutput Forward(ad::Graph& g, const LeggedMorphology& morph,
                       const ad::Tensor& joint_state,
                       const ad::Tensor& goal) const;

  void Init(nn::Rng& rng);
  nn::ParameterRefs Parameters();
  nn::ConstParameterRefs Parameters() const;
  std::size_t ParamCount() const;

 private:
  nn::RnnCell leg_encoder_;
  nn::RnnCell robot_encoder_;
  nn::Affine trunk0_;
  nn::Affine trunk1_;
  nn::Affine value_head_;
  nn::Affine context_proj_;
  nn::RnnCell leg_decoder_;
  nn::RnnCell action_decoder_;
  nn::Affine action_head_;
  ad::Parameter log_std_;
};

}  // namespace casnet::policy

#endif  // CASNET_POLICY_HIER_POLICY_H_
