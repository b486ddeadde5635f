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
#ifndef CASNET_ALGOS_ADAM_H_
#define CASNET_ALGOS_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "casnet/autodiff/graph.h"
#include "casnet/nn/layers.h"

namespace casnet::algos {

// Adam with bias correction. Moment buffers are created on the first step
// and bound to the parameter order of that call.
class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8);

  // Throws ShapeError if grads do not match params one to one.
  void Step(std::span<ad::Parameter* const> params,
            std::span<const ad::Tensor> grads);

  double lr() const { return lr_; }
  void set_lr(double lr) { lr_ = lr; }
  std::int64_t step_count() const { return t_; }

 private:
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  std::int64_t t_ = 0;
  std::vector<ad::Tensor> m_;
  std::vector<ad::Tensor> v_;
};

// Gradient of each parameter in the graph (zeros where unreached).
std::vector<ad::Tensor> CollectGrads(const ad::Graph& g,
                                     const nn::ParameterRefs& params);

// Rescales grads in place so their global L2 norm is at most max_norm.
// Returns the norm before clipping.
double ClipGradNorm(std::vector<ad::Tensor>& grads, double max_norm);

}  // namespace casnet::algos

#endif  // CASNET_ALGOS_ADAM_H_
