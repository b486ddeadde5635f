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
#include "casnet/algos/adam.h"

#include <cmath>
#include <string>

#include "casnet/errors.h"

namespace casnet::algos {

Adam::Adam(double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void Adam::Step(std::span<ad::Parameter* const> params,
                std::span<const ad::Tensor> grads) {
  if (params.size() != grads.size()) {
    throw ShapeError("adam: " + std::to_string(params.size()) +
                     " parameters but " + std::to_string(grads.size()) +
                     " gradients");
  }
  if (m_.empty()) {
    for (const ad::Parameter* p : params) {
      m_.emplace_back(p->value.shape());
      v_.emplace_back(p->value.shape());
    }
  }
  if (m_.size() != params.size()) {
    throw ShapeError("adam: parameter count changed between steps");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t k = 0; k < params.size(); ++k) {
    ad::Tensor& value = params[k]->value;
    const ad::Tensor& grad = grads[k];
    if (grad.size() != value.size() || m_[k].size() != value.size()) {
      throw ShapeError("adam: gradient shape mismatch for " +
                       params[k]->name);
    }
    ad::Tensor& m = m_[k];
    ad::Tensor& v = v_[k];
    for (std::size_t i = 0; i < value.size(); ++i) {
      m[i] = beta1_ * m[i] + (1.0 - beta1_) * grad[i];
      v[i] = beta2_ * v[i] + (1.0 - beta2_) * grad[i] * grad[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      value[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
  }
}

std::vector<ad::Tensor> CollectGrads(const ad::Graph& g,
                                     const nn::ParameterRefs& params) {
  std::vector<ad::Tensor> out;
  out.reserve(params.size());
  for (const ad::Parameter* p : params) out.push_back(g.GradOf(*p));
  return out;
}

double ClipGradNorm(std::vector<ad::Tensor>& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& g : grads) {
    for (double v : g.values()) sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (auto& g : grads) {
      for (double& v : g.values()) v *= scale;
    }
  }
  return norm;
}

}  // namespace casnet::algos
