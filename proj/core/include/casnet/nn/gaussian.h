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
#ifndef CASNET_NN_GAUSSIAN_H_
#define CASNET_NN_GAUSSIAN_H_

#include <cstddef>

#include "casnet/autodiff/graph.h"

// Diagonal Gaussian policy heads. Means are [batch x dim]; log_std is either
// a single element shared by every dimension or a [dim] vector.
namespace casnet::nn {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

ad::Var ClampLogStd(ad::Var log_std);

// Sum over dimensions of log N(a_i; mu_i, sigma_i^2). Returns [batch x 1].
ad::Var GaussianLogProb(ad::Var mean, ad::Var log_std, ad::Var action);

// Reparameterized draw mu + sigma * noise, differentiable in mean and log_std.
ad::Var GaussianSample(ad::Var mean, ad::Var log_std, ad::Var noise);

// Differential entropy of a dim-dimensional diagonal Gaussian (scalar).
ad::Var GaussianEntropy(ad::Var log_std, std::size_t dim);

// Per-row sum of log(1 - tanh(u)^2), the change-of-variables term for
// tanh-squashed actions. Returns [batch x 1].
ad::Var TanhLogDetJacobian(ad::Var pre_tanh);

// Log-density of tanh(u) where u ~ N(mean, sigma^2). Returns [batch x 1].
ad::Var SquashedGaussianLogProb(ad::Var mean, ad::Var log_std,
                                ad::Var pre_tanh);

}  // namespace casnet::nn

#endif  // CASNET_NN_GAUSSIAN_H_
