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
#ifndef CASNET_NN_INIT_H_
#define CASNET_NN_INIT_H_

#include <cstddef>
#include <cstdint>
#include <random>

#include "casnet/autodiff/tensor.h"

namespace casnet::nn {

using Rng = std::mt19937_64;

inline constexpr double kInitialLogStd = -0.5;

// sqrt(6 / (fan_in + fan_out)).
double XavierBound(std::size_t fan_in, std::size_t fan_out);

// Fills a [fan_out x fan_in] weight with Uniform(-bound, +bound).
void XavierUniform(ad::Tensor& weight, Rng& rng);

// Derives an independent stream from a base seed and a stream tag.
Rng MakeRng(std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace casnet::nn

#endif  // CASNET_NN_INIT_H_
