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
#include "casnet/nn/init.h"

#include <cmath>
#include <random>

#include "casnet/errors.h"

namespace casnet::nn {

double XavierBound(std::size_t fan_in, std::size_t fan_out) {
  if (fan_in == 0 || fan_out == 0) {
    throw ParameterError("xavier init needs positive fan-in and fan-out");
  }
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

void XavierUniform(ad::Tensor& weight, Rng& rng) {
  const double bound = XavierBound(weight.cols(), weight.rows());
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& w : weight.values()) w = dist(rng);
}

Rng MakeRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x6361736eu};
  return Rng(seq);
}

}  // namespace casnet::nn
