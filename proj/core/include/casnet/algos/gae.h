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
#ifndef CASNET_ALGOS_GAE_H_
#define CASNET_ALGOS_GAE_H_

#include <span>
#include <vector>

namespace casnet::algos {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

// Generalized advantage estimation over one contiguous segment:
//   delta_t = r_t + gamma V(s_{t+1}) (1 - done_t) - V(s_t)
//   A_t     = delta_t + gamma lambda (1 - done_t) A_{t+1}
// where V(s_T) is bootstrap_value. Throws ShapeError on length mismatch and
// DomainError on an empty segment.
GaeResult ComputeGae(std::span<const double> rewards,
                     std::span<const double> values,
                     const std::vector<bool>& dones, double bootstrap_value,
                     double gamma, double lambda);

// Shifts and scales to zero mean and unit standard deviation in place.
void NormalizeAdvantages(std::vector<double>& advantages);

}  // namespace casnet::algos

#endif  // CASNET_ALGOS_GAE_H_
