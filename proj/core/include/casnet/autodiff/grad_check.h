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
#ifndef CASNET_AUTODIFF_GRAD_CHECK_H_
#define CASNET_AUTODIFF_GRAD_CHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "casnet/autodiff/graph.h"

namespace casnet::ad {

struct GradCheckOptions {
  double step = 1e-4;
  // 0 checks every coordinate; otherwise a seeded random subset of at most
  // this many coordinates per parameter tensor.
  std::size_t max_coords_per_param = 0;
  std::uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t coords_checked = 0;
};

// Relative error |a - n| / max(floor, |a| + |n|). GradCheck uses a floor of
// 1e-6 max(1, |loss|), above the rounding noise of the finite difference, so
// vanishing gradients compare absolutely.
double RelativeError(double analytic, double numeric, double floor = 1e-6);

// Compares reverse-mode gradients of a scalar loss against central finite
// differences. loss_fn builds the loss in the graph it is handed and is
// re-run at every perturbed point. Throws NumericError if any evaluation is
// non-finite. Parameters are restored bit-exactly before returning.
GradCheckResult GradCheck(const std::function<Var(Graph&)>& loss_fn,
                          std::span<Parameter* const> params,
                          const GradCheckOptions& options = {});

}  // namespace casnet::ad

#endif  // CASNET_AUTODIFF_GRAD_CHECK_H_
