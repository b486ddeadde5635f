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
#include "casnet/autodiff/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "casnet/errors.h"

namespace casnet::ad {
namespace {

double Evaluate(const std::function<Var(Graph&)>& loss_fn) {
  Graph g;
  const double v = g.Value(loss_fn(g)).item();
  if (!std::isfinite(v)) {
    throw NumericError("grad_check: loss evaluated to a non-finite value");
  }
  return v;
}

}  // namespace

double RelativeError(double analytic, double numeric, double floor) {
  return std::abs(analytic - numeric) /
         std::max(floor, std::abs(analytic) + std::abs(numeric));
}

GradCheckResult GradCheck(const std::function<Var(Graph&)>& loss_fn,
                          std::span<Parameter* const> params,
                          const GradCheckOptions& options) {
  std::vector<Tensor> analytic;
  double floor = 0.0;
  {
    Graph g;
    Var loss = loss_fn(g);
    floor = 1e-6 * std::max(1.0, std::abs(g.Value(loss).item()));
    if (!std::isfinite(g.Value(loss).item())) {
      throw NumericError("grad_check: loss evaluated to a non-finite value");
    }
    g.Backward(loss);
    analytic.reserve(params.size());
    for (const Parameter* p : params) analytic.push_back(g.GradOf(*p));
  }

  std::mt19937_64 rng(options.seed);
  GradCheckResult result;
  const double h = options.step;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    std::vector<std::size_t> coords(p.value.size());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (options.max_coords_per_param > 0 &&
        coords.size() > options.max_coords_per_param) {
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    for (std::size_t i : coords) {
      const double original = p.value[i];
      // Five-point central stencil: O(h^4) truncation, so a larger h keeps
      // the rounding noise in the difference low.
      auto at = [&](double offset) {
        p.value[i] = original + offset;
        return Evaluate(loss_fn);
      };
      const double numeric =
          (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12.0 * h);
      p.value[i] = original;
      const double err = RelativeError(analytic[k][i], numeric, floor);
      ++result.coords_checked;
      if (err > result.max_rel_error || result.coords_checked == 1) {
        result.max_rel_error = err;
        result.worst_param = p.name;
        result.worst_index = i;
        result.analytic = analytic[k][i];
        result.numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace casnet::ad
