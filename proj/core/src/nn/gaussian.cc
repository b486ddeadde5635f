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
#include "casnet/nn/gaussian.h"

#include <cmath>
#include <numbers>
#include <string>

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"

namespace casnet::nn {
namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

bool IsShared(ad::Var log_std) { return log_std.value().size() == 1; }

void CheckLogStd(ad::Var log_std, std::size_t dim) {
  const std::size_t n = log_std.value().size();
  if (n != 1 && n != dim) {
    throw ShapeError("log_std of size " + std::to_string(n) +
                     " for a " + std::to_string(dim) + "-dim Gaussian");
  }
}

// sigma broadcast against a [batch x dim] operand.
ad::Var ScaleBySigma(ad::Var x, ad::Var log_std) {
  if (IsShared(log_std)) return ad::Mul(x, ad::Exp(log_std));
  return ad::MulRow(x, ad::Exp(log_std));
}

ad::Var DivideBySigma(ad::Var x, ad::Var log_std) {
  if (IsShared(log_std)) return ad::Mul(x, ad::Exp(ad::Neg(log_std)));
  return ad::MulRow(x, ad::Exp(ad::Neg(log_std)));
}

// sum_i log sigma_i as a scalar.
ad::Var SumLogStd(ad::Var log_std, std::size_t dim) {
  if (IsShared(log_std)) {
    return ad::Scale(ad::Sum(log_std), static_cast<double>(dim));
  }
  return ad::Sum(log_std);
}

}  // namespace

ad::Var ClampLogStd(ad::Var log_std) {
  return ad::Clip(log_std, kLogStdMin, kLogStdMax);
}

ad::Var GaussianLogProb(ad::Var mean, ad::Var log_std, ad::Var action) {
  if (mean.shape() != action.shape() || mean.value().rank() != 2) {
    throw ShapeError("gaussian log-prob: mean " +
                     ad::ShapeString(mean.shape()) + " vs action " +
                     ad::ShapeString(action.shape()));
  }
  const std::size_t dim = mean.value().cols();
  CheckLogStd(log_std, dim);
  ad::Var z = DivideBySigma(ad::Sub(action, mean), log_std);
  ad::Var quad = ad::Scale(ad::RowSum(ad::Square(z)), -0.5);
  ad::Var norm = ad::AddScalar(SumLogStd(log_std, dim),
                               0.5 * static_cast<double>(dim) * kLog2Pi);
  return ad::Sub(quad, norm);
}

ad::Var GaussianSample(ad::Var mean, ad::Var log_std, ad::Var noise) {
  if (mean.shape() != noise.shape()) {
    throw ShapeError("gaussian sample: mean " + ad::ShapeString(mean.shape()) +
                     " vs noise " + ad::ShapeString(noise.shape()));
  }
  CheckLogStd(log_std, mean.value().cols());
  return ad::Add(mean, ScaleBySigma(noise, log_std));
}

ad::Var GaussianEntropy(ad::Var log_std, std::size_t dim) {
  CheckLogStd(log_std, dim);
  const double per_dim = 0.5 * (1.0 + kLog2Pi);
  return ad::AddScalar(SumLogStd(log_std, dim),
                       per_dim * static_cast<double>(dim));
}

ad::Var TanhLogDetJacobian(ad::Var pre_tanh) {
  // log(1 - tanh(u)^2) = 2 (log 2 - u - softplus(-2u))
  ad::Var inner = ad::AddScalar(
      ad::Neg(ad::Add(pre_tanh, ad::Softplus(ad::Scale(pre_tanh, -2.0)))),
      std::log(2.0));
  return ad::Scale(ad::RowSum(inner), 2.0);
}

ad::Var SquashedGaussianLogProb(ad::Var mean, ad::Var log_std,
                                ad::Var pre_tanh) {
  return ad::Sub(GaussianLogProb(mean, log_std, pre_tanh),
                 TanhLogDetJacobian(pre_tanh));
}

}  // namespace casnet::nn
