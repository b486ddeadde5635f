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
#ifndef CASNET_NN_LAYERS_H_
#define CASNET_NN_LAYERS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "casnet/autodiff/graph.h"
#include "casnet/nn/init.h"

namespace casnet::nn {

using ParameterRefs = std::vector<ad::Parameter*>;
using ConstParameterRefs = std::vector<const ad::Parameter*>;

std::size_t CountParameters(const ConstParameterRefs& params);

// y = x W^T + b, with W stored [out x in] and x batched as [batch x in].
class Affine {
 public:
  // Parameters bound into one graph, so the weight transpose is built once
  // per graph even when the layer is applied many times.
  struct Bound {
    ad::Var weight_t;
    ad::Var bias;
    std::size_t in = 0;
    ad::Var Apply(ad::Var x) const;
  };

  Affine() = default;
  Affine(const std::string& name, std::size_t in, std::size_t out);

  Bound Bind(ad::Graph& g) const;
  ad::Var Forward(ad::Graph& g, ad::Var x) const { return Bind(g).Apply(x); }

  // Xavier-uniform weight, zero bias.
  void Init(Rng& rng);

  std::size_t in_width() const { return in_; }
  std::size_t out_width() const { return out_; }
  ad::Parameter& weight() { return weight_; }
  ad::Parameter& bias() { return bias_; }
  const ad::Parameter& weight() const { return weight_; }
  const ad::Parameter& bias() const { return bias_; }

  void AppendParameters(ParameterRefs& out);
  void AppendParameters(ConstParameterRefs& out) const;

 private:
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  ad::Parameter weight_;
  ad::Parameter bias_;
};

// Vanilla Elman cell: h' = tanh(W_ih x + W_hh h + b).
class RnnCell {
 public:
  struct Bound {
    ad::Var w_ih_t;
    ad::Var w_hh_t;
    ad::Var bias;
    std::size_t in = 0;
    std::size_t hidden = 0;
    ad::Var Step(ad::Var x, ad::Var h) const;
  };

  struct Encoding {
    ad::Var final;
    std::vector<ad::Var> hiddens;
  };

  RnnCell() = default;
  RnnCell(const std::string& name, std::size_t in, std::size_t hidden);

  Bound Bind(ad::Graph& g) const;
  ad::Var Step(ad::Graph& g, ad::Var x, ad::Var h) const {
    return Bind(g).Step(x, h);
  }
  // Runs the cell left to right from h0 over a non-empty sequence of
  // [batch x in] inputs. Throws DomainError on an empty sequence.
  Encoding Encode(ad::Graph& g, const std::vector<ad::Var>& sequence,
                  ad::Var h0) const;
  // Zero initial state for a batch.
  ad::Var ZeroState(ad::Graph& g, std::size_t batch) const;

  void Init(Rng& rng);

  std::size_t in_width() const { return in_; }
  std::size_t hidden_width() const { return hidden_; }
  ad::Parameter& w_ih() { return w_ih_; }
  ad::Parameter& w_hh() { return w_hh_; }
  ad::Parameter& bias() { return bias_; }

  void AppendParameters(ParameterRefs& out);
  void AppendParameters(ConstParameterRefs& out) const;

 private:
  std::size_t in_ = 0;
  std::size_t hidden_ = 0;
  ad::Parameter w_ih_;
  ad::Parameter w_hh_;
  ad::Parameter bias_;
};

}  // namespace casnet::nn

#endif  // CASNET_NN_LAYERS_H_
