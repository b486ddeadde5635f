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
#include "casnet/nn/layers.h"

#include <string>

#include "casnet/autodiff/ops.h"
#include "casnet/errors.h"

namespace casnet::nn {
namespace {

void CheckWidth(ad::Var x, std::size_t expected, const char* what) {
  const ad::Tensor& v = x.value();
  if (v.rank() != 2 || v.cols() != expected) {
    throw ShapeError(std::string(what) + ": input " +
                     ad::ShapeString(v.shape()) + " needs " +
                     std::to_string(expected) + " columns");
  }
}

}  // namespace

std::size_t CountParameters(const ConstParameterRefs& params) {
  std::size_t n = 0;
  for (const ad::Parameter* p : params) n += p->value.size();
  return n;
}

Affine::Affine(const std::string& name, std::size_t in, std::size_t out)
    : in_(in),
      out_(out),
      weight_{name + ".W", ad::Tensor(ad::Shape{out, in})},
      bias_{name + ".b", ad::Tensor(ad::Shape{out})} {
  if (in == 0 || out == 0) {
    throw ParameterError("affine layer " + name + " needs positive widths");
  }
}

Affine::Bound Affine::Bind(ad::Graph& g) const {
  return Bound{ad::Transpose(g.Param(weight_)), g.Param(bias_), in_};
}

ad::Var Affine::Bound::Apply(ad::Var x) const {
  CheckWidth(x, in, "affine");
  return ad::AddRow(ad::MatMul(x, weight_t), bias);
}

void Affine::Init(Rng& rng) {
  XavierUniform(weight_.value, rng);
  bias_.value.Fill(0.0);
}

void Affine::AppendParameters(ParameterRefs& out) {
  out.push_back(&weight_);
  out.push_back(&bias_);
}

void Affine::AppendParameters(ConstParameterRefs& out) const {
  out.push_back(&weight_);
  out.push_back(&bias_);
}

RnnCell::RnnCell(const std::string& name, std::size_t in, std::size_t hidden)
    : in_(in),
      hidden_(hidden),
      w_ih_{name + ".W_ih", ad::Tensor(ad::Shape{hidden, in})},
      w_hh_{name + ".W_hh", ad::Tensor(ad::Shape{hidden, hidden})},
      bias_{name + ".b", ad::Tensor(ad::Shape{hidden})} {
  if (in == 0 || hidden == 0) {
    throw ParameterError("rnn cell " + name + " needs positive widths");
  }
}

RnnCell::Bound RnnCell::Bind(ad::Graph& g) const {
  return Bound{ad::Transpose(g.Param(w_ih_)), ad::Transpose(g.Param(w_hh_)),
               g.Param(bias_), in_, hidden_};
}

ad::Var RnnCell::Bound::Step(ad::Var x, ad::Var h) const {
  CheckWidth(x, in, "rnn input");
  CheckWidth(h, hidden, "rnn hidden state");
  if (x.value().rows() != h.value().rows()) {
    throw ShapeError("rnn: input and hidden batch sizes differ");
  }
  return ad::Tanh(ad::AddRow(
      ad::Add(ad::MatMul(x, w_ih_t), ad::MatMul(h, w_hh_t)), bias));
}

RnnCell::Encoding RnnCell::Encode(ad::Graph& g,
                                  const std::vector<ad::Var>& sequence,
                                  ad::Var h0) const {
  if (sequence.empty()) throw DomainError("rnn encode of empty sequence");
  const Bound cell = Bind(g);
  Encoding enc;
  enc.hiddens.reserve(sequence.size());
  ad::Var h = h0;
  for (const ad::Var& x : sequence) {
    h = cell.Step(x, h);
    enc.hiddens.push_back(h);
  }
  enc.final = h;
  return enc;
}

ad::Var RnnCell::ZeroState(ad::Graph& g, std::size_t batch) const {
  return g.Constant(ad::Tensor(ad::Shape{batch, hidden_}));
}

void RnnCell::Init(Rng& rng) {
  XavierUniform(w_ih_.value, rng);
  XavierUniform(w_hh_.value, rng);
  bias_.value.Fill(0.0);
}

void RnnCell::AppendParameters(ParameterRefs& out) {
  out.push_back(&w_ih_);
  out.push_back(&w_hh_);
  out.push_back(&bias_);
}

void RnnCell::AppendParameters(ConstParameterRefs& out) const {
  out.push_back(&w_ih_);
  out.push_back(&w_hh_);
  out.push_back(&bias_);
}

}  // namespace casnet::nn
