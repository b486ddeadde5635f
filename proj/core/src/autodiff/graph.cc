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
#include "casnet/autodiff/graph.h"

#include <utility>

#include "casnet/errors.h"

namespace casnet::ad {

const Tensor& Var::value() const { return graph_->Value(*this); }

Var Graph::Constant(Tensor value) {
  Node node;
  node.value = std::move(value);
  node.is_leaf = true;
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Graph::Variable(Tensor value) {
  Node node;
  node.value = std::move(value);
  node.is_leaf = true;
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Graph::Param(const Parameter& param) {
  auto it = param_nodes_.find(&param);
  if (it != param_nodes_.end()) return Var(this, it->second);
  Node node;
  node.external = &param.value;
  node.is_leaf = true;
  node.requires_grad = true;
  nodes_.push_back(std::move(node));
  const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
  param_nodes_.emplace(&param, id);
  return Var(this, id);
}

Var Graph::Record(Tensor value, std::initializer_list<Var> parents,
                  BackwardFn backward) {
  return Record(std::move(value), std::vector<Var>(parents),
                std::move(backward));
}

Var Graph::Record(Tensor value, const std::vector<Var>& parents,
                  BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  for (const Var& p : parents) {
    if (p.graph() != this) {
      throw ProtocolError("operands belong to different graphs");
    }
    node.requires_grad = node.requires_grad || nodes_[p.id()].requires_grad;
  }
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

void Graph::Backward(Var loss) {
  if (loss.graph() != this) throw ProtocolError("loss from another graph");
  const Tensor& loss_value = Value(loss);
  if (loss_value.size() != 1) {
    throw ShapeError("backward needs a scalar loss, got shape " +
                     ShapeString(loss_value.shape()));
  }
  for (Node& n : nodes_) {
    if (!n.is_leaf) n.has_grad = false;
  }
  if (!nodes_[loss.id()].requires_grad) return;

  // The loss itself may be a leaf whose gradient accumulates.
  Tensor& seed = GradBuffer(loss);
  seed[0] += 1.0;
  for (std::int64_t i = loss.id(); i >= 0; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (!n.has_grad || !n.backward) continue;
    // Backward callbacks never record nodes, so n stays valid.
    n.backward(*this, NodeValue(n), n.grad);
  }
}

void Graph::ZeroGrad() {
  for (Node& n : nodes_) n.has_grad = false;
}

const Tensor& Graph::Value(Var v) const { return NodeValue(nodes_[v.id()]); }

Tensor Graph::Grad(Var v) const {
  const Node& n = nodes_[v.id()];
  if (n.has_grad) return n.grad;
  return Tensor(NodeValue(n).shape());
}

Tensor Graph::GradOf(const Parameter& param) const {
  auto it = param_nodes_.find(&param);
  if (it == param_nodes_.end()) return Tensor(param.value.shape());
  return Grad(Var(const_cast<Graph*>(this), it->second));
}

Tensor& Graph::GradBuffer(Var v) {
  Node& n = nodes_[v.id()];
  if (!n.has_grad) {
    const Shape& shape = NodeValue(n).shape();
    if (n.grad.shape() != shape) {
      n.grad = Tensor(shape);
    } else {
      n.grad.Fill(0.0);
    }
    n.has_grad = true;
  }
  return n.grad;
}

void Graph::AccumulateGrad(Var v, const Tensor& delta) {
  if (!nodes_[v.id()].requires_grad) return;
  Tensor& g = GradBuffer(v);
  if (g.size() != delta.size()) {
    throw ShapeError("gradient shape " + ShapeString(delta.shape()) +
                     " does not match node shape " + ShapeString(g.shape()));
  }
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += delta[i];
}

}  // namespace casnet::ad
