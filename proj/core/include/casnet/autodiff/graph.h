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
#ifndef CASNET_AUTODIFF_GRAPH_H_
#define CASNET_AUTODIFF_GRAPH_H_

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <vector>

#include "casnet/autodiff/tensor.h"

namespace casnet::ad {

// A named trainable tensor. Gradients live in the Graph that reads it, so a
// Parameter is plain data and can be shared read-only across graphs.
struct Parameter {
  std::string name;
  Tensor value;
};

class Graph;

// Handle to a node of a Graph. Cheap to copy; valid while the graph lives.
class Var {
 public:
  Var() = default;

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
  Graph* graph() const { return graph_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return graph_ != nullptr; }

 private:
  friend class Graph;
  Var(Graph* graph, std::uint32_t id) : graph_(graph), id_(id) {}

  Graph* graph_ = nullptr;
  std::uint32_t id_ = 0;
};

// Eagerly evaluated reverse-mode tape. Nodes are appended in evaluation order,
// so the node vector is already a topological order and the backward sweep
// simply walks it in reverse. A graph is single-threaded.
class Graph {
 public:
  // Propagates the node's output gradient into its parents.
  using BackwardFn = std::function<void(Graph&, const Tensor& out_value,
                                        const Tensor& out_grad)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var Constant(Tensor value);
  // Differentiable leaf that is not a Parameter (gradients w.r.t. inputs).
  Var Variable(Tensor value);
  // Leaf bound to a parameter. Binding the same parameter twice returns the
  // same node, so its gradient accumulates over every use.
  Var Param(const Parameter& param);

  // Reverse sweep from a scalar loss. Interior gradients are recomputed on
  // every call; leaf gradients accumulate until ZeroGrad().
  void Backward(Var loss);
  void ZeroGrad();

  const Tensor& Value(Var v) const;
  // Gradient of a node after Backward; zeros if never reached.
  Tensor Grad(Var v) const;
  // Gradient w.r.t. a bound parameter; zeros of the parameter's shape if the
  // parameter was never bound or not reached.
  Tensor GradOf(const Parameter& param) const;

  bool RequiresGrad(Var v) const { return nodes_[v.id()].requires_grad; }
  std::size_t size() const { return nodes_.size(); }

  // Used by op implementations.
  Var Record(Tensor value, std::initializer_list<Var> parents,
             BackwardFn backward);
  Var Record(Tensor value, const std::vector<Var>& parents,
             BackwardFn backward);
  // Adds delta into a node's gradient; no-op for nodes without requires_grad.
  void AccumulateGrad(Var v, const Tensor& delta);
  // Mutable gradient buffer, allocated on first use. Callers must check
  // RequiresGrad first.
  Tensor& GradBuffer(Var v);

 private:
  struct Node {
    Tensor value;
    const Tensor* external = nullptr;  // parameter leaves alias the value
    Tensor grad;
    bool has_grad = false;
    bool requires_grad = false;
    bool is_leaf = false;
    BackwardFn backward;
  };

  const Tensor& NodeValue(const Node& n) const {
    return n.external != nullptr ? *n.external : n.value;
  }

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, std::uint32_t> param_nodes_;
};

}  // namespace casnet::ad

#endif  // CASNET_AUTODIFF_GRAPH_H_
