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
#ifndef CASNET_AUTODIFF_OPS_H_
#define CASNET_AUTODIFF_OPS_H_

#include <cstddef>
#include <vector>

#include "casnet/autodiff/graph.h"

// Differentiable operations over Graph nodes. Binary elementwise ops accept
// equal shapes, or a single-element operand that is broadcast to the other's
// shape; anything else raises ShapeError.
namespace casnet::ad {

Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
Var Div(Var a, Var b);

// Scalar constants folded into the node (no extra constant node).
Var AddScalar(Var a, double s);
Var Scale(Var a, double s);
Var Neg(Var a);
Var Square(Var a);

// [m x k] . [k x n] -> [m x n]. Rank-1 operands are treated as a row.
Var MatMul(Var a, Var b);
Var Transpose(Var a);

Var Tanh(Var a);
Var Exp(Var a);
// Throws DomainError if any element is <= 0.
Var Log(Var a);
// log(1 + exp(a)), computed without overflow.
Var Softplus(Var a);

// Full reductions to a rank-0 scalar. Throw DomainError on empty input.
Var Sum(Var a);
Var Mean(Var a);

// Elementwise clamp to [lo, hi]. Gradient passes where lo <= a <= hi.
// Throws ParameterError if lo >= hi.
Var Clip(Var a, double lo, double hi);
// Elementwise min; ties route the gradient to a.
Var Minimum(Var a, Var b);

// Matrix helpers for batched layers, all on rank-2 [rows x cols] operands.
// a + row, with row of shape [cols] or [1 x cols] repeated over a's rows.
Var AddRow(Var a, Var row);
// a * row, broadcasting like AddRow.
Var MulRow(Var a, Var row);
// Horizontal concatenation; all parts share the row count.
Var ConcatCols(const std::vector<Var>& parts);
Var SliceCols(Var a, std::size_t start, std::size_t count);
// Per-row sums: [rows x cols] -> [rows x 1].
Var RowSum(Var a);

inline Var operator+(Var a, Var b) { return Add(a, b); }
inline Var operator-(Var a, Var b) { return Sub(a, b); }
inline Var operator*(Var a, Var b) { return Mul(a, b); }
inline Var operator/(Var a, Var b) { return Div(a, b); }
inline Var operator-(Var a) { return Neg(a); }
inline Var operator+(Var a, double s) { return AddScalar(a, s); }
inline Var operator+(double s, Var a) { return AddScalar(a, s); }
inline Var operator-(Var a, double s) { return AddScalar(a, -s); }
inline Var operator*(Var a, double s) { return Scale(a, s); }
inline Var operator*(double s, Var a) { return Scale(a, s); }

}  // namespace casnet::ad

#endif  // CASNET_AUTODIFF_OPS_H_
