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
#include "casnet/autodiff/ops.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "casnet/errors.h"

namespace casnet::ad {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMajor>;
using ConstMatMap = Eigen::Map<const RowMajor>;

Graph& GraphOf(Var a) { return *a.graph(); }

// Which operand of an elementwise binary op is broadcast.
enum class Broadcast { kNone, kLhs, kRhs };

Broadcast CheckBroadcast(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() == b.shape()) return Broadcast::kNone;
  if (b.size() == 1) return Broadcast::kRhs;
  if (a.size() == 1) return Broadcast::kLhs;
  throw ShapeError(std::string(op) + ": shapes " + ShapeString(a.shape()) +
                   " and " + ShapeString(b.shape()) + " are incompatible");
}

// Elementwise binary op. fwd(x, y) gives the value; da/db(x, y, out) give the
// local partials.
template <typename Fwd, typename Da, typename Db>
Var Binary(Var a, Var b, const char* op, Fwd fwd, Da da, Db db) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  const Broadcast mode = CheckBroadcast(av, bv, op);
  Tensor out(mode == Broadcast::kLhs ? bv.shape() : av.shape());
  const bool a_scalar = mode == Broadcast::kLhs;
  const bool b_scalar = mode == Broadcast::kRhs;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fwd(av[a_scalar ? 0 : i], bv[b_scalar ? 0 : i]);
  }
  return g.Record(
      std::move(out), {a, b},
      [a, b, a_scalar, b_scalar, da, db](Graph& g, const Tensor& out,
                                         const Tensor& grad) {
        const Tensor& av = g.Value(a);
        const Tensor& bv = g.Value(b);
        if (g.RequiresGrad(a)) {
          Tensor& ga = g.GradBuffer(a);
          for (std::size_t i = 0; i < grad.size(); ++i) {
            const double x = av[a_scalar ? 0 : i];
            const double y = bv[b_scalar ? 0 : i];
            ga[a_scalar ? 0 : i] += grad[i] * da(x, y, out[i]);
          }
        }
        if (g.RequiresGrad(b)) {
          Tensor& gb = g.GradBuffer(b);
          for (std::size_t i = 0; i < grad.size(); ++i) {
            const double x = av[a_scalar ? 0 : i];
            const double y = bv[b_scalar ? 0 : i];
            gb[b_scalar ? 0 : i] += grad[i] * db(x, y, out[i]);
          }
        }
      });
}

// Elementwise unary op; deriv(x, out) is the local derivative.
template <typename Fwd, typename Deriv>
Var Unary(Var a, Fwd fwd, Deriv deriv) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  Tensor out(av.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fwd(av[i]);
  return g.Record(std::move(out), {a},
                  [a, deriv](Graph& g, const Tensor& out, const Tensor& grad) {
                    const Tensor& av = g.Value(a);
                    Tensor& ga = g.GradBuffer(a);
                    for (std::size_t i = 0; i < grad.size(); ++i) {
                      ga[i] += grad[i] * deriv(av[i], out[i]);
                    }
                  });
}

void RequireRank2(const Tensor& t, const char* op) {
  if (t.rank() != 2) {
    throw ShapeError(std::string(op) + ": expected a matrix, got " +
                     ShapeString(t.shape()));
  }
}

}  // namespace

Var Add(Var a, Var b) {
  return Binary(
      a, b, "add", [](double x, double y) { return x + y; },
      [](double, double, double) { return 1.0; },
      [](double, double, double) { return 1.0; });
}

Var Sub(Var a, Var b) {
  return Binary(
      a, b, "sub", [](double x, double y) { return x - y; },
      [](double, double, double) { return 1.0; },
      [](double, double, double) { return -1.0; });
}

Var Mul(Var a, Var b) {
  return Binary(
      a, b, "mul", [](double x, double y) { return x * y; },
      [](double, double y, double) { return y; },
      [](double x, double, double) { return x; });
}

Var Div(Var a, Var b) {
  return Binary(
      a, b, "div", [](double x, double y) { return x / y; },
      [](double, double y, double) { return 1.0 / y; },
      [](double x, double y, double) { return -x / (y * y); });
}

Var AddScalar(Var a, double s) {
  return Unary(
      a, [s](double x) { return x + s; }, [](double, double) { return 1.0; });
}

Var Scale(Var a, double s) {
  return Unary(
      a, [s](double x) { return x * s; }, [s](double, double) { return s; });
}

Var Neg(Var a) { return Scale(a, -1.0); }

Var Square(Var a) {
  return Unary(
      a, [](double x) { return x * x; },
      [](double x, double) { return 2.0 * x; });
}

Var MatMul(Var a, Var b) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.rank() > 2 || bv.rank() > 2 || av.cols() != bv.rows()) {
    throw ShapeError("matmul: " + ShapeString(av.shape()) + " . " +
                     ShapeString(bv.shape()));
  }
  const std::size_t m = av.rows(), k = av.cols(), n = bv.cols();
  Tensor out(Shape{m, n});
  MatMap(out.data(), m, n).noalias() =
      ConstMatMap(av.data(), m, k) * ConstMatMap(bv.data(), k, n);
  return g.Record(std::move(out), {a, b},
                  [a, b, m, k, n](Graph& g, const Tensor&, const Tensor& grad) {
                    ConstMatMap gm(grad.data(), m, n);
                    if (g.RequiresGrad(a)) {
                      const Tensor& bv = g.Value(b);
                      MatMap(g.GradBuffer(a).data(), m, k).noalias() +=
                          gm * ConstMatMap(bv.data(), k, n).transpose();
                    }
                    if (g.RequiresGrad(b)) {
                      const Tensor& av = g.Value(a);
                      MatMap(g.GradBuffer(b).data(), k, n).noalias() +=
                          ConstMatMap(av.data(), m, k).transpose() * gm;
                    }
                  });
}

Var Transpose(Var a) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  RequireRank2(av, "transpose");
  const std::size_t r = av.rows(), c = av.cols();
  Tensor out(Shape{c, r});
  MatMap(out.data(), c, r) = ConstMatMap(av.data(), r, c).transpose();
  return g.Record(std::move(out), {a},
                  [a, r, c](Graph& g, const Tensor&, const Tensor& grad) {
                    MatMap(g.GradBuffer(a).data(), r, c) +=
                        ConstMatMap(grad.data(), c, r).transpose();
                  });
}

Var Tanh(Var a) {
  return Unary(
      a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Exp(Var a) {
  return Unary(
      a, [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Var Log(Var a) {
  for (double v : a.value().values()) {
    if (!(v > 0.0)) {
      throw DomainError("log of non-positive value " + std::to_string(v));
    }
  }
  return Unary(
      a, [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Var Softplus(Var a) {
  return Unary(
      a,
      [](double x) {
        return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
      },
      [](double x, double) {
        return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                        : std::exp(x) / (1.0 + std::exp(x));
      });
}

Var Sum(Var a) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  if (av.empty()) throw DomainError("sum of empty tensor");
  double total = 0.0;
  for (double v : av.values()) total += v;
  return g.Record(Tensor::Scalar(total), {a},
                  [a](Graph& g, const Tensor&, const Tensor& grad) {
                    Tensor& ga = g.GradBuffer(a);
                    const double d = grad[0];
                    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += d;
                  });
}

Var Mean(Var a) {
  const Tensor& av = a.value();
  if (av.empty()) throw DomainError("mean of empty tensor");
  return Scale(Sum(a), 1.0 / static_cast<double>(av.size()));
}

Var Clip(Var a, double lo, double hi) {
  if (!(lo < hi)) {
    throw ParameterError("clip requires lo < hi, got [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
  return Unary(
      a, [lo, hi](double x) { return std::clamp(x, lo, hi); },
      [lo, hi](double x, double) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
}

Var Minimum(Var a, Var b) {
  if (a.shape() != b.shape()) {
    throw ShapeError("minimum: shapes " + ShapeString(a.shape()) + " and " +
                     ShapeString(b.shape()) + " differ");
  }
  return Binary(
      a, b, "minimum", [](double x, double y) { return x <= y ? x : y; },
      [](double x, double y, double) { return x <= y ? 1.0 : 0.0; },
      [](double x, double y, double) { return x <= y ? 0.0 : 1.0; });
}

Var AddRow(Var a, Var row) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  const Tensor& rv = row.value();
  RequireRank2(av, "add_row");
  const std::size_t r = av.rows(), c = av.cols();
  if (rv.size() != c || rv.rows() != 1) {
    throw ShapeError("add_row: row " + ShapeString(rv.shape()) +
                     " does not match " + ShapeString(av.shape()));
  }
  Tensor out(av.shape());
  MatMap(out.data(), r, c) =
      ConstMatMap(av.data(), r, c).rowwise() +
      Eigen::Map<const Eigen::RowVectorXd>(rv.data(), c);
  return g.Record(std::move(out), {a, row},
                  [a, row, r, c](Graph& g, const Tensor&, const Tensor& grad) {
                    ConstMatMap gm(grad.data(), r, c);
                    if (g.RequiresGrad(a)) {
                      MatMap(g.GradBuffer(a).data(), r, c) += gm;
                    }
                    if (g.RequiresGrad(row)) {
                      Eigen::Map<Eigen::RowVectorXd>(
                          g.GradBuffer(row).data(), c) += gm.colwise().sum();
                    }
                  });
}

Var MulRow(Var a, Var row) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  const Tensor& rv = row.value();
  RequireRank2(av, "mul_row");
  const std::size_t r = av.rows(), c = av.cols();
  if (rv.size() != c || rv.rows() != 1) {
    throw ShapeError("mul_row: row " + ShapeString(rv.shape()) +
                     " does not match " + ShapeString(av.shape()));
  }
  Tensor out(av.shape());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = av.at(i, j) * rv[j];
  }
  return g.Record(std::move(out), {a, row},
                  [a, row, r, c](Graph& g, const Tensor&, const Tensor& grad) {
                    const Tensor& av = g.Value(a);
                    const Tensor& rv = g.Value(row);
                    if (g.RequiresGrad(a)) {
                      Tensor& ga = g.GradBuffer(a);
                      for (std::size_t i = 0; i < r; ++i) {
                        for (std::size_t j = 0; j < c; ++j) {
                          ga.at(i, j) += grad.at(i, j) * rv[j];
                        }
                      }
                    }
                    if (g.RequiresGrad(row)) {
                      Tensor& gr = g.GradBuffer(row);
                      for (std::size_t i = 0; i < r; ++i) {
                        for (std::size_t j = 0; j < c; ++j) {
                          gr[j] += grad.at(i, j) * av.at(i, j);
                        }
                      }
                    }
                  });
}

Var ConcatCols(const std::vector<Var>& parts) {
  if (parts.empty()) throw DomainError("concat of zero tensors");
  Graph& g = GraphOf(parts.front());
  const std::size_t r = parts.front().value().rows();
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const Var& p : parts) {
    const Tensor& pv = p.value();
    if (pv.rank() != 2 || pv.rows() != r) {
      throw ShapeError("concat_cols: part " + ShapeString(pv.shape()) +
                       " does not have " + std::to_string(r) + " rows");
    }
    widths.push_back(pv.cols());
    total += pv.cols();
  }
  Tensor out(Shape{r, total});
  std::size_t offset = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const Tensor& pv = parts[p].value();
    for (std::size_t i = 0; i < r; ++i) {
      std::copy_n(pv.data() + i * widths[p], widths[p],
                  out.data() + i * total + offset);
    }
    offset += widths[p];
  }
  return g.Record(
      std::move(out), parts,
      [parts, widths, r, total](Graph& g, const Tensor&, const Tensor& grad) {
        std::size_t offset = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
          const std::size_t w = widths[p];
          if (g.RequiresGrad(parts[p])) {
            Tensor& gp = g.GradBuffer(parts[p]);
            for (std::size_t i = 0; i < r; ++i) {
              for (std::size_t j = 0; j < w; ++j) {
                gp[i * w + j] += grad[i * total + offset + j];
              }
            }
          }
          offset += w;
        }
      });
}

Var SliceCols(Var a, std::size_t start, std::size_t count) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  RequireRank2(av, "slice_cols");
  const std::size_t r = av.rows(), c = av.cols();
  if (count == 0 || start + count > c) {
    throw ShapeError("slice_cols: [" + std::to_string(start) + ", " +
                     std::to_string(start + count) + ") out of " +
                     std::to_string(c) + " columns");
  }
  Tensor out(Shape{r, count});
  for (std::size_t i = 0; i < r; ++i) {
    std::copy_n(av.data() + i * c + start, count, out.data() + i * count);
  }
  return g.Record(std::move(out), {a},
                  [a, r, c, start, count](Graph& g, const Tensor&,
                                          const Tensor& grad) {
                    Tensor& ga = g.GradBuffer(a);
                    for (std::size_t i = 0; i < r; ++i) {
                      for (std::size_t j = 0; j < count; ++j) {
                        ga[i * c + start + j] += grad[i * count + j];
                      }
                    }
                  });
}

Var RowSum(Var a) {
  Graph& g = GraphOf(a);
  const Tensor& av = a.value();
  RequireRank2(av, "row_sum");
  const std::size_t r = av.rows(), c = av.cols();
  Tensor out(Shape{r, 1});
  for (std::size_t i = 0; i < r; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < c; ++j) s += av[i * c + j];
    out[i] = s;
  }
  return g.Record(std::move(out), {a},
                  [a, r, c](Graph& g, const Tensor&, const Tensor& grad) {
                    Tensor& ga = g.GradBuffer(a);
                    for (std::size_t i = 0; i < r; ++i) {
                      for (std::size_t j = 0; j < c; ++j) {
                        ga[i * c + j] += grad[i];
                      }
                    }
                  });
}

}  // namespace casnet::ad
