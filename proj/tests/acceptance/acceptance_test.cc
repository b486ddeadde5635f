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

// End-to-end acceptance checks. Prints one PASS/FAIL/SKIP line per
// criterion and exits non-zero if any criterion fails. The two long training
// criteria run only with --long.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "casnet/algos/gae.h"
#include "casnet/algos/ppo.h"
#include "casnet/algos/sac.h"
#include "casnet/autodiff/grad_check.h"
#include "casnet/autodiff/ops.h"
#include "casnet/envs/reacher.h"
#include "casnet/envs/registry.h"
#include "casnet/harness/checkpoint.h"
#include "casnet/harness/config.h"
#include "casnet/harness/evaluate.h"
#include "casnet/harness/metrics.h"
#include "casnet/harness/trainer.h"
#include "casnet/nn/gaussian.h"
#include "casnet/nn/init.h"
#include "casnet/nn/layers.h"
#include "casnet/policy/actor_critic.h"
#include "casnet/policy/critics.h"
#include "casnet/policy/hier_policy.h"
#include "casnet/policy/morphology.h"

namespace casnet {
namespace {

namespace fs = std::filesystem;
using ad::Graph;
using ad::Parameter;
using ad::Shape;
using ad::Tensor;
using ad::Var;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Tensor Uniform(Shape shape, std::mt19937_64& rng, double lo = -1.0,
               double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

// Generic smooth readout: contracts every output with a fixed random
// weight so that no gradient is identically zero.
Var Readout(Graph& g, Var out, std::mt19937_64& rng) {
  const Tensor w = Uniform(out.value().shape(), rng, 0.5, 1.5);
  return ad::Add(ad::Sum(ad::Mul(out, g.Constant(w))),
                 ad::Scale(ad::Sum(ad::Square(out)), 0.25));
}

fs::path ScratchDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("casnet_acceptance_" + name + "_" +
                      std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// ------------------------------------------------------------------ 1

// Worst error over `trials` random parameterizations of one target.
struct GradTarget {
  std::string name;
  std::function<double(std::uint64_t trial)> run;  // returns max rel error
};

double CheckLoss(const std::function<Var(Graph&)>& loss,
                 const nn::ParameterRefs& params, std::size_t coords,
                 std::uint64_t seed) {
  ad::GradCheckOptions opt;
  opt.max_coords_per_param = coords;
  opt.seed = seed;
  return ad::GradCheck(loss, params, opt).max_rel_error;
}

Tensor RandomObs(std::size_t batch, std::size_t n, std::mt19937_64& rng) {
  Tensor obs = Uniform(Shape{batch, policy::kPairFeatures * n +
                                        policy::kGoalDims},
                       rng);
  // Link lengths in their physical range.
  for (std::size_t r = 0; r < batch; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      obs.at(r, 3 * i + 2) = 0.07 + 0.1 * (obs.at(r, 3 * i + 2) + 1.0) / 2.0;
    }
  }
  return obs;
}

std::vector<GradTarget> GradTargets() {
  std::vector<GradTarget> t;
  t.push_back({"affine", [](std::uint64_t k) {
                 std::mt19937_64 rng(k);
                 auto init = nn::MakeRng(k, 1);
                 nn::Affine layer("affine", 5, 4);
                 layer.Init(init);
                 layer.bias().value = Uniform(layer.bias().value.shape(), rng);
                 Parameter x{"x", Uniform(Shape{3, 5}, rng)};
                 nn::ParameterRefs params{&x};
                 layer.AppendParameters(params);
                 std::mt19937_64 readout(k + 1);
                 return CheckLoss(
                     [&](Graph& g) {
                       std::mt19937_64 r = readout;
                       return Readout(g, layer.Forward(g, g.Param(x)), r);
                     },
                     params, 0, k);
               }});
  t.push_back({"rnn", [](std::uint64_t k) {
                 std::mt19937_64 rng(k);
                 auto init = nn::MakeRng(k, 2);
                 nn::RnnCell cell("rnn", 3, 6);
                 cell.Init(init);
                 cell.bias().value = Uniform(cell.bias().value.shape(), rng, -0.5, 0.5);
                 std::vector<Parameter> xs;
                 for (int s = 0; s < 4; ++s) {
                   xs.push_back({"x" + std::to_string(s), Uniform(Shape{2, 3}, rng)});
                 }
                 Parameter h0{"h0", Uniform(Shape{2, 6}, rng, -0.5, 0.5)};
                 nn::ParameterRefs params{&h0};
                 for (auto& x : xs) params.push_back(&x);
                 cell.AppendParameters(params);
                 std::mt19937_64 readout(k + 1);
                 return CheckLoss(
                     [&](Graph& g) {
                       std::vector<Var> seq;
                       for (const auto& x : xs) seq.push_back(g.Param(x));
                       const auto enc = cell.Encode(g, seq, g.Param(h0));
                       std::mt19937_64 r = readout;
                       Var loss = Readout(g, enc.final, r);
                       for (const auto& h : enc.hiddens) loss = loss + Readout(g, h, r);
                       return loss;
                     },
                     params, 0, k);
               }});
  t.push_back({"gaussian", [](std::uint64_t k) {
                 std::mt19937_64 rng(k);
                 Parameter mean{"mean", Uniform(Shape{3, 4}, rng)};
                 Parameter log_std{"log_std", Uniform(Shape{4}, rng, -1.5, 0.5)};
                 Parameter noise{"noise", Uniform(Shape{3, 4}, rng, -2, 2)};
                 Parameter action{"action", Uniform(Shape{3, 4}, rng)};
                 nn::ParameterRefs params{&mean, &log_std, &noise, &action};
                 return CheckLoss(
                     [&](Graph& g) {
                       const Var m = g.Param(mean);
                       const Var ls = nn::ClampLogStd(g.Param(log_std));
                       const Var sample = nn::GaussianSample(m, ls, g.Param(noise));
                       return ad::Sum(nn::GaussianLogProb(m, ls, g.Param(action))) +
                              nn::GaussianEntropy(ls, 4) +
                              ad::Sum(nn::SquashedGaussianLogProb(m, ls, sample));
                     },
                     params, 0, k);
               }});
  for (std::size_t n : {1, 3, 6}) {
    t.push_back({"casnet N=" + std::to_string(n), [n](std::uint64_t k) {
                   auto init = nn::MakeRng(k, 3);
                   auto net = policy::MakeActorCritic("casnet", 0, init);
                   std::mt19937_64 rng(k);
                   const Tensor obs = RandomObs(2, n, rng);
                   std::mt19937_64 readout(k + 1);
                   return CheckLoss(
                       [&](Graph& g) {
                         const auto out = net->Forward(g, obs, n);
                         std::mt19937_64 r = readout;
                         return Readout(g, out.means, r) + Readout(g, out.value, r) +
                                Readout(g, out.log_std, r);
                       },
                       net->Parameters(), 6, k);
                 }});
  }
  t.push_back({"casnet critics", [](std::uint64_t k) {
                 auto init = nn::MakeRng(k, 4);
                 auto q = policy::MakeCritic("casnet", 0, true, init);
                 auto v = policy::MakeCritic("casnet", 0, false, init);
                 std::mt19937_64 rng(k);
                 const Tensor obs = RandomObs(2, 3, rng);
                 Parameter action{"action", Uniform(Shape{2, 3}, rng)};
                 nn::ParameterRefs params = q->Parameters();
                 for (auto* p : v->Parameters()) params.push_back(p);
                 params.push_back(&action);
                 std::mt19937_64 readout(k + 1);
                 return CheckLoss(
                     [&](Graph& g) {
                       std::mt19937_64 r = readout;
                       return Readout(g, q->Forward(g, obs, 3, g.Param(action)), r) +
                              Readout(g, v->Forward(g, obs, 3, std::nullopt), r);
                     },
                     params, 6, k);
               }});
  t.push_back({"expert", [](std::uint64_t k) {
                 auto init = nn::MakeRng(k, 5);
                 auto net = policy::MakeActorCritic("expert", 2, init);
                 auto q = policy::MakeCritic("expert", 2, true, init);
                 std::mt19937_64 rng(k);
                 const Tensor obs = RandomObs(2, 2, rng);
                 const Tensor action = Uniform(Shape{2, 2}, rng);
                 nn::ParameterRefs params = net->Parameters();
                 for (auto* p : q->Parameters()) params.push_back(p);
                 std::mt19937_64 readout(k + 1);
                 return CheckLoss(
                     [&](Graph& g) {
                       const auto out = net->Forward(g, obs, 2);
                       std::mt19937_64 r = readout;
                       return Readout(g, out.means, r) + Readout(g, out.value, r) +
                              Readout(g, q->Forward(g, obs, 2, g.Constant(action)), r);
                     },
                     params, 6, k);
               }});
  const std::vector<std::pair<std::string, policy::LeggedMorphology>> robots{
      {"hier 4x2", policy::MakeLeggedRobot("quad", policy::LegLayout::kRadial,
                                           {2, 2, 2, 2})},
      {"hier hexapod", policy::MakeLeggedRobot("hex", policy::LegLayout::kRadial,
                                               {2, 3, 2, 2, 2, 2})}};
  for (const auto& [name, robot] : robots) {
    t.push_back({name, [robot](std::uint64_t k) {
                   policy::HierCasnetPolicy net;
                   auto init = nn::MakeRng(k, 6);
                   net.Init(init);
                   std::mt19937_64 rng(k);
                   const std::size_t j = robot.total_joints();
                   const Tensor js = Uniform(Shape{2, 2 * j}, rng);
                   const Tensor goal = Uniform(Shape{2, 2}, rng);
                   std::mt19937_64 readout(k + 1);
                   return CheckLoss(
                       [&](Graph& g) {
                         const auto out = net.Forward(g, robot, js, goal);
                         std::mt19937_64 r = readout;
                         return Readout(g, out.means, r) + Readout(g, out.value, r) +
                                Readout(g, out.log_std, r);
                       },
                       net.Parameters(), 4, k);
                 }});
  }
  return t;
}

Outcome GradientIntegrity() {
  constexpr int kTrials = 100;
  constexpr double kTol = 1e-5;
  double worst = 0.0;
  std::string worst_name;
  for (const auto& target : GradTargets()) {
    for (int k = 0; k < kTrials; ++k) {
      const double err = target.run(1000 + k);
      if (err > worst) {
        worst = err;
        worst_name = target.name;
      }
    }
  }
  return {worst < kTol,
          Format("max relative error %.2e (%s) over %d parameterizations of "
                 "%zu targets; tol %.0e",
                 worst, worst_name.c_str(), kTrials, GradTargets().size(), kTol)};
}

// ------------------------------------------------------------------ 2

std::vector<double> DoubleSum(const std::vector<double>& r,
                              const std::vector<double>& v,
                              const std::vector<bool>& d, double boot,
                              double gamma, double lambda) {
  const std::size_t n = r.size();
  std::vector<double> delta(n), adv(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const double next = t + 1 < n ? v[t + 1] : boot;
    delta[t] = r[t] + gamma * next * (d[t] ? 0.0 : 1.0) - v[t];
  }
  for (std::size_t t = 0; t < n; ++t) {
    double weight = 1.0;
    for (std::size_t l = t; l < n; ++l) {
      adv[t] += weight * delta[l];
      if (d[l]) break;
      weight *= gamma * lambda;
    }
  }
  return adv;
}

Outcome GaeOracle() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> len(1, 50);
  std::bernoulli_distribution done(0.1);
  const double grid[] = {0.0, 0.5, 0.95, 1.0};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(rng);
    std::vector<double> r(n), v(n);
    std::vector<bool> d(n);
    for (int t = 0; t < n; ++t) {
      r[t] = u(rng);
      v[t] = u(rng);
      d[t] = done(rng);
    }
    const double boot = u(rng);
    for (double gamma : grid) {
      for (double lambda : grid) {
        const auto got = algos::ComputeGae(r, v, d, boot, gamma, lambda);
        const auto want = DoubleSum(r, v, d, boot, gamma, lambda);
        for (int t = 0; t < n; ++t) {
          worst = std::max(worst, std::abs(got.advantages[t] - want[t]));
          worst = std::max(worst, std::abs(got.returns[t] - want[t] - v[t]));
        }
      }
    }
  }
  return {worst <= 1e-12,
          Format("max |recursive - double sum| %.2e over 100 trajectories x 16 "
                 "(gamma, lambda)",
                 worst)};
}

// ------------------------------------------------------------------ 3

double ClipLoss(std::vector<double> r, std::vector<double> a) {
  Graph g;
  return algos::PpoClipLoss(g.Constant(Tensor::Vector(r)),
                            g.Constant(Tensor::Vector(a)), 0.2)
      .value()
      .item();
}

Outcome PpoExactness() {
  const double l1 = ClipLoss({1, 1, 1}, {0.5, -2.0, 3.0});
  const double l2 = ClipLoss({2.0}, {1.0});
  const double l3 = ClipLoss({0.5}, {-1.0});
  const double e = std::max({std::abs(l1 + 0.5), std::abs(l2 + 1.2),
                             std::abs(l3 - 0.8)});

  // Fresh rollout from the current policy, then one update at lr = 0: the
  // ratio on the first minibatch must be exactly one.
  auto rng = nn::MakeRng(3);
  auto net = policy::MakeActorCritic("casnet", 0, rng);
  envs::ReacherEnv env(envs::FindSpec("Reacher_30"), 4);
  env.Reset();
  algos::Trajectory traj;
  traj.num_links = 3;
  std::normal_distribution<double> z;
  for (int t = 0; t < 64; ++t) {
    Tensor obs(Shape{1, envs::FlatObservationSize(3)});
    env.Observation({obs.data(), obs.size()});
    Graph g;
    const auto out = net->Forward(g, obs, 3);
    Tensor action(Shape{1, 3});
    const double sigma = std::exp(out.log_std.value()[0]);
    for (std::size_t i = 0; i < 3; ++i) {
      action[i] = out.means.value()[i] + sigma * z(rng);
    }
    algos::RolloutStep s;
    s.obs.assign(obs.data(), obs.data() + obs.size());
    s.action.assign(action.data(), action.data() + 3);
    s.logp = nn::GaussianLogProb(out.means, out.log_std, g.Constant(action))
                 .value()[0];
    s.value = out.value.value()[0];
    s.reward = env.Step(s.action).reward;
    traj.steps.push_back(std::move(s));
  }
  algos::RolloutBuffer buffer;
  buffer.Add(std::move(traj));
  buffer.Finalize(0.99, 0.95, true);
  algos::PpoConfig config;
  config.lr = 0.0;
  config.epochs = 1;
  config.minibatch = 64;
  algos::Adam opt(0.0);
  const auto stats = algos::PpoUpdate(*net, buffer, config, opt, rng);
  return {e <= 1e-12 && stats.first_ratio_mean == 1.0,
          Format("losses %.15g, %.15g, %.15g (max error %.1e); ratio at "
                 "theta_old %.17g",
                 l1, l2, l3, e, stats.first_ratio_mean)};
}

// ------------------------------------------------------------------ 4

// Critic linear in one observation column: w * obs[:, col].
class LinearCritic final : public policy::Critic {
 public:
  LinearCritic(bool with_action, std::size_t col, double w)
      : with_action_(with_action), col_(col), weight_{"w", Tensor::Vector({w})} {}
  Var Forward(Graph& g, const Tensor& obs, std::size_t,
              std::optional<Var>) const override {
    Tensor column(Shape{obs.rows(), 1});
    for (std::size_t r = 0; r < obs.rows(); ++r) column[r] = obs.at(r, col_);
    return ad::MulRow(g.Constant(column), g.Param(weight_));
  }
  void Init(nn::Rng&) override {}
  nn::ParameterRefs Parameters() override { return {&weight_}; }
  nn::ConstParameterRefs Parameters() const override { return {&weight_}; }
  std::unique_ptr<policy::Critic> Clone() const override {
    return std::make_unique<LinearCritic>(*this);
  }
  bool takes_action() const override { return with_action_; }

 private:
  bool with_action_;
  std::size_t col_;
  Parameter weight_;
};

Outcome SacExactness() {
  std::vector<std::string> failures;

  // Bellman fixed point: rewards chosen so Q(s, a) = r + gamma V_t(s').
  std::mt19937_64 rng(4);
  algos::SacBatch b;
  b.num_links = 1;
  b.obs = Uniform(Shape{32, 5}, rng);
  b.next_obs = Uniform(Shape{32, 5}, rng);
  b.action = Uniform(Shape{32, 1}, rng);
  b.reward = Tensor(Shape{32, 1});
  b.done = Tensor(Shape{32, 1});
  const double gamma = 0.9;
  for (std::size_t r = 0; r < 32; ++r) {
    b.done[r] = r % 5 == 0 ? 1.0 : 0.0;
    b.reward[r] = 2.0 * b.obs.at(r, 0) -
                  gamma * (1.0 - b.done[r]) * (-1.5) * b.next_obs.at(r, 1);
  }
  const LinearCritic q(true, 0, 2.0), vt(false, 1, -1.5);
  Graph g;
  const double q_loss = algos::SacQLoss(g, q, b, vt, gamma).value().item();
  if (q_loss > 1e-30) failures.push_back(Format("q loss %.3g", q_loss));

  // Polyak at tau 0, 0.5, 1.
  const Tensor src = Uniform(Shape{4, 3}, rng), tgt = Uniform(Shape{4, 3}, rng);
  for (double tau : {0.0, 0.5, 1.0}) {
    Parameter target{"t", tgt};
    const Parameter source{"s", src};
    algos::PolyakUpdate({&target}, {&source}, tau);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double want = tau == 0.0   ? tgt[i]
                          : tau == 1.0 ? src[i]
                                       : 0.5 * src[i] + 0.5 * tgt[i];
      if (target.value[i] != want) {
        failures.push_back(Format("polyak tau %.1f", tau));
        break;
      }
    }
  }

  // Clipped double-Q: the value target never exceeds either critic.
  auto init = nn::MakeRng(5);
  auto nets = algos::SacNets::Make("casnet", 2, init);
  const Tensor obs = RandomObs(1000, 2, rng);
  std::normal_distribution<double> z;
  Tensor noise(Shape{1000, 2});
  for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = z(rng);
  Graph g2;
  const auto sample = algos::SampleSquashed(g2, *nets.policy, obs, 2, noise);
  const Tensor q1 = nets.q1->Forward(g2, obs, 2, sample.action).value();
  const Tensor q2 = nets.q2->Forward(g2, obs, 2, sample.action).value();
  const Tensor m = ad::Minimum(g2.Constant(q1), g2.Constant(q2)).value();
  const Tensor v = nets.value->Forward(g2, obs, 2, std::nullopt).value();
  int violations = 0;
  double v_loss = 0.0;
  const double alpha = 0.2;
  for (std::size_t i = 0; i < 1000; ++i) {
    if (!(m[i] <= q1[i] && m[i] <= q2[i] && (m[i] == q1[i] || m[i] == q2[i]))) {
      ++violations;
    }
    const double target = m[i] - alpha * sample.logp.value()[i];
    v_loss += (v[i] - target) * (v[i] - target) / 1000.0;
  }
  Graph g3;
  const double lib_v_loss = algos::SacVLoss(g3, *nets.value, *nets.q1, *nets.q2,
                                            *nets.policy, obs, 2, alpha, noise)
                                .value()
                                .item();
  if (violations > 0) failures.push_back(Format("%d min violations", violations));
  if (std::abs(lib_v_loss - v_loss) > 1e-12 * std::max(1.0, v_loss)) {
    failures.push_back(Format("v loss %.17g vs %.17g", lib_v_loss, v_loss));
  }
  std::string detail = Format(
      "q loss at fixed point %.1e; polyak exact for tau 0/0.5/1; min(Q1, Q2) "
      "dominance on 1000 outputs; V target uses the minimum",
      q_loss);
  for (const auto& f : failures) detail += "; FAILED " + f;
  return {failures.empty(), detail};
}

// ------------------------------------------------------------------ 5

Outcome EnvConformance() {
  const std::map<std::string, std::vector<double>> table = {
      {"Reacher_10", {0.1}},
      {"Reacher_11", {0.15}},
      {"Reacher_12", {0.09}},
      {"Reacher_20", {0.12, 0.12}},
      {"Reacher_21", {0.09, 0.14}},
      {"Reacher_22", {0.13, 0.15}},
      {"Reacher_30", {0.15, 0.17, 0.09}},
      {"Reacher_31", {0.08, 0.11, 0.12}},
      {"Reacher_32", {0.1, 0.1, 0.15}},
      {"Reacher_40", {0.1, 0.16, 0.13, 0.09}},
      {"Reacher_41", {0.13, 0.14, 0.07, 0.07}},
      {"Reacher_42", {0.08, 0.15, 0.09, 0.11}},
      {"Reacher_50", {0.1, 0.1, 0.1, 0.1, 0.1}},
      {"Reacher_51", {0.15, 0.08, 0.09, 0.11, 0.13}},
      {"Reacher_52", {0.1, 0.09, 0.12, 0.1, 0.14}},
      {"Reacher_60", {0.1, 0.08, 0.15, 0.15, 0.1, 0.09}},
      {"Reacher_61", {0.08, 0.09, 0.07, 0.13, 0.14, 0.07}},
      {"Reacher_62", {0.1, 0.12, 0.08, 0.13, 0.07, 0.14}},
  };
  const std::vector<std::string> train{"Reacher_10", "Reacher_20",
                                       "Reacher_30", "Reacher_40",
                                       "Reacher_50"};
  std::vector<std::string> failures;
  const auto& reg = envs::Registry();
  if (reg.size() != 18) failures.push_back("registry size");
  int marked = 0;
  for (const auto& spec : reg) {
    const auto it = table.find(spec.name);
    if (it == table.end() || it->second != spec.link_lengths) {
      failures.push_back("lengths of " + spec.name);
    }
    const bool want_train =
        std::find(train.begin(), train.end(), spec.name) != train.end();
    if (spec.train_member != want_train) failures.push_back("train mark " + spec.name);
    marked += spec.train_member;
  }
  if (marked != 5) failures.push_back("train count");

  // FK: straight arm along +x; folded two-link arm; quarter turn.
  for (const auto& spec : reg) {
    const std::vector<double> zero(spec.num_links(), 0.0);
    double sum = 0.0;
    for (double l : spec.link_lengths) sum += l;
    const envs::Vec2 tip = envs::ForwardKinematics(zero, spec.link_lengths);
    if (tip.x != sum || tip.y != 0.0) failures.push_back("fk straight " + spec.name);
  }
  const std::vector<double> two{0.12, 0.12};
  const envs::Vec2 folded =
      envs::ForwardKinematics(std::vector<double>{0.0, std::numbers::pi}, two);
  if (std::abs(folded.x) > 1e-16 || std::abs(folded.y) > 1e-16) {
    failures.push_back("fk folded");
  }
  const envs::Vec2 up = envs::ForwardKinematics(
      std::vector<double>{std::numbers::pi / 2}, std::vector<double>{0.1});
  if (std::abs(up.x) > 1e-17 || up.y != 0.1) failures.push_back("fk quarter");

  // Goals inside the reachable annulus.
  int outside = 0;
  auto rng = nn::MakeRng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto& spec = reg[i % reg.size()];
    const auto a = envs::ReachableAnnulus(spec.link_lengths);
    const double r = envs::Norm(envs::SampleGoal(spec, rng));
    if (r < a.r_min - 1e-12 || r > a.r_max + 1e-12) ++outside;
  }
  if (outside > 0) failures.push_back(Format("%d goals outside", outside));

  // Byte-exact full episodes.
  auto run = [](const envs::ReacherSpec& spec, std::uint64_t seed) {
    envs::ReacherEnv env(spec, seed);
    std::mt19937_64 actions(seed + 1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<double> trace;
    env.Reset();
    std::vector<double> obs(envs::FlatObservationSize(spec.num_links()));
    while (!env.done()) {
      std::vector<double> a(spec.num_links());
      for (double& v : a) v = u(actions);
      trace.push_back(env.Step(a).reward);
      env.Observation(obs);
      trace.insert(trace.end(), obs.begin(), obs.end());
    }
    return trace;
  };
  for (const auto& spec : reg) {
    const auto a = run(spec, 17), b = run(spec, 17);
    if (a.size() != b.size() ||
        std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) != 0) {
      failures.push_back("determinism " + spec.name);
    }
  }
  std::string detail =
      "18 specs match the table, 5 train-marked; FK exact; 10^4 goals in "
      "annulus; 18 episodes byte-identical on rerun";
  if (!failures.empty()) {
    detail = "failed:";
    for (const auto& f : failures) detail += " " + f + ";";
  }
  return {failures.empty(), detail};
}

// ----------------------------------------------------------------- 6, 8

// Trains seeds 1..3 on Reacher_10 until the target distance is met or the
// budget runs out; at least two seeds must reach it.
Outcome ReachSmoke(const harness::TrainConfig& base, const std::string& tag) {
  int passed = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    harness::TrainConfig c = base;
    c.run.seed = seed;
    const fs::path dir = ScratchDir(tag + std::to_string(seed));
    const auto start = std::chrono::steady_clock::now();
    const auto r = harness::Train(c, dir);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    double best = r.rows.empty() ? NAN : r.rows.back().mean_final_distance;
    // Re-evaluation under a different seed; a fixed-goal run keeps its goal.
    const auto cp = harness::LoadCheckpoint(r.final_checkpoint);
    const auto check = harness::EvalCheckpoint(
        cp, envs::FindSpec("Reacher_10"), c.run.eval_episodes, 1000 + seed);
    passed += r.reached_target;
    detail += Format("%sseed %llu: %.4f m at %lld steps (%.0f s, "
                     "re-evaluation %.4f m)",
                     seed == 1 ? "" : "; ", static_cast<unsigned long long>(seed),
                     best, static_cast<long long>(r.env_steps), secs,
                     check.mean_final_distance);
    fs::remove_all(dir);
  }
  return {passed >= 2, Format("%d/3 seeds reach <= %.2f m; ", passed,
                              base.run.target_distance) +
                           detail};
}

Outcome ExpertSmoke() {
  harness::TrainConfig c;
  c.run.policy = "expert";
  c.run.envs = {"Reacher_10"};
  c.run.total_env_steps = 500000;
  c.run.eval_interval = 20000;
  c.run.eval_episodes = 20;
  c.run.target_distance = 0.05;
  c.run.checkpoint_every = 1000000;
  return ReachSmoke(c, "c6_");
}

Outcome SacSmoke() {
  harness::TrainConfig c;
  c.run.algo = "sac";
  c.run.policy = "casnet";
  c.run.envs = {"Reacher_10"};
  c.run.total_env_steps = 200000;
  c.run.eval_interval = 10000;
  c.run.eval_episodes = 20;
  c.run.target_distance = 0.05;
  c.run.checkpoint_every = 1000000;
  c.sac.fixed_goal = true;
  return ReachSmoke(c, "c8_");
}

// ------------------------------------------------------------------ 7

Outcome GeneralSmoke() {
  harness::TrainConfig base;
  base.run.eval_episodes = 20;
  base.run.eval_interval = 100000;
  base.run.checkpoint_every = 1000000;
  base.run.seed = 1;

  const fs::path dir = ScratchDir("c7");
  harness::TrainConfig general = base;
  general.run.total_env_steps = 2000000;
  const auto g = harness::TrainGeneral(general, dir / "general");
  const auto general_cp = harness::LoadCheckpoint(g.final_checkpoint);

  const std::vector<std::string> test_envs{"Reacher_11", "Reacher_12",
                                           "Reacher_21"};
  const std::uint64_t eval_seeds[] = {101, 102, 103};
  int passed = 0;
  std::string detail;
  for (const auto& name : test_envs) {
    const auto& spec = envs::FindSpec(name);
    harness::TrainConfig expert = base;
    expert.run.total_env_steps = 500000;
    const auto e = harness::TrainExpert(name, expert, dir / ("expert_" + name));
    const auto expert_cp = harness::LoadCheckpoint(e.final_checkpoint);
    double score = 0.0;
    for (std::uint64_t s : eval_seeds) {
      const auto rg = harness::EvalCheckpoint(general_cp, spec, 20, s);
      const auto re = harness::EvalCheckpoint(expert_cp, spec, 20, s);
      const auto rr = harness::RandomBaseline(spec, 5, 20, s);
      score += harness::NormalizedScore(rg.mean_return, rr.mean_return,
                                        re.mean_return) /
               3.0;
    }
    passed += score >= 50.0;
    detail += Format("%s%s %.1f%%", detail.empty() ? "" : ", ", name.c_str(),
                     score);
  }
  fs::remove_all(dir);
  return {passed >= 2,
          Format("%d/3 test envs score >= 50%% (", passed) + detail + ")"};
}

// ------------------------------------------------------------------ 9

Outcome Determinism() {
  std::vector<std::string> failures;
  const fs::path dir = ScratchDir("c9");

  harness::Checkpoint cp;
  cp.algo = "ppo";
  cp.seed = 9;
  auto rng = nn::MakeRng(9);
  auto net = policy::MakeActorCritic("casnet", 0, rng);
  harness::AppendTensors(cp, std::as_const(*net).Parameters(), "");
  harness::SaveCheckpoint(cp, dir / "a.ckpt");
  const auto loaded = harness::LoadCheckpoint(dir / "a.ckpt");
  harness::SaveCheckpoint(loaded, dir / "b.ckpt");
  if (!(loaded == cp)) failures.push_back("checkpoint contents");
  if (harness::ReadTextFile(dir / "a.ckpt") != harness::ReadTextFile(dir / "b.ckpt")) {
    failures.push_back("checkpoint bytes");
  }

  for (const char* algo : {"ppo", "sac"}) {
    harness::TrainConfig c;
    c.run.algo = algo;
    c.run.envs = {"Reacher_10", "Reacher_21"};
    c.run.seed = 9;
    c.run.total_env_steps = 4096;
    c.run.eval_interval = 1024;
    c.run.eval_episodes = 2;
    c.ppo.rollout_len = 1024;
    c.ppo.epochs = 2;
    c.sac.warmup_steps = 500;
    c.sac.batch_size = 32;
    const std::string a = std::string(algo) + "_a", b = std::string(algo) + "_b";
    harness::Train(c, dir / a);
    harness::Train(c, dir / b);
    if (harness::ReadTextFile(dir / a / "metrics.csv") !=
        harness::ReadTextFile(dir / b / "metrics.csv")) {
      failures.push_back(std::string(algo) + " metrics");
    }
    if (harness::ReadTextFile(dir / a / "final.ckpt") !=
        harness::ReadTextFile(dir / b / "final.ckpt")) {
      failures.push_back(std::string(algo) + " final checkpoint");
    }
  }
  fs::remove_all(dir);
  std::string detail =
      "save/load/save byte-identical; PPO and SAC reruns give identical "
      "metrics.csv and final.ckpt";
  if (!failures.empty()) {
    detail = "differs:";
    for (const auto& f : failures) detail += " " + f + ";";
  }
  return {failures.empty(), detail};
}

// ----------------------------------------------------------------- 10

Outcome ParamCountInvariance() {
  std::vector<std::string> failures;
  auto rng = nn::MakeRng(10);
  auto net = policy::MakeActorCritic("casnet", 0, rng);
  const std::size_t flat = net->ParamCount();
  std::mt19937_64 data(10);
  for (const auto& spec : envs::Registry()) {
    Graph g;
    const std::size_t n = spec.num_links();
    const auto out = net->Forward(g, RandomObs(1, n, data), n);
    if (out.means.value().cols() != n) failures.push_back("width " + spec.name);
    if (net->ParamCount() != flat) failures.push_back("count " + spec.name);
    auto fresh_rng = nn::MakeRng(10);
    if (policy::MakeActorCritic("casnet", n, fresh_rng)->ParamCount() != flat) {
      failures.push_back("fresh " + spec.name);
    }
  }

  policy::HierCasnetPolicy hier;
  hier.Init(rng);
  const std::size_t hier_count = hier.ParamCount();
  std::vector<policy::LeggedMorphology> robots = policy::LeggedCatalog();
  using policy::LegLayout;
  robots.push_back(policy::MakeLeggedRobot("q2", LegLayout::kRadial, {2, 2, 2, 2}));
  robots.push_back(policy::MakeLeggedRobot("q3", LegLayout::kRadial, {3, 3, 3, 3}));
  robots.push_back(policy::MakeLeggedRobot("q23", LegLayout::kLine, {2, 3, 3, 2}));
  robots.push_back(policy::MakeLeggedRobot("h2", LegLayout::kRadial, {2, 2, 2, 2, 2, 2}));
  robots.push_back(policy::MakeLeggedRobot("h3", LegLayout::kLine, {3, 3, 3, 3, 3, 3}));
  robots.push_back(policy::MakeLeggedRobot("h23", LegLayout::kRadial, {2, 3, 2, 2, 2, 2}));
  for (const auto& m : robots) {
    Graph g;
    const std::size_t j = m.total_joints();
    const auto out = hier.Forward(g, m, Uniform(Shape{1, 2 * j}, data),
                                  Uniform(Shape{1, 2}, data));
    if (out.means.value().cols() != j) failures.push_back("hier width " + m.name);
    if (hier.ParamCount() != hier_count) failures.push_back("hier count " + m.name);
  }
  std::string detail = Format(
      "flat CASNET %zu parameters on all 18 specs; hierarchical %zu on %zu "
      "legged morphologies",
      flat, hier_count, robots.size());
  if (!failures.empty()) {
    detail = "failed:";
    for (const auto& f : failures) detail += " " + f + ";";
  }
  return {failures.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  bool long_running;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace casnet

int main(int argc, char** argv) {
  using namespace casnet;
  bool run_long = false;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--long") {
      run_long = true;
    } else if (arg.rfind("--only=", 0) == 0) {
      only.push_back(std::stoi(arg.substr(7)));
    } else {
      std::fprintf(stderr, "usage: %s [--long] [--only=N]...\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "gradient integrity", false, GradientIntegrity},
      {2, "GAE oracle equivalence", false, GaeOracle},
      {3, "PPO loss exactness", false, PpoExactness},
      {4, "SAC loss exactness", false, SacExactness},
      {5, "environment conformance", false, EnvConformance},
      {6, "single-env PPO expert smoke", false, ExpertSmoke},
      {7, "general-policy PPO smoke", true, GeneralSmoke},
      {8, "SAC fixed-goal smoke", true, SacSmoke},
      {9, "checkpoint and determinism", false, Determinism},
      {10, "parameter-count invariance", false, ParamCountInvariance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    if (c.long_running && !run_long) {
      std::printf("SKIP criterion %d: %s (long-running; pass --long)\n", c.id,
                  c.name);
      std::fflush(stdout);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    failed += !o.pass;
    std::printf("%s criterion %d: %s — %s [%.1f s]\n", o.pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
