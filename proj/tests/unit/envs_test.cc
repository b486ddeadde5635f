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
#include <cmath>
#include <algorithm>
#include <cstring>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "casnet/envs/reacher.h"
#include "casnet/envs/registry.h"
#include "casnet/errors.h"

namespace casnet::envs {
namespace {

constexpr double kPi = std::numbers::pi;

// Reference table of reacher models, with the two malformed first lengths
// ("0.8" and "0.0.8") read as 0.08.
const std::map<std::string, std::vector<double>>& ReferenceTable() {
  static const std::map<std::string, std::vector<double>> table = {
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
  return table;
}

TEST(RegistryTest, MatchesReferenceTable) {
  const auto& specs = Registry();
  ASSERT_EQ(specs.size(), 18u);
  std::set<std::string> names;
  for (const auto& s : specs) {
    names.insert(s.name);
    ASSERT_TRUE(ReferenceTable().count(s.name)) << s.name;
    EXPECT_EQ(s.link_lengths, ReferenceTable().at(s.name)) << s.name;
    EXPECT_GE(s.num_links(), 1u);
    EXPECT_LE(s.num_links(), 6u);
    for (double l : s.link_lengths) {
      EXPECT_GT(l, 0.0);
      EXPECT_LE(l, 0.2);
    }
  }
  EXPECT_EQ(names.size(), 18u);
}

TEST(RegistryTest, TrainSetIsTheStarredRows) {
  std::vector<std::string> train;
  for (const auto& s : TrainSet()) train.push_back(s.name);
  EXPECT_EQ(train, (std::vector<std::string>{"Reacher_10", "Reacher_20",
                                             "Reacher_30", "Reacher_40",
                                             "Reacher_50"}));
  EXPECT_EQ(TestSet().size(), 13u);
}

TEST(RegistryTest, PublishedExamples) {
  const auto& r20 = FindSpec("Reacher_20");
  EXPECT_EQ(r20.link_lengths, (std::vector<double>{0.12, 0.12}));
  EXPECT_TRUE(r20.train_member);
  const auto& r51 = FindSpec("Reacher_51");
  EXPECT_EQ(r51.link_lengths,
            (std::vector<double>{0.15, 0.08, 0.09, 0.11, 0.13}));
  EXPECT_FALSE(r51.train_member);
}

TEST(RegistryTest, UnknownNameIsLookupError) {
  EXPECT_THROW(FindSpec("Reacher_99"), LookupError);
  EXPECT_THROW(SpecIndex(""), LookupError);
}

TEST(RegistryTest, CsvExport) {
  const std::string csv = RegistryCsv();
  EXPECT_EQ(csv.rfind("name,n_links,lengths,train_member\n", 0), 0u);
  EXPECT_NE(csv.find("\nReacher_20,2,0.12;0.12,true\n"), std::string::npos);
  EXPECT_NE(csv.find("\nReacher_61,6,0.08;0.09;0.07;0.13;0.14;0.07,false\n"),
            std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 19);
}

TEST(KinematicsTest, TrivialConfigurations) {
  const std::vector<double> l{0.12, 0.12};
  const Vec2 straight = ForwardKinematics(std::vector<double>{0, 0}, l);
  EXPECT_DOUBLE_EQ(straight.x, 0.24);
  EXPECT_DOUBLE_EQ(straight.y, 0.0);
  const Vec2 up = ForwardKinematics(std::vector<double>{kPi / 2, 0}, l);
  EXPECT_NEAR(up.x, 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(up.y, 0.24);
  // Relative angles: the second joint folds back onto the first link.
  const Vec2 folded = ForwardKinematics(std::vector<double>{0, kPi}, l);
  EXPECT_NEAR(folded.x, 0.0, 1e-16);
}

TEST(KinematicsTest, CountMismatchIsShapeError) {
  EXPECT_THROW(ForwardKinematics(std::vector<double>{0},
                                 std::vector<double>{0.1, 0.1}),
               ShapeError);
}

TEST(KinematicsTest, FingertipWithinTotalLength) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-10, 10);
  for (const auto& spec : Registry()) {
    double total = 0.0;
    for (double l : spec.link_lengths) total += l;
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> q(spec.num_links());
      for (double& a : q) a = angle(rng);
      EXPECT_LE(Norm(ForwardKinematics(q, spec.link_lengths)), total + 1e-12);
    }
  }
}

TEST(AnnulusTest, ClosedForms) {
  const Annulus one = ReachableAnnulus(std::vector<double>{0.1});
  EXPECT_DOUBLE_EQ(one.r_min, 0.1);
  EXPECT_DOUBLE_EQ(one.r_max, 0.1);
  const Annulus eq = ReachableAnnulus(std::vector<double>{0.12, 0.12});
  EXPECT_DOUBLE_EQ(eq.r_min, 0.0);
  EXPECT_DOUBLE_EQ(eq.r_max, 0.24);
  const Annulus uneq = ReachableAnnulus(std::vector<double>{0.15, 0.08});
  EXPECT_NEAR(uneq.r_min, 0.07, 1e-15);
  EXPECT_NEAR(uneq.r_max, 0.23, 1e-15);
}

TEST(AnnulusTest, DenseGridConfirmsTwoLinkRadii) {
  const std::vector<double> l{0.15, 0.08};
  double lo = 1e9, hi = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double q2 = -kPi + 2 * kPi * i / 20000.0;
    const double r = Norm(ForwardKinematics(std::vector<double>{0.3, q2}, l));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const Annulus a = ReachableAnnulus(l);
  EXPECT_NEAR(lo, a.r_min, 1e-3);
  EXPECT_NEAR(hi, a.r_max, 1e-3);
}

TEST(ResetTest, InitialStateAndGoalSampling) {
  std::mt19937_64 rng(2);
  for (const auto& spec : Registry()) {
    const Annulus a = ReachableAnnulus(spec.link_lengths);
    for (int i = 0; i < 10000 / 18 + 1; ++i) {
      const EnvState s = Reset(spec, rng);
      ASSERT_EQ(s.angles, std::vector<double>(spec.num_links(), 0.0));
      ASSERT_EQ(s.velocities, std::vector<double>(spec.num_links(), 0.0));
      ASSERT_EQ(s.t, 0);
      const double r = Norm(s.goal);
      ASSERT_GE(r, a.r_min - 1e-9) << spec.name;
      ASSERT_LE(r, a.r_max + 1e-9) << spec.name;
    }
  }
}

TEST(ResetTest, TenThousandGoalsInAnnulus) {
  const auto& spec = FindSpec("Reacher_51");
  const Annulus a = ReachableAnnulus(spec.link_lengths);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double r = Norm(SampleGoal(spec, rng));
    ASSERT_GE(r, a.r_min - 1e-9);
    ASSERT_LE(r, a.r_max + 1e-9);
  }
}

TEST(ResetTest, GoalsAreAreaUniform) {
  // For area-uniform sampling the fraction inside radius r is
  // (r^2 - r_min^2) / (r_max^2 - r_min^2).
  const auto& spec = FindSpec("Reacher_21");
  const Annulus a = ReachableAnnulus(spec.link_lengths);
  const double mid = 0.5 * (a.r_min + a.r_max);
  const double expected = (mid * mid - a.r_min * a.r_min) /
                          (a.r_max * a.r_max - a.r_min * a.r_min);
  std::mt19937_64 rng(4);
  const int n = 100000;
  int inside = 0;
  for (int i = 0; i < n; ++i) inside += Norm(SampleGoal(spec, rng)) < mid;
  EXPECT_NEAR(static_cast<double>(inside) / n, expected, 0.01);
}

TEST(ResetTest, InitialFingertipIsStraightOut) {
  std::mt19937_64 rng(5);
  const auto& spec = FindSpec("Reacher_30");
  const EnvState s = Reset(spec, rng);
  const Vec2 tip = ForwardKinematics(s.angles, spec.link_lengths);
  EXPECT_NEAR(tip.x, 0.15 + 0.17 + 0.09, 1e-15);
  EXPECT_EQ(tip.y, 0.0);
}

TEST(ResetTest, SameSeedSameGoal) {
  const auto& spec = FindSpec("Reacher_40");
  std::mt19937_64 a(9), b(9);
  EXPECT_EQ(Reset(spec, a), Reset(spec, b));
}

TEST(StepTest, AtGoalWithZeroActionRewardIsZero) {
  const auto& spec = FindSpec("Reacher_20");
  EnvState s;
  s.angles = {0.3, -0.2};
  s.velocities = {0, 0};
  s.goal = ForwardKinematics(s.angles, spec.link_lengths);
  const auto [next, result] = Step(s, std::vector<double>{0, 0}, spec);
  EXPECT_EQ(result.reward, 0.0);
  EXPECT_EQ(next.angles, s.angles);
}

TEST(StepTest, ZeroActionFromRestOnlyAdvancesTime) {
  const auto& spec = FindSpec("Reacher_30");
  std::mt19937_64 rng(6);
  const EnvState s = Reset(spec, rng);
  const auto [next, result] = Step(s, std::vector<double>(3, 0.0), spec);
  EXPECT_EQ(next.angles, s.angles);
  EXPECT_EQ(next.velocities, s.velocities);
  EXPECT_EQ(next.goal, s.goal);
  EXPECT_EQ(next.t, 1);
}

TEST(StepTest, OneTorqueStepOnReacher10) {
  const auto& spec = FindSpec("Reacher_10");
  EnvState s;
  s.angles = {0.0};
  s.velocities = {0.0};
  s.goal = {0.0, 0.1};
  const auto [next, result] = Step(s, std::vector<double>{1.0}, spec);
  const double inertia = 0.1 * 0.1 / 3.0;
  const double v = 0.02 * 1.0 / inertia;  // 6 rad/s
  EXPECT_NEAR(next.velocities[0], v, 1e-12);
  EXPECT_NEAR(next.velocities[0], 6.0, 1e-12);
  EXPECT_NEAR(next.angles[0], 0.02 * v, 1e-14);
  const double dist = std::hypot(0.1 * std::cos(0.12), 0.1 * std::sin(0.12) - 0.1);
  EXPECT_NEAR(result.reward, -(dist + 0.1 * 1.0), 1e-14);
}

TEST(StepTest, DampingDecaysVelocityWithoutTorque) {
  const auto& spec = FindSpec("Reacher_11");
  EnvState s;
  s.angles = {0.0};
  s.velocities = {2.0};
  s.goal = {0.15, 0.0};
  const auto [next, result] = Step(s, std::vector<double>{0.0}, spec);
  const double inertia = 0.15 * 0.15 / 3.0;
  const double v = 2.0 * std::exp(-0.5 * 0.02 / inertia);
  EXPECT_NEAR(next.velocities[0], v, 1e-14);
  EXPECT_NEAR(next.angles[0], 0.02 * v, 1e-15);
  EXPECT_LT(std::abs(next.velocities[0]), 2.0);
}

TEST(StepTest, VelocityIsClamped) {
  const auto& spec = FindSpec("Reacher_12");
  EnvState s;
  s.angles = {0.0};
  s.velocities = {7.9};
  s.goal = {0.09, 0.0};
  auto [next, r] = Step(s, std::vector<double>{1.0}, spec);
  EXPECT_LE(next.velocities[0], kMaxVelocity);
  for (int i = 0; i < 20; ++i) {
    auto [n2, r2] = Step(next, std::vector<double>{1.0}, spec);
    next = n2;
    EXPECT_LE(std::abs(next.velocities[0]), kMaxVelocity);
  }
}

TEST(StepTest, ActionsAreClampIdempotent) {
  const auto& spec = FindSpec("Reacher_31");
  std::mt19937_64 rng(7);
  const EnvState s = Reset(spec, rng);
  const auto a = Step(s, std::vector<double>{3.0, -7.0, 0.4}, spec);
  const auto b = Step(s, std::vector<double>{1.0, -1.0, 0.4}, spec);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second.reward, b.second.reward);
}

TEST(StepTest, ErrorsOnBadActionAndAfterDone) {
  const auto& spec = FindSpec("Reacher_20");
  std::mt19937_64 rng(8);
  EnvState s = Reset(spec, rng);
  EXPECT_THROW(Step(s, std::vector<double>{0.0}, spec), ShapeError);
  for (int t = 0; t < kEpisodeLength; ++t) {
    auto [next, result] = Step(s, std::vector<double>{0.1, -0.1}, spec);
    EXPECT_EQ(result.done, t == kEpisodeLength - 1);
    s = next;
  }
  EXPECT_EQ(s.t, 100);
  EXPECT_THROW(Step(s, std::vector<double>{0.0, 0.0}, spec), ProtocolError);
}

TEST(StepTest, RewardNeverPositive) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& spec : Registry()) {
    EnvState s = Reset(spec, rng);
    for (int t = 0; t < kEpisodeLength; ++t) {
      std::vector<double> a(spec.num_links());
      for (double& v : a) v = u(rng);
      auto [next, result] = Step(s, a, spec);
      ASSERT_LE(result.reward, 0.0);
      s = next;
    }
  }
}

TEST(ObserveTest, PairsFollowSpecOrder) {
  std::mt19937_64 rng(10);
  const auto& r20 = FindSpec("Reacher_20");
  const auto obs = Observe(Reset(r20, rng), r20);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0], (PairObservation{0, 0, 0.12}));
  EXPECT_EQ(obs[1], (PairObservation{0, 0, 0.12}));
  for (const auto& spec : Registry()) {
    EnvState s = Reset(spec, rng);
    for (std::size_t i = 0; i < spec.num_links(); ++i) {
      s.angles[i] = 0.1 * i;
      s.velocities[i] = -0.2 * i;
    }
    const auto pairs = Observe(s, spec);
    ASSERT_EQ(pairs.size(), spec.num_links());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_EQ(pairs[i].joint_pos, s.angles[i]);
      EXPECT_EQ(pairs[i].joint_vel, s.velocities[i]);
      EXPECT_EQ(pairs[i].link_length, spec.link_lengths[i]);
    }
  }
}

TEST(ObserveTest, FlatLayout) {
  const auto& spec = FindSpec("Reacher_21");
  EnvState s;
  s.angles = {0.5, -0.25};
  s.velocities = {1.0, 2.0};
  s.goal = {0.03, -0.04};
  EXPECT_EQ(FlatObservationSize(2), 8u);
  std::vector<double> out(8);
  FlattenObservation(s, spec, out);
  EXPECT_EQ(out, (std::vector<double>{0.5, 1.0, 0.09, -0.25, 2.0, 0.14, 0.03,
                                      -0.04}));
}

TEST(EnvTest, EpisodeIsDeterministicBytewise) {
  auto run = [](std::uint64_t seed) {
    ReacherEnv env(FindSpec("Reacher_52"), seed);
    std::mt19937_64 actions(seed + 1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<double> trace;
    for (int ep = 0; ep < 2; ++ep) {
      env.Reset();
      while (!env.done()) {
        std::vector<double> a(5);
        for (double& v : a) v = u(actions);
        const StepResult r = env.Step(a);
        trace.push_back(r.reward);
        for (const auto& p : r.observation) {
          trace.push_back(p.joint_pos);
          trace.push_back(p.joint_vel);
        }
      }
    }
    return trace;
  };
  const auto a = run(17), b = run(17);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
  EXPECT_NE(run(18), a);
}

TEST(EnvTest, EpisodeHasExactlyHundredSteps) {
  ReacherEnv env(FindSpec("Reacher_10"), 1);
  int steps = 0;
  while (!env.done()) {
    env.Step(std::vector<double>{0.5});
    ++steps;
  }
  EXPECT_EQ(steps, 100);
  EXPECT_THROW(env.Step(std::vector<double>{0.0}), ProtocolError);
  env.Reset();
  EXPECT_FALSE(env.done());
}

TEST(EnvTest, FixedGoalPinsEveryEpisode) {
  const Vec2 goal{0.05, -0.02};
  ReacherEnv env(FindSpec("Reacher_20"), 3, goal);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(env.Reset().goal, goal);
}

TEST(EnvTest, RandomPolicyMeanChordOnReacher10) {
  // With the fingertip and the goal independent and uniform on the 0.1 m
  // circle, the mean distance is the mean chord 4 r / pi.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const auto& spec = FindSpec("Reacher_10");
  const int n = 200000;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 tip = ForwardKinematics(std::vector<double>{angle(rng)},
                                       spec.link_lengths);
    total += Distance(tip, SampleGoal(spec, rng));
  }
  EXPECT_NEAR(total / n, 4 * 0.1 / kPi, 1e-3);
  EXPECT_NEAR(4 * 0.1 / kPi, 0.127, 5e-4);
}

}  // namespace
}  // namespace casnet::envs
