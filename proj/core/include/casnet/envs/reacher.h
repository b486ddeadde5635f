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
#ifndef CASNET_ENVS_REACHER_H_
#define CASNET_ENVS_REACHER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "casnet/envs/registry.h"
#include "casnet/nn/init.h"

namespace casnet::envs {

// Fixed physical constants of the reacher family.
inline constexpr double kDt = 0.02;             // s
inline constexpr double kMaxTorque = 1.0;       // N m
inline constexpr double kDamping = 0.5;         // N m s
inline constexpr double kLinkMass = 1.0;        // inertia scale, I = m l^2 / 3
inline constexpr double kMaxVelocity = 8.0;     // rad/s
inline constexpr double kTorqueWeight = 0.1;
inline constexpr int kEpisodeLength = 100;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double Norm(Vec2 v);
double Distance(Vec2 a, Vec2 b);

struct EnvState {
  std::vector<double> angles;      // rad, relative joint angles
  std::vector<double> velocities;  // rad/s
  Vec2 goal;                       // m, base frame
  int t = 0;
  friend bool operator==(const EnvState&, const EnvState&) = default;
};

struct PairObservation {
  double joint_pos = 0.0;
  double joint_vel = 0.0;
  double link_length = 0.0;
  friend bool operator==(const PairObservation&,
                         const PairObservation&) = default;
};

struct StepResult {
  std::vector<PairObservation> observation;
  double reward = 0.0;
  bool done = false;
};

struct Annulus {
  double r_min = 0.0;
  double r_max = 0.0;
};

// Fingertip position of a planar chain. Throws ShapeError on count mismatch.
Vec2 ForwardKinematics(std::span<const double> angles,
                       std::span<const double> lengths);

// Attainable fingertip radii with unlimited revolute joints.
Annulus ReachableAnnulus(std::span<const double> lengths);

// Goal drawn uniformly by area over the reachable annulus.
Vec2 SampleGoal(const ReacherSpec& spec, nn::Rng& rng);

// Arm straight along +x at rest, t = 0, fresh goal.
EnvState Reset(const ReacherSpec& spec, nn::Rng& rng);

// Rotational inertia of a link about its joint.
double LinkInertia(double length);

// Advances one control step. Throws ShapeError on a wrong action length and
// ProtocolError once the episode is over.
std::pair<EnvState, StepResult> Step(const EnvState& state,
                                     std::span<const double> action,
                                     const ReacherSpec& spec);

// (angle, velocity, length) per actuator-link pair, base to tip.
std::vector<PairObservation> Observe(const EnvState& state,
                                     const ReacherSpec& spec);

// Policy input layout: [pos_1, vel_1, len_1, ..., pos_N, vel_N, len_N,
// goal_x, goal_y], 3N + 2 values.
std::size_t FlatObservationSize(std::size_t num_links);
void FlattenObservation(const EnvState& state, const ReacherSpec& spec,
                        std::span<double> out);

// Stateful wrapper with its own RNG stream. With a fixed goal every episode
// targets the same point.
class ReacherEnv {
 public:
  ReacherEnv(ReacherSpec spec, std::uint64_t seed,
             std::optional<Vec2> fixed_goal = std::nullopt);

  const EnvState& Reset();
  StepResult Step(std::span<const double> action);

  const ReacherSpec& spec() const { return spec_; }
  const EnvState& state() const { return state_; }
  bool done() const { return state_.t >= kEpisodeLength; }
  double GoalDistance() const;
  void Observation(std::span<double> out) const;

 private:
  ReacherSpec spec_;
  nn::Rng rng_;
  std::optional<Vec2> fixed_goal_;
  EnvState state_;
};

}  // namespace casnet::envs

#endif  // CASNET_ENVS_REACHER_H_
