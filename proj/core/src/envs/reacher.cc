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
#include "casnet/envs/reacher.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "casnet/errors.h"

namespace casnet::envs {

double Norm(Vec2 v) { return std::hypot(v.x, v.y); }

double Distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Vec2 ForwardKinematics(std::span<const double> angles,
                       std::span<const double> lengths) {
  if (angles.size() != lengths.size()) {
    throw ShapeError("forward kinematics: " + std::to_string(angles.size()) +
                     " angles for " + std::to_string(lengths.size()) +
                     " links");
  }
  Vec2 tip;
  double heading = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    heading += angles[i];
    tip.x += lengths[i] * std::cos(heading);
    tip.y += lengths[i] * std::sin(heading);
  }
  return tip;
}

Annulus ReachableAnnulus(std::span<const double> lengths) {
  if (lengths.empty()) throw DomainError("reachable annulus of empty chain");
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  const double longest = *std::max_element(lengths.begin(), lengths.end());
  return {std::max(0.0, longest - (total - longest)), total};
}

Vec2 SampleGoal(const ReacherSpec& spec, nn::Rng& rng) {
  const Annulus ring = ReachableAnnulus(spec.link_lengths);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  const double r_min2 = ring.r_min * ring.r_min;
  const double r_max2 = ring.r_max * ring.r_max;
  const double r = std::sqrt(u * (r_max2 - r_min2) + r_min2);
  return {r * std::cos(phi), r * std::sin(phi)};
}

EnvState Reset(const ReacherSpec& spec, nn::Rng& rng) {
  EnvState s;
  s.angles.assign(spec.num_links(), 0.0);
  s.velocities.assign(spec.num_links(), 0.0);
  s.goal = SampleGoal(spec, rng);
  s.t = 0;
  return s;
}

double LinkInertia(double length) { return kLinkMass * length * length / 3.0; }

std::pair<EnvState, StepResult> Step(const EnvState& state,
                                     std::span<const double> action,
                                     const ReacherSpec& spec) {
  const std::size_t n = spec.num_links();
  if (action.size() != n) {
    throw ShapeError("reacher step: action of length " +
                     std::to_string(action.size()) + " for " +
                     std::to_string(n) + " links");
  }
  if (state.t >= kEpisodeLength) {
    throw ProtocolError("reacher step after episode end");
  }
  EnvState next = state;
  double effort = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::clamp(action[i], -1.0, 1.0);
    effort += std::abs(u);
    const double inertia = LinkInertia(spec.link_lengths[i]);
    // Damping is integrated exactly over dt, so the update stays stable for
    // any c dt / I; the torque enters as an impulse.
    const double decay = std::exp(-kDamping * kDt / inertia);
    double v = state.velocities[i] * decay + kDt * u * kMaxTorque / inertia;
    v = std::clamp(v, -kMaxVelocity, kMaxVelocity);
    next.velocities[i] = v;
    next.angles[i] = state.angles[i] + kDt * v;
  }
  next.t = state.t + 1;

  const Vec2 tip = ForwardKinematics(next.angles, spec.link_lengths);
  StepResult result;
  result.reward = -(Distance(tip, next.goal) +
                    kTorqueWeight * effort / static_cast<double>(n));
  result.done = next.t == kEpisodeLength;
  result.observation = Observe(next, spec);
  return {std::move(next), std::move(result)};
}

std::vector<PairObservation> Observe(const EnvState& state,
                                     const ReacherSpec& spec) {
  std::vector<PairObservation> obs(spec.num_links());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    obs[i] = {state.angles[i], state.velocities[i], spec.link_lengths[i]};
  }
  return obs;
}

std::size_t FlatObservationSize(std::size_t num_links) {
  return 3 * num_links + 2;
}

void FlattenObservation(const EnvState& state, const ReacherSpec& spec,
                        std::span<double> out) {
  const std::size_t n = spec.num_links();
  if (out.size() != FlatObservationSize(n)) {
    throw ShapeError("flat observation buffer has wrong size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[3 * i] = state.angles[i];
    out[3 * i + 1] = state.velocities[i];
    out[3 * i + 2] = spec.link_lengths[i];
  }
  out[3 * n] = state.goal.x;
  out[3 * n + 1] = state.goal.y;
}

ReacherEnv::ReacherEnv(ReacherSpec spec, std::uint64_t seed,
                       std::optional<Vec2> fixed_goal)
    : spec_(std::move(spec)),
      rng_(nn::MakeRng(seed)),
      fixed_goal_(fixed_goal) {
  Reset();
}

const EnvState& ReacherEnv::Reset() {
  state_ = envs::Reset(spec_, rng_);
  if (fixed_goal_) state_.goal = *fixed_goal_;
  return state_;
}

StepResult ReacherEnv::Step(std::span<const double> action) {
  auto [next, result] = envs::Step(state_, action, spec_);
  state_ = std::move(next);
  return result;
}

double ReacherEnv::GoalDistance() const {
  return Distance(ForwardKinematics(state_.angles, spec_.link_lengths),
                  state_.goal);
}

void ReacherEnv::Observation(std::span<double> out) const {
  FlattenObservation(state_, spec_, out);
}

}  // namespace casnet::envs
