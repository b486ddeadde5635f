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
#ifndef CASNET_POLICY_MORPHOLOGY_H_
#define CASNET_POLICY_MORPHOLOGY_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace casnet::policy {

using Vec3 = std::array<double, 3>;

struct JointDescriptor {
  double range_lo = 0.0;  // rad
  double range_hi = 0.0;  // rad
  Vec3 axis{0.0, 0.0, 1.0};
  double link_length = 0.0;  // m
};

struct LegDescriptor {
  Vec3 attach{};  // m, relative to the body centre of mass
  std::vector<JointDescriptor> joints;  // ordered outward from the body
};

// Declarative legged robot. Legs are numbered clockwise about the body z
// axis; that order is the caller's contract and is not re-derived from the
// attach points.
struct LeggedMorphology {
  std::string name;
  std::vector<LegDescriptor> legs;
  bool train_member = false;

  std::size_t total_joints() const;
  // Joints per leg, in leg order.
  std::vector<std::size_t> dof_per_leg() const;
  // Throws DomainError unless 4-6 legs with 2-3 joints each, lo < hi,
  // unit-norm axes and positive link lengths.
  void Validate() const;
};

enum class LegLayout { kRadial, kLine };

// Symmetric robot with every leg built from the standard hip/ankle/foot
// joint template truncated to dof_per_leg[i] joints.
LeggedMorphology MakeLeggedRobot(std::string name, LegLayout layout,
                                 const std::vector<std::size_t>& dof_per_leg);

// The 46 quadruped/hexapod descriptors of the legged benchmark family,
// named "Quadrupled_<prefix>" / "Hexapod_<prefix>".
const std::vector<LeggedMorphology>& LeggedCatalog();
// Throws LookupError for unknown names.
const LeggedMorphology& FindMorphology(std::string_view name);

}  // namespace casnet::policy

#endif  // CASNET_POLICY_MORPHOLOGY_H_
