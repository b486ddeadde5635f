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
#include "casnet/policy/morphology.h"

#include <cmath>
#include <numbers>
#include <string>

#include "casnet/errors.h"

namespace casnet::policy {
namespace {

constexpr double kRadialAttachRadius = 0.2;
constexpr double kLineHalfWidth = 0.12;
constexpr double kLimitScale = 0.6;   // altered joints keep 60% of the range
constexpr double kLengthScale = 1.5;  // altered links are 50% longer

// Hip, ankle and foot joint template; the leg's outward heading psi orients
// the pitch axes.
JointDescriptor TemplateJoint(std::size_t j, double psi) {
  const Vec3 pitch{-std::sin(psi), std::cos(psi), 0.0};
  switch (j) {
    case 0:
      return {-0.7, 0.7, {0.0, 0.0, 1.0}, 0.08};
    case 1:
      return {0.35, 1.2, pitch, 0.16};
    default:
      return {-1.2, -0.3, pitch, 0.14};
  }
}

struct LegPlacement {
  Vec3 attach;
  double heading;
};

std::vector<LegPlacement> Placements(LegLayout layout, std::size_t legs) {
  std::vector<LegPlacement> out;
  const double pi = std::numbers::pi;
  if (layout == LegLayout::kRadial) {
    // Clockwise seen from +z: the heading decreases with the leg index.
    for (std::size_t i = 0; i < legs; ++i) {
      const double psi = pi / static_cast<double>(legs) -
                         2.0 * pi * static_cast<double>(i) /
                             static_cast<double>(legs);
      out.push_back({{kRadialAttachRadius * std::cos(psi),
                      kRadialAttachRadius * std::sin(psi), 0.0},
                     psi});
    }
    return out;
  }
  // Two rows: right side front to back, then left side back to front.
  const std::size_t per_side = legs / 2;
  const double spacing = 0.25;
  const double front = 0.5 * spacing * static_cast<double>(per_side - 1);
  for (std::size_t i = 0; i < per_side; ++i) {
    out.push_back(
        {{front - spacing * static_cast<double>(i), -kLineHalfWidth, 0.0},
         -pi / 2});
  }
  for (std::size_t i = 0; i < per_side; ++i) {
    out.push_back({{-front + spacing * static_cast<double>(i), kLineHalfWidth,
                    0.0},
                   pi / 2});
  }
  return out;
}

enum class Alteration { kNone, kDof, kLimits, kLengths };

struct CatalogRow {
  const char* robot;
  const char* prefix;
  bool train;
  LegLayout layout;
  std::size_t base_dof;
  Alteration alteration;
  // kDof: 1-based legs switched to the other DOF count. kLimits/kLengths:
  // joint codes "H<leg>" (hip) or "A<leg>" (ankle).
  std::vector<std::string> targets;
};

const std::vector<CatalogRow>& Rows() {
  using enum Alteration;
  constexpr LegLayout R = LegLayout::kRadial;
  constexpr LegLayout L = LegLayout::kLine;
  static const std::vector<CatalogRow> kRows = {
      {"Quadrupled", "10", true, R, 2, kNone, {}},
      {"Quadrupled", "11", true, R, 2, kDof, {"1"}},
      {"Quadrupled", "12", false, R, 2, kDof, {"1", "2"}},
      {"Quadrupled", "13", true, R, 3, kDof, {"4"}},
      {"Quadrupled", "14", true, R, 3, kNone, {}},
      {"Quadrupled", "20", true, L, 2, kNone, {}},
      {"Quadrupled", "21", false, L, 2, kDof, {"1"}},
      {"Quadrupled", "22", false, L, 2, kDof, {"2"}},
      {"Quadrupled", "23", true, L, 2, kDof, {"3"}},
      {"Quadrupled", "24", false, L, 2, kDof, {"4"}},
      {"Quadrupled", "25", true, L, 3, kDof, {"2", "4"}},
      {"Quadrupled", "26", true, L, 3, kNone, {}},
      {"Quadrupled", "31", true, L, 2, kLimits, {"H1", "A1", "A4"}},
      {"Quadrupled", "32", true, L, 2, kLimits, {"H3", "H4", "A2"}},
      {"Quadrupled", "33", false, L, 2, kLimits, {"H1", "H2", "H3"}},
      {"Quadrupled", "34", true, L, 2, kLimits, {"H3", "H4", "A4"}},
      {"Quadrupled", "35", false, L, 2, kLimits, {"H2", "A1", "A2"}},
      {"Quadrupled", "41", true, R, 2, kLengths, {"H1", "A3", "A4"}},
      {"Quadrupled", "42", false, R, 2, kLengths, {"H2", "H3", "A3"}},
      {"Quadrupled", "43", false, R, 2, kLengths, {"H1", "H4", "A2"}},
      {"Quadrupled", "44", true, R, 2, kLengths, {"H4", "A1", "A4"}},
      {"Quadrupled", "45", true, R, 2, kLengths, {"H2", "H3", "A1"}},
      {"Hexapod", "10", true, R, 2, kNone, {}},
      {"Hexapod", "11", false, R, 2, kDof, {"2"}},
      {"Hexapod", "12", true, R, 2, kDof, {"2", "6"}},
      {"Hexapod", "13", false, R, 3, kDof, {"2", "4", "6"}},
      {"Hexapod", "14", true, R, 3, kDof, {"3", "5"}},
      {"Hexapod", "15", false, R, 3, kDof, {"5"}},
      {"Hexapod", "16", true, R, 3, kNone, {}},
      {"Hexapod", "20", true, L, 2, kNone, {}},
      {"Hexapod", "21", true, L, 2, kDof, {"1"}},
      {"Hexapod", "22", false, L, 2, kDof, {"1", "3"}},
      {"Hexapod", "23", false, L, 3, kDof, {"2", "4", "6"}},
      {"Hexapod", "24", false, L, 3, kDof, {"4", "6"}},
      {"Hexapod", "25", true, L, 3, kDof, {"6"}},
      {"Hexapod", "26", false, L, 3, kNone, {}},
      {"Hexapod", "31", false, R, 2, kLimits, {"H1", "H6", "A2"}},
      {"Hexapod", "32", true, R, 2, kLimits, {"H3", "A3", "A4"}},
      {"Hexapod", "33", true, R, 2, kLimits, {"A1", "A3", "A5"}},
      {"Hexapod", "34", true, R, 2, kLimits, {"H2", "H5", "A6"}},
      {"Hexapod", "35", false, R, 2, kLimits, {"H3", "A2", "A4"}},
      {"Hexapod", "41", true, L, 2, kLengths, {"H1", "H2", "H6"}},
      {"Hexapod", "42", false, L, 2, kLengths, {"H6", "A3", "A5"}},
      {"Hexapod", "43", false, L, 2, kLengths, {"H3", "H4", "A4"}},
      {"Hexapod", "44", true, L, 2, kLengths, {"H5", "A1", "A6"}},
      {"Hexapod", "45", true, L, 2, kLengths, {"H1", "A2", "A5"}},
  };
  return kRows;
}

JointDescriptor& TargetJoint(LeggedMorphology& m, const std::string& code) {
  const std::size_t leg = std::stoul(code.substr(1)) - 1;
  const std::size_t joint = code[0] == 'H' ? 0 : 1;
  return m.legs.at(leg).joints.at(joint);
}

LeggedMorphology BuildRow(const CatalogRow& row) {
  const std::size_t legs = std::string(row.robot) == "Hexapod" ? 6 : 4;
  std::vector<std::size_t> dof(legs, row.base_dof);
  if (row.alteration == Alteration::kDof) {
    for (const auto& t : row.targets) {
      dof.at(std::stoul(t) - 1) = row.base_dof == 2 ? 3 : 2;
    }
  }
  LeggedMorphology m = MakeLeggedRobot(
      std::string(row.robot) + "_" + row.prefix, row.layout, dof);
  m.train_member = row.train;
  for (const auto& t : row.targets) {
    if (row.alteration == Alteration::kLimits) {
      JointDescriptor& j = TargetJoint(m, t);
      const double mid = 0.5 * (j.range_lo + j.range_hi);
      const double half = 0.5 * (j.range_hi - j.range_lo) * kLimitScale;
      j.range_lo = mid - half;
      j.range_hi = mid + half;
    } else if (row.alteration == Alteration::kLengths) {
      TargetJoint(m, t).link_length *= kLengthScale;
    }
  }
  return m;
}

}  // namespace

std::size_t LeggedMorphology::total_joints() const {
  std::size_t n = 0;
  for (const auto& leg : legs) n += leg.joints.size();
  return n;
}

std::vector<std::size_t> LeggedMorphology::dof_per_leg() const {
  std::vector<std::size_t> out;
  for (const auto& leg : legs) out.push_back(leg.joints.size());
  return out;
}

void LeggedMorphology::Validate() const {
  if (legs.size() < 4 || legs.size() > 6) {
    throw DomainError(name + ": " + std::to_string(legs.size()) +
                      " legs, expected 4 to 6");
  }
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& joints = legs[i].joints;
    if (joints.size() < 2 || joints.size() > 3) {
      throw DomainError(name + ": leg " + std::to_string(i + 1) + " has " +
                        std::to_string(joints.size()) +
                        " joints, expected 2 or 3");
    }
    for (const auto& j : joints) {
      const double norm =
          std::sqrt(j.axis[0] * j.axis[0] + j.axis[1] * j.axis[1] +
                    j.axis[2] * j.axis[2]);
      if (!(j.range_lo < j.range_hi) || std::abs(norm - 1.0) > 1e-9 ||
          !(j.link_length > 0.0)) {
        throw DomainError(name + ": invalid joint descriptor on leg " +
                          std::to_string(i + 1));
      }
    }
  }
}

LeggedMorphology MakeLeggedRobot(std::string name, LegLayout layout,
                                 const std::vector<std::size_t>& dof_per_leg) {
  LeggedMorphology m;
  m.name = std::move(name);
  const auto placements = Placements(layout, dof_per_leg.size());
  for (std::size_t i = 0; i < dof_per_leg.size(); ++i) {
    LegDescriptor leg;
    leg.attach = placements[i].attach;
    for (std::size_t j = 0; j < dof_per_leg[i]; ++j) {
      leg.joints.push_back(TemplateJoint(j, placements[i].heading));
    }
    m.legs.push_back(std::move(leg));
  }
  m.Validate();
  return m;
}

const std::vector<LeggedMorphology>& LeggedCatalog() {
  static const std::vector<LeggedMorphology> kCatalog = [] {
    std::vector<LeggedMorphology> out;
    for (const auto& row : Rows()) out.push_back(BuildRow(row));
    return out;
  }();
  return kCatalog;
}

const LeggedMorphology& FindMorphology(std::string_view name) {
  for (const auto& m : LeggedCatalog()) {
    if (m.name == name) return m;
  }
  throw LookupError("unknown legged morphology: " + std::string(name));
}

}  // namespace casnet::policy
