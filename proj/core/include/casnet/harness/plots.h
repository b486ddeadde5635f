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
#ifndef CASNET_HARNESS_PLOTS_H_
#define CASNET_HARNESS_PLOTS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "casnet/harness/metrics.h"

namespace casnet::harness {

// Plot geometry shared by the emitters; data coordinates map linearly onto
// [kPlotLeft, kPlotRight] x [kPlotBottom, kPlotTop] (SVG y grows downward).
inline constexpr double kSvgWidth = 640.0;
inline constexpr double kSvgHeight = 420.0;
inline constexpr double kPlotLeft = 70.0;
inline constexpr double kPlotRight = 610.0;
inline constexpr double kPlotTop = 40.0;
inline constexpr double kPlotBottom = 360.0;

// Mean return against env steps for one env. The root element carries
// data-x-min/max and data-y-min/max; each point is a circle with class
// "point". DomainError for an empty series.
std::string LearningCurveSvg(const std::string& env_name,
                             const std::vector<MetricsRow>& rows);

// One bar per env of the normalized score percent. DomainError if empty.
std::string ScoresBarSvg(const std::vector<Score>& scores);

// Writes curve_<env>.svg for every env in rows (first-appearance order) and,
// when scores are given, scores.svg. FormatError if rows is empty. Either
// every file is written or none is left behind. Returns the written paths.
std::vector<std::filesystem::path> EmitPlots(
    const std::vector<MetricsRow>& rows, const std::filesystem::path& out_dir,
    const std::optional<std::vector<Score>>& scores = std::nullopt);

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_PLOTS_H_
