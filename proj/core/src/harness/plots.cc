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
#include "casnet/harness/plots.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "casnet/errors.h"
#include "harness/text.h"

namespace casnet::harness {
namespace {

using text::FormatDouble;

struct Range {
  double lo;
  double hi;
};

// Covers every value; a degenerate range is widened so it still maps.
Range Cover(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  Range r{*lo, *hi};
  if (r.hi - r.lo < 1e-12) {
    const double pad = std::max(1.0, std::abs(r.lo) * 0.05);
    r.lo -= pad;
    r.hi += pad;
  }
  return r;
}

double MapX(double x, Range r) {
  return kPlotLeft + (x - r.lo) / (r.hi - r.lo) * (kPlotRight - kPlotLeft);
}

double MapY(double y, Range r) {
  return kPlotBottom - (y - r.lo) / (r.hi - r.lo) * (kPlotBottom - kPlotTop);
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Open(Range x, Range y) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         FormatDouble(kSvgWidth) + "\" height=\"" + FormatDouble(kSvgHeight) +
         "\" data-x-min=\"" + FormatDouble(x.lo) + "\" data-x-max=\"" +
         FormatDouble(x.hi) + "\" data-y-min=\"" + FormatDouble(y.lo) +
         "\" data-y-max=\"" + FormatDouble(y.hi) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string Text(double x, double y, std::string_view anchor,
                  std::string_view body, std::string_view extra = "") {
  return "<text x=\"" + FormatDouble(x) + "\" y=\"" + FormatDouble(y) +
         "\" text-anchor=\"" + std::string(anchor) +
         "\" font-family=\"sans-serif\" font-size=\"11\"" +
         std::string(extra) + ">" + Escape(body) + "</text>\n";
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Axes(Range x, Range y, std::string_view x_label,
                 std::string_view y_label, bool x_ticks) {
  std::string s;
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + FormatDouble(kPlotLeft) + "\" y1=\"" +
       FormatDouble(kPlotBottom) + "\" x2=\"" + FormatDouble(kPlotRight) +
       "\" y2=\"" + FormatDouble(kPlotBottom) + "\"/>\n";
  s += "<line x1=\"" + FormatDouble(kPlotLeft) + "\" y1=\"" +
       FormatDouble(kPlotTop) + "\" x2=\"" + FormatDouble(kPlotLeft) +
       "\" y2=\"" + FormatDouble(kPlotBottom) + "\"/>\n";
  s += "</g>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double f = static_cast<double>(i) / (kTicks - 1);
    const double yv = y.lo + f * (y.hi - y.lo);
    s += Text(kPlotLeft - 6, MapY(yv, y) + 4, "end", Tick(yv));
    if (x_ticks) {
      const double xv = x.lo + f * (x.hi - x.lo);
      s += Text(MapX(xv, x), kPlotBottom + 16, "middle", Tick(xv));
    }
  }
  s += Text((kPlotLeft + kPlotRight) / 2, kPlotBottom + 40, "middle", x_label);
  s += Text(18, (kPlotTop + kPlotBottom) / 2, "middle", y_label,
            " transform=\"rotate(-90 18 " +
                FormatDouble((kPlotTop + kPlotBottom) / 2) + ")\"");
  return s;
}

}  // namespace

std::string LearningCurveSvg(const std::string& env_name,
                             const std::vector<MetricsRow>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.env_name != env_name) continue;
    xs.push_back(static_cast<double>(r.cumulative_env_steps));
    ys.push_back(r.mean_return);
  }
  if (xs.empty()) throw DomainError("no metrics rows for " + env_name);
  const Range xr = Cover(xs);
  const Range yr = Cover(ys);
  std::string s = Open(xr, yr);
  s += Text(kSvgWidth / 2, 22, "middle", env_name + " learning curve");
  s += Axes(xr, yr, "environment steps", "mean return", true);
  std::string points;
  std::string circles;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::string cx = FormatDouble(MapX(xs[i], xr));
    const std::string cy = FormatDouble(MapY(ys[i], yr));
    points += (i ? " " : "") + cx + "," + cy;
    circles += "<circle class=\"point\" cx=\"" + cx + "\" cy=\"" + cy +
               "\" r=\"2.5\" data-x=\"" + FormatDouble(xs[i]) +
               "\" data-y=\"" + FormatDouble(ys[i]) + "\"/>\n";
  }
  s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" "
       "points=\"" + points + "\"/>\n";
  s += "<g fill=\"steelblue\">\n" + circles + "</g>\n</svg>\n";
  return s;
}

std::string ScoresBarSvg(const std::vector<Score>& scores) {
  if (scores.empty()) throw DomainError("no scores to plot");
  std::vector<double> ys{0.0, 100.0};
  for (const auto& sc : scores) ys.push_back(sc.percent);
  const Range yr = Cover(ys);
  const Range xr{0.0, static_cast<double>(scores.size())};
  std::string s = Open(xr, yr);
  s += Text(kSvgWidth / 2, 22, "middle", "normalized score by environment");
  s += Axes(xr, yr, "environment", "normalized score (%)", false);
  const double zero = MapY(0.0, yr);
  s += "<line x1=\"" + FormatDouble(kPlotLeft) + "\" y1=\"" +
       FormatDouble(MapY(100.0, yr)) + "\" x2=\"" + FormatDouble(kPlotRight) +
       "\" y2=\"" + FormatDouble(MapY(100.0, yr)) +
       "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  const double slot = (kPlotRight - kPlotLeft) / scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double top = MapY(scores[i].percent, yr);
    const double x = kPlotLeft + slot * (i + 0.15);
    s += "<rect class=\"bar\" x=\"" + FormatDouble(x) + "\" y=\"" +
         FormatDouble(std::min(top, zero)) + "\" width=\"" +
         FormatDouble(slot * 0.7) + "\" height=\"" +
         FormatDouble(std::abs(zero - top)) + "\" fill=\"darkorange\" " +
         "data-env=\"" + Escape(scores[i].env_name) + "\" data-value=\"" +
         FormatDouble(scores[i].percent) + "\"/>\n";
    s += Text(kPlotLeft + slot * (i + 0.5), kPlotBottom + 16, "middle",
              scores[i].env_name);
  }
  s += "</svg>\n";
  return s;
}

std::vector<std::filesystem::path> EmitPlots(
    const std::vector<MetricsRow>& rows, const std::filesystem::path& out_dir,
    const std::optional<std::vector<Score>>& scores) {
  if (rows.empty()) throw FormatError("metrics contain no rows");
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  std::vector<std::string> envs;
  for (const auto& r : rows) {
    if (std::find(envs.begin(), envs.end(), r.env_name) == envs.end()) {
      envs.push_back(r.env_name);
    }
  }
  for (const auto& env : envs) {
    files.emplace_back(out_dir / ("curve_" + env + ".svg"),
                       LearningCurveSvg(env, rows));
  }
  if (scores) files.emplace_back(out_dir / "scores.svg", ScoresBarSvg(*scores));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create plot directory " + out_dir.string() + ": " +
                  ec.message());
  }
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [path, svg] : files) {
      WriteTextFile(path, svg);
      written.push_back(path);
    }
  } catch (...) {
    for (const auto& p : written) std::filesystem::remove(p, ec);
    throw;
  }
  return written;
}

}  // namespace casnet::harness
