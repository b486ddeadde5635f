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
#include "casnet/harness/metrics.h"

#include <sstream>

#include "casnet/errors.h"
#include "harness/text.h"

namespace casnet::harness {
namespace {

// Splits csv into non-empty lines, remembering 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> Lines(
    std::string_view csv) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t n = 0;
  for (auto line : text::Split(csv, '\n')) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(n, line);
  }
  return out;
}

[[noreturn]] void Fail(std::string_view kind, std::size_t line,
                       const std::string& what) {
  throw FormatError(std::string(kind) + " line " + std::to_string(line) +
                    ": " + what);
}

template <typename T>
T Field(std::string_view kind, std::size_t line, std::string_view name,
        std::string_view value) {
  auto v = text::ParseNumber<T>(value);
  if (!v) {
    Fail(kind, line,
         "bad " + std::string(name) + " '" + std::string(value) + "'");
  }
  return *v;
}

}  // namespace

std::string FormatMetricsRow(const MetricsRow& r) {
  std::string s = std::to_string(r.update_index);
  s += ',' + r.env_name;
  s += ',' + std::to_string(r.cumulative_env_steps);
  for (double v : {r.mean_return, r.mean_final_distance, r.policy_loss,
                   r.value_loss, r.entropy, r.approx_kl}) {
    s += ',' + text::FormatDouble(v);
  }
  return s;
}

std::vector<MetricsRow> ParseMetricsCsv(std::string_view csv) {
  constexpr std::string_view kind = "metrics";
  const auto lines = Lines(csv);
  if (lines.empty()) throw FormatError("metrics: empty file");
  if (lines.front().second != kMetricsHeader) {
    Fail(kind, lines.front().first, "unexpected header");
  }
  std::vector<MetricsRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [n, line] = lines[i];
    const auto f = text::Split(line, ',');
    if (f.size() != 9) {
      Fail(kind, n, "expected 9 fields, got " + std::to_string(f.size()));
    }
    MetricsRow r;
    r.update_index = Field<std::int64_t>(kind, n, "update_index", f[0]);
    if (f[1].empty()) Fail(kind, n, "empty env_name");
    r.env_name = std::string(f[1]);
    r.cumulative_env_steps =
        Field<std::int64_t>(kind, n, "cumulative_env_steps", f[2]);
    r.mean_return = Field<double>(kind, n, "mean_return", f[3]);
    r.mean_final_distance = Field<double>(kind, n, "mean_final_distance", f[4]);
    r.policy_loss = Field<double>(kind, n, "policy_loss", f[5]);
    r.value_loss = Field<double>(kind, n, "value_loss", f[6]);
    r.entropy = Field<double>(kind, n, "entropy", f[7]);
    r.approx_kl = Field<double>(kind, n, "approx_kl", f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MetricsRow> LoadMetricsCsv(const std::filesystem::path& path) {
  const std::string csv = ReadTextFile(path);
  try {
    return ParseMetricsCsv(csv);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

MetricsWriter::MetricsWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot write metrics " + path.string());
  out_ << kMetricsHeader << '\n';
  if (!out_.flush()) throw IoError("error writing metrics " + path.string());
}

void MetricsWriter::Write(const MetricsRow& row) {
  out_ << FormatMetricsRow(row) << '\n';
  if (!out_.flush()) throw IoError("error writing metrics " + path_.string());
}

std::string FormatScoresCsv(const std::vector<Score>& scores) {
  std::string s(kScoresHeader);
  s += '\n';
  for (const auto& sc : scores) {
    s += sc.env_name;
    for (double v : {sc.r_general, sc.r_random, sc.r_expert, sc.percent}) {
      s += ',' + text::FormatDouble(v);
    }
    s += '\n';
  }
  return s;
}

std::vector<Score> ParseScoresCsv(std::string_view csv) {
  constexpr std::string_view kind = "scores";
  const auto lines = Lines(csv);
  if (lines.empty()) throw FormatError("scores: empty file");
  if (lines.front().second != kScoresHeader) {
    Fail(kind, lines.front().first, "unexpected header");
  }
  std::vector<Score> scores;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [n, line] = lines[i];
    const auto f = text::Split(line, ',');
    if (f.size() != 5) {
      Fail(kind, n, "expected 5 fields, got " + std::to_string(f.size()));
    }
    if (f[0].empty()) Fail(kind, n, "empty env_name");
    scores.push_back({std::string(f[0]),
                      Field<double>(kind, n, "R_general", f[1]),
                      Field<double>(kind, n, "R_random", f[2]),
                      Field<double>(kind, n, "R_expert", f[3]),
                      Field<double>(kind, n, "percent", f[4])});
  }
  return scores;
}

std::vector<Score> LoadScoresCsv(const std::filesystem::path& path) {
  const std::string csv = ReadTextFile(path);
  try {
    return ParseScoresCsv(csv);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out.flush()) throw IoError("error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

}  // namespace casnet::harness
