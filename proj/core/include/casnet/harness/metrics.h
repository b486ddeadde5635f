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
#ifndef CASNET_HARNESS_METRICS_H_
#define CASNET_HARNESS_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace casnet::harness {

struct MetricsRow {
  std::int64_t update_index = 0;
  std::string env_name;
  std::int64_t cumulative_env_steps = 0;
  double mean_return = 0.0;
  double mean_final_distance = 0.0;  // m
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

inline constexpr std::string_view kMetricsHeader =
    "update_index,env_name,cumulative_env_steps,mean_return,"
    "mean_final_distance,policy_loss,value_loss,entropy,approx_kl";

// One CSV line without the trailing newline; doubles round-trip exactly.
std::string FormatMetricsRow(const MetricsRow& row);

// Header plus rows. FormatError naming the line on a bad header, wrong
// column count or unparseable field.
std::vector<MetricsRow> ParseMetricsCsv(std::string_view csv);
std::vector<MetricsRow> LoadMetricsCsv(const std::filesystem::path& path);

// Appends rows to a CSV file, writing the header on open.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::filesystem::path& path);
  void Write(const MetricsRow& row);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct Score {
  std::string env_name;
  double r_general = 0.0;
  double r_random = 0.0;
  double r_expert = 0.0;
  double percent = 0.0;
  friend bool operator==(const Score&, const Score&) = default;
};

inline constexpr std::string_view kScoresHeader =
    "env_name,R_general,R_random,R_expert,percent";

std::string FormatScoresCsv(const std::vector<Score>& scores);
std::vector<Score> ParseScoresCsv(std::string_view csv);
std::vector<Score> LoadScoresCsv(const std::filesystem::path& path);

// Reads a whole file; IoError with the path on failure.
std::string ReadTextFile(const std::filesystem::path& path);
// Writes through a temporary file and a rename. IoError on failure.
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace casnet::harness

#endif  // CASNET_HARNESS_METRICS_H_
