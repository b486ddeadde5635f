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

// casnet: train, evaluate and plot reacher policies.
//
// Exit codes: 0 success, 1 other failure, 2 configuration or usage error,
// 3 I/O error, 4 file format error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "casnet/envs/registry.h"
#include "casnet/errors.h"
#include "casnet/harness/checkpoint.h"
#include "casnet/harness/config.h"
#include "casnet/harness/evaluate.h"
#include "casnet/harness/metrics.h"
#include "casnet/harness/plots.h"
#include "casnet/harness/trainer.h"

namespace {

namespace h = casnet::harness;

constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;

struct TrainArgs {
  std::string config;
  std::string algo;
  std::string envs;
  bool train_set = false;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string policy;
};

struct EvalArgs {
  std::string checkpoint;
  std::string env;
  int episodes = 20;
  std::uint64_t seed = 0;
  std::string baseline;
  std::string expert_checkpoint;
  int random_policies = 5;
  std::string scores_out;
};

struct PlotArgs {
  std::string metrics;
  std::string out;
  std::string scores;
};

int RunTrain(const TrainArgs& a) {
  h::TrainConfig config;
  if (!a.config.empty()) config = h::LoadConfig(a.config);
  if (!a.algo.empty()) config.run.algo = a.algo;
  if (!a.policy.empty()) config.run.policy = a.policy;
  if (a.train_set) {
    config.run.train_set = true;
    config.run.envs.clear();
  }
  if (!a.envs.empty()) {
    config.run.train_set = false;
    config.run.envs.clear();
    std::stringstream ss(a.envs);
    for (std::string name; std::getline(ss, name, ',');) {
      if (!name.empty()) config.run.envs.push_back(name);
    }
  }
  if (a.seed) config.run.seed = *a.seed;
  h::ApplySeedOverride(config);

  const auto result = h::Train(config, a.out, [](const h::MetricsRow& r) {
    std::fprintf(stderr,
                 "update %lld  steps %lld  %-10s  return %9.3f  "
                 "distance %.4f\n",
                 static_cast<long long>(r.update_index),
                 static_cast<long long>(r.cumulative_env_steps),
                 r.env_name.c_str(), r.mean_return, r.mean_final_distance);
  });
  std::printf("env_steps: %lld\nupdates: %lld\nfinal_checkpoint: %s\n",
              static_cast<long long>(result.env_steps),
              static_cast<long long>(result.updates),
              result.final_checkpoint.string().c_str());
  if (result.reached_target) std::printf("reached_target: true\n");
  return 0;
}

int RunEval(const EvalArgs& a) {
  const auto& spec = casnet::envs::FindSpec(a.env);
  const h::Checkpoint checkpoint = h::LoadCheckpoint(a.checkpoint);
  const h::EvalResult general =
      h::EvalCheckpoint(checkpoint, spec, a.episodes, a.seed);
  std::printf("env: %s\nmean_return: %.17g\nmean_final_distance: %.17g\n",
              spec.name.c_str(), general.mean_return,
              general.mean_final_distance);
  if (a.baseline.empty()) return 0;

  const h::EvalResult random =
      h::RandomBaseline(spec, a.random_policies, a.episodes, a.seed);
  std::printf("random_mean_return: %.17g\n", random.mean_return);
  if (a.baseline == "random") return 0;

  if (a.expert_checkpoint.empty()) {
    throw casnet::ConfigError("--baseline expert needs --expert-checkpoint");
  }
  const h::EvalResult expert = h::EvalCheckpoint(
      h::LoadCheckpoint(a.expert_checkpoint), spec, a.episodes, a.seed);
  const double percent = h::NormalizedScore(
      general.mean_return, random.mean_return, expert.mean_return);
  std::printf("expert_mean_return: %.17g\nnormalized_score: %.17g\n",
              expert.mean_return, percent);
  if (!a.scores_out.empty()) {
    std::vector<h::Score> scores;
    if (std::filesystem::exists(a.scores_out)) {
      scores = h::LoadScoresCsv(a.scores_out);
    }
    std::erase_if(scores, [&](const h::Score& s) {
      return s.env_name == spec.name;
    });
    scores.push_back({spec.name, general.mean_return, random.mean_return,
                      expert.mean_return, percent});
    h::WriteTextFile(a.scores_out, h::FormatScoresCsv(scores));
  }
  return 0;
}

int RunPlot(const PlotArgs& a) {
  const auto rows = h::LoadMetricsCsv(a.metrics);
  std::optional<std::vector<h::Score>> scores;
  if (!a.scores.empty()) scores = h::LoadScoresCsv(a.scores);
  for (const auto& p : h::EmitPlots(rows, a.out, scores)) {
    std::printf("%s\n", p.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CASNET reacher policies: training, evaluation and plots"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a policy");
  train_cmd->add_option("--config", train.config, "key = value config file")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--algo", train.algo, "ppo or sac")
      ->check(CLI::IsMember({"ppo", "sac"}));
  auto* envs_opt = train_cmd->add_option(
      "--envs", train.envs, "Comma-separated environment names");
  train_cmd->add_flag("--train-set", train.train_set,
                      "Train on the five training environments")
      ->excludes(envs_opt);
  train_cmd->add_option("--seed", train.seed, "Run seed");
  train_cmd->add_option("--out", train.out, "Output directory")->required();
  train_cmd->add_option("--policy", train.policy, "casnet or expert")
      ->check(CLI::IsMember({"casnet", "expert"}));

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint file")
      ->required();
  eval_cmd->add_option("--env", eval.env, "Environment name")->required();
  eval_cmd->add_option("--episodes", eval.episodes, "Episodes")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval.seed, "Goal seed");
  eval_cmd->add_option("--baseline", eval.baseline, "random or expert")
      ->check(CLI::IsMember({"random", "expert"}));
  eval_cmd->add_option("--expert-checkpoint", eval.expert_checkpoint,
                       "Expert checkpoint for the normalized score");
  eval_cmd->add_option("--random-policies", eval.random_policies,
                       "Randomly initialized policies in the baseline")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--scores-out", eval.scores_out,
                       "Scores CSV to add this env's score to");

  auto* registry_cmd = app.add_subcommand("registry", "Environment registry");
  registry_cmd->require_subcommand(1);
  auto* list_cmd =
      registry_cmd->add_subcommand("list", "Print the registry as CSV");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render SVG plots");
  plot_cmd->add_option("--metrics", plot.metrics, "Metrics CSV")->required();
  plot_cmd->add_option("--out", plot.out, "Output directory")->required();
  plot_cmd->add_option("--scores", plot.scores,
                       "Scores CSV for the bar chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train_cmd) return RunTrain(train);
    if (*eval_cmd) return RunEval(eval);
    if (*list_cmd) {
      std::cout << casnet::envs::RegistryCsv();
      return 0;
    }
    if (*plot_cmd) return RunPlot(plot);
  } catch (const casnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const casnet::LookupError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const casnet::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const casnet::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
