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
#include "casnet/harness/trainer.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "casnet/algos/replay_buffer.h"
#include "casnet/errors.h"
#include "casnet/harness/evaluate.h"
#include "casnet/harness/rollout.h"

namespace casnet::harness {
namespace {

// Streams derived from the run seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kActionStream = 2;
constexpr std::uint64_t kUpdateStream = 3;
constexpr std::uint64_t kEvalStream = 0xEA;

struct LossSnapshot {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
};

// Shared bookkeeping: output files, eval cadence, checkpoints.
class Session {
 public:
  Session(const TrainConfig& config, const std::filesystem::path& out_dir,
          const RowCallback& on_row)
      : config_(config),
        out_dir_(out_dir),
        on_row_(on_row),
        specs_(config.ResolveEnvs()),
        eval_seed_(nn::MakeRng(config.run.seed, kEvalStream)()),
        mode_(ActionModeFor(config.run.algo)) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir_, ec);
    if (ec) {
      throw IoError("cannot create output directory " + out_dir_.string() +
                    ": " + ec.message());
    }
    WriteTextFile(out_dir_ / "config.txt", config_.ToText());
    metrics_.emplace(out_dir_ / "metrics.csv");
  }

  const std::vector<envs::ReacherSpec>& specs() const { return specs_; }
  TrainResult& result() { return result_; }
  bool done() const {
    return result_.reached_target ||
           result_.env_steps >= config_.run.total_env_steps;
  }

  // Evaluates if the step counter crossed the next eval threshold, or
  // unconditionally when force is set and this step count is unevaluated.
  void MaybeEvaluate(const policy::ActorCritic& policy,
                     const LossSnapshot& losses, bool force) {
    const bool due = result_.env_steps >= next_eval_;
    if (!due && !(force && result_.env_steps > last_eval_steps_)) return;
    while (next_eval_ <= result_.env_steps) {
      next_eval_ += config_.run.eval_interval;
    }
    last_eval_steps_ = result_.env_steps;
    bool all_within = true;
    for (const auto& spec : specs_) {
      std::optional<envs::Vec2> goal;
      if (config_.run.algo == "sac" && config_.sac.fixed_goal) {
        goal = FixedGoalFor(spec, config_.run.seed);
      }
      const EvalResult eval = EvalPolicy(
          policy, spec, config_.run.eval_episodes, eval_seed_, mode_, goal);
      MetricsRow row;
      row.update_index = result_.updates;
      row.env_name = spec.name;
      row.cumulative_env_steps = result_.env_steps;
      row.mean_return = eval.mean_return;
      row.mean_final_distance = eval.mean_final_distance;
      row.policy_loss = losses.policy_loss;
      row.value_loss = losses.value_loss;
      row.entropy = losses.entropy;
      row.approx_kl = losses.approx_kl;
      metrics_->Write(row);
      result_.rows.push_back(row);
      if (on_row_) on_row_(row);
      all_within = all_within &&
                   eval.mean_final_distance <= config_.run.target_distance;
    }
    if (config_.run.target_distance > 0.0 && all_within) {
      result_.reached_target = true;
    }
  }

  void MaybeCheckpoint(const std::function<Checkpoint()>& make) {
    if (result_.updates == 0 ||
        result_.updates % config_.run.checkpoint_every != 0) {
      return;
    }
    char name[48];
    std::snprintf(name, sizeof(name), "checkpoint_%06lld.ckpt",
                  static_cast<long long>(result_.updates));
    SaveCheckpoint(make(), out_dir_ / name);
  }

  void Finish(const Checkpoint& checkpoint) {
    result_.final_checkpoint = out_dir_ / "final.ckpt";
    SaveCheckpoint(checkpoint, result_.final_checkpoint);
  }

 private:
  const TrainConfig& config_;
  std::filesystem::path out_dir_;
  const RowCallback& on_row_;
  std::vector<envs::ReacherSpec> specs_;
  std::uint64_t eval_seed_;
  ActionMode mode_;
  std::optional<MetricsWriter> metrics_;
  TrainResult result_;
  std::int64_t next_eval_ = 0;
  std::int64_t last_eval_steps_ = -1;
};

std::size_t MaxLinks(const std::vector<envs::ReacherSpec>& specs) {
  std::size_t n = 0;
  for (const auto& s : specs) n = std::max(n, s.num_links());
  return n;
}

TrainResult TrainPpo(const TrainConfig& config,
                     const std::filesystem::path& out_dir,
                     const RowCallback& on_row) {
  Session session(config, out_dir, on_row);
  const auto& specs = session.specs();
  nn::Rng init_rng = nn::MakeRng(config.run.seed, kInitStream);
  nn::Rng action_rng = nn::MakeRng(config.run.seed, kActionStream);
  nn::Rng update_rng = nn::MakeRng(config.run.seed, kUpdateStream);
  auto net =
      policy::MakeActorCritic(config.run.policy, MaxLinks(specs), init_rng);
  algos::Adam adam(config.ppo.lr);
  auto groups = MakeEnvGroups(specs, config.run.envs_per_spec,
                              config.run.seed, false);
  const std::int64_t instances =
      static_cast<std::int64_t>(specs.size()) * config.run.envs_per_spec;
  const std::int64_t share = config.ppo.rollout_len / instances;
  auto checkpoint = [&] { return MakePolicyCheckpoint(config, *net); };

  TrainResult& result = session.result();
  LossSnapshot losses;
  session.MaybeEvaluate(*net, losses, false);
  while (!session.done()) {
    const std::int64_t remaining = config.run.total_env_steps - result.env_steps;
    const std::int64_t per_instance =
        std::min(share, (remaining + instances - 1) / instances);
    algos::RolloutBuffer buffer;
    result.env_steps +=
        CollectRollout(*net, groups, static_cast<int>(per_instance),
                       config.ppo.gamma, action_rng, buffer);
    buffer.Finalize(config.ppo.gamma, config.ppo.lambda,
                    config.ppo.normalize_advantages);
    const algos::PpoStats stats =
        algos::PpoUpdate(*net, buffer, config.ppo, adam, update_rng);
    ++result.updates;
    losses = {stats.policy_loss, stats.value_loss, stats.entropy,
              stats.approx_kl};
    session.MaybeCheckpoint(checkpoint);
    session.MaybeEvaluate(*net, losses, session.done());
  }
  session.Finish(checkpoint());
  return std::move(result);
}

TrainResult TrainSac(const TrainConfig& config,
                     const std::filesystem::path& out_dir,
                     const RowCallback& on_row) {
  Session session(config, out_dir, on_row);
  const auto& specs = session.specs();
  nn::Rng init_rng = nn::MakeRng(config.run.seed, kInitStream);
  nn::Rng action_rng = nn::MakeRng(config.run.seed, kActionStream);
  nn::Rng update_rng = nn::MakeRng(config.run.seed, kUpdateStream);
  algos::SacLearner learner(
      algos::SacNets::Make(config.run.policy, MaxLinks(specs), init_rng),
      config.sac);
  algos::ReplayBuffer replay(
      static_cast<std::size_t>(config.sac.replay_capacity));
  auto groups = MakeEnvGroups(specs, config.run.envs_per_spec,
                              config.run.seed, config.sac.fixed_goal);
  auto checkpoint = [&] { return MakeSacCheckpoint(config, learner.nets()); };
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  TrainResult& result = session.result();
  LossSnapshot losses;
  session.MaybeEvaluate(*learner.nets().policy, losses, false);
  while (!session.done()) {
    const bool warm = result.env_steps >= config.sac.warmup_steps;
    for (EnvGroup& group : groups) {
      const std::size_t n = group.spec.num_links();
      const ad::Tensor obs = group.Observations();
      ad::Tensor actions(ad::Shape{group.instances.size(), n});
      if (warm) {
        ad::Tensor noise(actions.shape());
        for (double& v : noise.values()) v = normal(action_rng);
        ad::Graph g;
        actions = algos::SampleSquashed(g, *learner.nets().policy, obs, n,
                                        noise)
                      .action.value();
      } else {
        for (double& v : actions.values()) v = uniform(action_rng);
      }
      const std::size_t width = obs.cols();
      for (std::size_t i = 0; i < group.instances.size(); ++i) {
        envs::ReacherEnv& env = group.instances[i];
        algos::Transition tr;
        tr.num_links = n;
        tr.obs.assign(obs.data() + i * width, obs.data() + (i + 1) * width);
        tr.action.assign(actions.data() + i * n, actions.data() + (i + 1) * n);
        tr.reward = env.Step(tr.action).reward;
        tr.next_obs.resize(width);
        env.Observation(tr.next_obs);
        // The time limit is not a terminal state; the backup continues
        // through it.
        tr.done = false;
        if (env.done()) env.Reset();
        replay.Insert(std::move(tr));
        ++result.env_steps;
      }
    }
    if (result.env_steps >= config.sac.warmup_steps &&
        replay.size() >= static_cast<std::size_t>(config.sac.batch_size)) {
      for (int u = 0; u < config.sac.updates_per_cycle; ++u) {
        const algos::SacStats stats = learner.Update(replay, update_rng);
        ++result.updates;
        losses = {stats.policy_loss, stats.q_loss + stats.v_loss,
                  stats.entropy, 0.0};
        session.MaybeCheckpoint(checkpoint);
      }
    }
    session.MaybeEvaluate(*learner.nets().policy, losses, session.done());
  }
  session.Finish(checkpoint());
  return std::move(result);
}

}  // namespace

Checkpoint MakePolicyCheckpoint(const TrainConfig& config,
                                const policy::ActorCritic& policy) {
  Checkpoint cp;
  cp.algo = config.run.algo;
  cp.config = config.ToText();
  cp.seed = config.run.seed;
  AppendTensors(cp, policy.Parameters());
  return cp;
}

Checkpoint MakeSacCheckpoint(const TrainConfig& config,
                             const algos::SacNets& nets) {
  Checkpoint cp = MakePolicyCheckpoint(config, *nets.policy);
  const policy::Critic& value = *nets.value;
  const policy::Critic& value_target = *nets.value_target;
  const policy::Critic& q1 = *nets.q1;
  const policy::Critic& q2 = *nets.q2;
  AppendTensors(cp, value.Parameters(), "value.");
  AppendTensors(cp, value_target.Parameters(), "value_target.");
  AppendTensors(cp, q1.Parameters(), "q1.");
  AppendTensors(cp, q2.Parameters(), "q2.");
  return cp;
}

TrainResult Train(const TrainConfig& config,
                  const std::filesystem::path& out_dir,
                  const RowCallback& on_row) {
  config.Validate();
  if (config.run.algo == "ppo") return TrainPpo(config, out_dir, on_row);
  return TrainSac(config, out_dir, on_row);
}

TrainResult TrainGeneral(TrainConfig config,
                         const std::filesystem::path& out_dir,
                         const RowCallback& on_row) {
  config.run.policy = "casnet";
  if (config.run.envs.empty()) config.run.train_set = true;
  return Train(config, out_dir, on_row);
}

TrainResult TrainExpert(std::string_view env_name, TrainConfig config,
                        const std::filesystem::path& out_dir,
                        const RowCallback& on_row) {
  config.run.policy = "expert";
  config.run.train_set = false;
  config.run.envs = {envs::FindSpec(env_name).name};
  return Train(config, out_dir, on_row);
}

}  // namespace casnet::harness
