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
#include "casnet/harness/config.h"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "casnet/errors.h"
#include "harness/text.h"

namespace casnet::harness {
namespace {

struct Field {
  std::string key;
  std::function<std::string(const TrainConfig&)> get;
  std::function<bool(TrainConfig&, std::string_view)> set;
};

template <typename T>
Field Number(std::string key, T TrainConfig::*section, auto member) {
  Field f;
  f.key = std::move(key);
  f.get = [section, member](const TrainConfig& c) {
    const auto v = (c.*section).*member;
    if constexpr (std::is_floating_point_v<decltype(v)>) {
      return text::FormatDouble(v);
    } else {
      return std::to_string(v);
    }
  };
  f.set = [section, member](TrainConfig& c, std::string_view s) {
    using V = std::remove_reference_t<decltype((c.*section).*member)>;
    auto v = text::ParseNumber<V>(s);
    if (!v) return false;
    (c.*section).*member = *v;
    return true;
  };
  return f;
}

template <typename T>
Field Flag(std::string key, T TrainConfig::*section, bool T::*member) {
  return {std::move(key),
          [section, member](const TrainConfig& c) -> std::string {
            return (c.*section).*member ? "true" : "false";
          },
          [section, member](TrainConfig& c, std::string_view s) {
            auto v = text::ParseBool(s);
            if (!v) return false;
            (c.*section).*member = *v;
            return true;
          }};
}

Field Word(std::string key, std::string RunConfig::*member) {
  return {std::move(key),
          [member](const TrainConfig& c) { return c.run.*member; },
          [member](TrainConfig& c, std::string_view s) {
            if (s.empty()) return false;
            c.run.*member = std::string(s);
            return true;
          }};
}

const std::vector<Field>& Fields() {
  using algos::PpoConfig;
  using algos::SacConfig;
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back(Word("run.algo", &RunConfig::algo));
    f.push_back(Word("run.policy", &RunConfig::policy));
    f.push_back({"run.envs",
                 [](const TrainConfig& c) {
                   std::string out;
                   for (const auto& e : c.run.envs) {
                     if (!out.empty()) out += ",";
                     out += e;
                   }
                   return out;
                 },
                 [](TrainConfig& c, std::string_view s) {
                   c.run.envs.clear();
                   if (s.empty()) return true;
                   for (auto part : text::Split(s, ',')) {
                     part = text::Trim(part);
                     if (part.empty()) return false;
                     c.run.envs.emplace_back(part);
                   }
                   return true;
                 }});
    f.push_back(Flag("run.train_set", &TrainConfig::run, &RunConfig::train_set));
    f.push_back(Number("run.seed", &TrainConfig::run, &RunConfig::seed));
    f.push_back(Number("run.total_env_steps", &TrainConfig::run,
                       &RunConfig::total_env_steps));
    f.push_back(Number("run.checkpoint_every", &TrainConfig::run,
                       &RunConfig::checkpoint_every));
    f.push_back(Number("run.envs_per_spec", &TrainConfig::run,
                       &RunConfig::envs_per_spec));
    f.push_back(Number("run.eval_interval", &TrainConfig::run,
                       &RunConfig::eval_interval));
    f.push_back(Number("run.eval_episodes", &TrainConfig::run,
                       &RunConfig::eval_episodes));
    f.push_back(Number("run.target_distance", &TrainConfig::run,
                       &RunConfig::target_distance));

    f.push_back(Number("ppo.gamma", &TrainConfig::ppo, &PpoConfig::gamma));
    f.push_back(Number("ppo.lambda", &TrainConfig::ppo, &PpoConfig::lambda));
    f.push_back(Number("ppo.clip", &TrainConfig::ppo, &PpoConfig::clip));
    f.push_back(Number("ppo.lr", &TrainConfig::ppo, &PpoConfig::lr));
    f.push_back(Number("ppo.epochs", &TrainConfig::ppo, &PpoConfig::epochs));
    f.push_back(
        Number("ppo.minibatch", &TrainConfig::ppo, &PpoConfig::minibatch));
    f.push_back(
        Number("ppo.rollout_len", &TrainConfig::ppo, &PpoConfig::rollout_len));
    f.push_back(
        Number("ppo.value_coef", &TrainConfig::ppo, &PpoConfig::value_coef));
    f.push_back(Number("ppo.entropy_coef", &TrainConfig::ppo,
                       &PpoConfig::entropy_coef));
    f.push_back(Number("ppo.max_grad_norm", &TrainConfig::ppo,
                       &PpoConfig::max_grad_norm));
    f.push_back(Flag("ppo.normalize_advantages", &TrainConfig::ppo,
                     &PpoConfig::normalize_advantages));

    f.push_back(Number("sac.gamma", &TrainConfig::sac, &SacConfig::gamma));
    f.push_back(Number("sac.alpha", &TrainConfig::sac, &SacConfig::alpha));
    f.push_back(Number("sac.tau", &TrainConfig::sac, &SacConfig::tau));
    f.push_back(Number("sac.lr", &TrainConfig::sac, &SacConfig::lr));
    f.push_back(Number("sac.replay_capacity", &TrainConfig::sac,
                       &SacConfig::replay_capacity));
    f.push_back(
        Number("sac.batch_size", &TrainConfig::sac, &SacConfig::batch_size));
    f.push_back(Number("sac.warmup_steps", &TrainConfig::sac,
                       &SacConfig::warmup_steps));
    f.push_back(Number("sac.updates_per_cycle", &TrainConfig::sac,
                       &SacConfig::updates_per_cycle));
    f.push_back(
        Flag("sac.fixed_goal", &TrainConfig::sac, &SacConfig::fixed_goal));

    f.push_back(Number("eval.random_policies", &TrainConfig::eval,
                       &EvalConfig::random_policies));
    f.push_back(
        Number("eval.episodes", &TrainConfig::eval, &EvalConfig::episodes));
    return f;
  }();
  return fields;
}

}  // namespace

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& f : Fields()) keys.push_back(f.key);
  return keys;
}

TrainConfig ParseConfig(std::string_view content, std::string_view origin) {
  TrainConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view line : text::Split(content, '\n')) {
    ++line_no;
    auto where = [&] {
      return std::string(origin) + ":" + std::to_string(line_no) + ": ";
    };
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where() + "expected 'key = value'");
    }
    const std::string_view key = text::Trim(line.substr(0, eq));
    const std::string_view value = text::Trim(line.substr(eq + 1));
    const Field* field = nullptr;
    for (const auto& f : Fields()) {
      if (f.key == key) field = &f;
    }
    if (field == nullptr) {
      throw ConfigError(where() + "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where() + "duplicate key '" + std::string(key) + "'");
    }
    if (!field->set(config, value)) {
      throw ConfigError(where() + "bad value '" + std::string(value) +
                        "' for " + std::string(key));
    }
  }
  return config;
}

TrainConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading config " + path.string());
  return ParseConfig(ss.str(), path.string());
}

void ApplySeedOverride(TrainConfig& config) {
  const char* env = std::getenv("CASNET_SEED");
  if (env == nullptr) return;
  auto seed = text::ParseNumber<std::uint64_t>(env);
  if (!seed) {
    throw ConfigError(std::string("CASNET_SEED is not an unsigned integer: ") +
                      env);
  }
  config.run.seed = *seed;
}

std::string TrainConfig::ToText() const {
  std::string out;
  for (const auto& f : Fields()) out += f.key + " = " + f.get(*this) + "\n";
  return out;
}

std::vector<envs::ReacherSpec> TrainConfig::ResolveEnvs() const {
  if (run.train_set) {
    if (!run.envs.empty()) {
      throw ConfigError("run.envs and run.train_set are mutually exclusive");
    }
    return envs::TrainSet();
  }
  std::vector<envs::ReacherSpec> specs;
  std::set<std::string, std::less<>> names;
  for (const auto& name : run.envs) {
    if (!names.insert(name).second) {
      throw ConfigError("env listed twice: " + name);
    }
    specs.push_back(envs::FindSpec(name));
  }
  return specs;
}

void TrainConfig::Validate() const {
  if (run.algo != "ppo" && run.algo != "sac") {
    throw ConfigError("run.algo must be ppo or sac, got '" + run.algo + "'");
  }
  if (run.policy != "casnet" && run.policy != "expert") {
    throw ConfigError("run.policy must be casnet or expert, got '" +
                      run.policy + "'");
  }
  const auto specs = ResolveEnvs();
  if (specs.empty()) throw ConfigError("no environments selected");
  if (run.policy == "expert" && specs.size() != 1) {
    throw ConfigError("an expert policy trains on exactly one environment");
  }
  if (run.total_env_steps <= 0) {
    throw ConfigError("run.total_env_steps must be positive");
  }
  if (run.checkpoint_every <= 0 || run.envs_per_spec <= 0 ||
      run.eval_interval <= 0 || run.eval_episodes <= 0) {
    throw ConfigError(
        "run.checkpoint_every, envs_per_spec, eval_interval and "
        "eval_episodes must be positive");
  }
  if (!(run.target_distance >= 0.0)) {
    throw ConfigError("run.target_distance must be non-negative");
  }
  if (eval.random_policies < 1 || eval.episodes < 1) {
    throw ConfigError("eval.random_policies and eval.episodes must be >= 1");
  }
  if (run.algo == "ppo") {
    ppo.Validate();
    const std::size_t instances = specs.size() * run.envs_per_spec;
    if (static_cast<std::size_t>(ppo.rollout_len) < instances) {
      throw ConfigError("ppo.rollout_len is smaller than the number of env "
                        "instances");
    }
  } else {
    sac.Validate();
  }
}

}  // namespace casnet::harness
