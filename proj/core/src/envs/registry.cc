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
#include "casnet/envs/registry.h"

#include <charconv>
#include <sstream>

#include "casnet/errors.h"

namespace casnet::envs {

const std::vector<ReacherSpec>& Registry() {
  // Reacher_42 and Reacher_61 list a first length of "0.8" and "0.0.8" in
  // the source table; both are read as 0.08 to match the 0.07-0.17 range of
  // every other link.
  static const std::vector<ReacherSpec> kSpecs = {
      {"Reacher_10", {0.1}, true},
      {"Reacher_11", {0.15}, false},
      {"Reacher_12", {0.09}, false},
      {"Reacher_20", {0.12, 0.12}, true},
      {"Reacher_21", {0.09, 0.14}, false},
      {"Reacher_22", {0.13, 0.15}, false},
      {"Reacher_30", {0.15, 0.17, 0.09}, true},
      {"Reacher_31", {0.08, 0.11, 0.12}, false},
      {"Reacher_32", {0.1, 0.1, 0.15}, false},
      {"Reacher_40", {0.1, 0.16, 0.13, 0.09}, true},
      {"Reacher_41", {0.13, 0.14, 0.07, 0.07}, false},
      {"Reacher_42", {0.08, 0.15, 0.09, 0.11}, false},
      {"Reacher_50", {0.1, 0.1, 0.1, 0.1, 0.1}, true},
      {"Reacher_51", {0.15, 0.08, 0.09, 0.11, 0.13}, false},
      {"Reacher_52", {0.1, 0.09, 0.12, 0.1, 0.14}, false},
      {"Reacher_60", {0.1, 0.08, 0.15, 0.15, 0.1, 0.09}, false},
      {"Reacher_61", {0.08, 0.09, 0.07, 0.13, 0.14, 0.07}, false},
      {"Reacher_62", {0.1, 0.12, 0.08, 0.13, 0.07, 0.14}, false},
  };
  return kSpecs;
}

std::size_t SpecIndex(std::string_view name) {
  const auto& specs = Registry();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].name == name) return i;
  }
  throw LookupError("unknown environment: " + std::string(name));
}

const ReacherSpec& FindSpec(std::string_view name) {
  return Registry()[SpecIndex(name)];
}

std::vector<ReacherSpec> TrainSet() {
  std::vector<ReacherSpec> out;
  for (const auto& s : Registry()) {
    if (s.train_member) out.push_back(s);
  }
  return out;
}

std::vector<ReacherSpec> TestSet() {
  std::vector<ReacherSpec> out;
  for (const auto& s : Registry()) {
    if (!s.train_member) out.push_back(s);
  }
  return out;
}

std::string RegistryCsv() {
  std::ostringstream os;
  os << "name,n_links,lengths,train_member\n";
  for (const auto& s : Registry()) {
    os << s.name << ',' << s.num_links() << ',';
    for (std::size_t i = 0; i < s.link_lengths.size(); ++i) {
      if (i > 0) os << ';';
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof(buf), s.link_lengths[i]);
      os.write(buf, res.ptr - buf);
    }
    os << ',' << (s.train_member ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace casnet::envs
