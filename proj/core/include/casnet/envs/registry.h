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
#ifndef CASNET_ENVS_REGISTRY_H_
#define CASNET_ENVS_REGISTRY_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace casnet::envs {

// A planar reacher: revolute joints in series, lengths ordered base to tip.
struct ReacherSpec {
  std::string name;
  std::vector<double> link_lengths;
  bool train_member = false;

  std::size_t num_links() const { return link_lengths.size(); }
  friend bool operator==(const ReacherSpec&, const ReacherSpec&) = default;
};

// The 18 reacher models, in table order. Five are marked for training.
const std::vector<ReacherSpec>& Registry();

// Throws LookupError for unknown names.
const ReacherSpec& FindSpec(std::string_view name);
// Position of a spec in Registry(); throws LookupError.
std::size_t SpecIndex(std::string_view name);

std::vector<ReacherSpec> TrainSet();
std::vector<ReacherSpec> TestSet();

// "name,n_links,lengths,train_member" header plus one row per spec; lengths
// are semicolon-joined.
std::string RegistryCsv();

}  // namespace casnet::envs

#endif  // CASNET_ENVS_REGISTRY_H_
