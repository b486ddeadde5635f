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
#ifndef CASNET_ALGOS_REPLAY_BUFFER_H_
#define CASNET_ALGOS_REPLAY_BUFFER_H_

#include <cstddef>
#include <vector>

#include "casnet/nn/init.h"

namespace casnet::algos {

struct Transition {
  std::size_t num_links = 0;
  std::vector<double> obs;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_obs;
  bool done = false;
};

// Fixed-capacity ring; once full, each insert overwrites the oldest entry.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void Insert(Transition transition);
  // Uniform with replacement over current contents. Throws ProtocolError
  // when fewer than batch transitions are stored.
  std::vector<std::size_t> SampleIndices(std::size_t batch,
                                         nn::Rng& rng) const;

  const Transition& at(std::size_t i) const { return items_.at(i); }
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> items_;
};

}  // namespace casnet::algos

#endif  // CASNET_ALGOS_REPLAY_BUFFER_H_
