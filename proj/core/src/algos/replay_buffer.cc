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
#include "casnet/algos/replay_buffer.h"

#include <random>
#include <string>
#include <utility>

#include "casnet/errors.h"

namespace casnet::algos {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("replay capacity must be positive");
  items_.reserve(capacity < 4096 ? capacity : 4096);
}

void ReplayBuffer::Insert(Transition transition) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(transition));
  } else {
    items_[next_] = std::move(transition);
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::SampleIndices(std::size_t batch,
                                                     nn::Rng& rng) const {
  if (items_.size() < batch || batch == 0) {
    throw ProtocolError("replay holds " + std::to_string(items_.size()) +
                        " transitions, cannot sample " +
                        std::to_string(batch));
  }
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<std::size_t> out(batch);
  for (auto& i : out) i = pick(rng);
  return out;
}

}  // namespace casnet::algos
