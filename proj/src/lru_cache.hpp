// Copyright 2026 The tsapprox Authors.
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

#pragma once

#include <cstddef>
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

namespace tsapprox::detail {

// Mutex-guarded LRU map. Eviction is by total weight, where each entry
// carries a caller-supplied weight (1 for count-bounded caches).
template <typename Key, typename Value>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

  std::optional<Value> get(const Key& k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(k);
    if (it == index_.end()) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->value;
  }

  void put(const Key& k, Value v, std::size_t weight = 1) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(k);
    if (it != index_.end()) {
      weight_ -= it->second->weight;
      order_.erase(it->second);
      index_.erase(it);
    }
    order_.push_front(Node{k, std::move(v), weight});
    index_.emplace(k, order_.begin());
    weight_ += weight;
    while (weight_ > capacity_ && order_.size() > 1) {
      auto& last = order_.back();
      weight_ -= last.weight;
      index_.erase(last.key);
      order_.pop_back();
    }
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    order_.clear();
    index_.clear();
    weight_ = 0;
    hits_ = misses_ = 0;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return index_.size();
  }
  std::size_t hits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return hits_;
  }
  std::size_t misses() const {
    std::lock_guard<std::mutex> lock(mu_);
    return misses_;
  }

 private:
  struct Node {
    Key key;
    Value value;
    std::size_t weight;
  };

  std::size_t capacity_;
  std::size_t weight_ = 0;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
  std::list<Node> order_;
  std::map<Key, typename std::list<Node>::iterator> index_;
  mutable std::mutex mu_;
};

}  // namespace tsapprox::detail
