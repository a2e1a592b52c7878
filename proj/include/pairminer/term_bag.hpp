// Copyright 2026 The pairminer Authors.
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

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace pairminer {

/// Multiset of code terms: term -> occurrence count, counts always >= 1.
class TermBag {
 public:
  using Map = std::map<std::string, std::int64_t, std::less<>>;
  using const_iterator = Map::const_iterator;

  TermBag() = default;
  TermBag(std::initializer_list<std::pair<const std::string, std::int64_t>> entries);

  /// Adds `n` occurrences. Throws Error for an empty term or n < 1.
  void add(std::string_view term, std::int64_t n = 1);
  void merge(const TermBag& other);

  std::int64_t count(std::string_view term) const;
  bool contains(std::string_view term) const { return entries_.find(term) != entries_.end(); }
  /// Sum of all counts.
  std::int64_t total() const;
  std::size_t distinct() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const Map& entries() const { return entries_; }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  friend bool operator==(const TermBag&, const TermBag&) = default;

 private:
  Map entries_;
};

/// Per-term |count_a - count_b|; terms whose difference is zero are omitted.
TermBag symmetric_difference(const TermBag& a, const TermBag& b);

}  // namespace pairminer
