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

#include "pairminer/term_bag.hpp"

#include "pairminer/error.hpp"

namespace pairminer {

TermBag::TermBag(std::initializer_list<std::pair<const std::string, std::int64_t>> entries) {
  for (const auto& [term, n] : entries) add(term, n);
}

void TermBag::add(std::string_view term, std::int64_t n) {
  if (term.empty()) throw Error("term bag: empty term");
  if (n < 1) throw Error("term bag: count must be >= 1");
  if (auto it = entries_.find(term); it != entries_.end()) {
    it->second += n;
  } else {
    entries_.emplace(std::string(term), n);
  }
}

void TermBag::merge(const TermBag& other) {
  for (const auto& [term, n] : other) add(term, n);
}

std::int64_t TermBag::count(std::string_view term) const {
  const auto it = entries_.find(term);
  return it == entries_.end() ? 0 : it->second;
}

std::int64_t TermBag::total() const {
  std::int64_t sum = 0;
  for (const auto& [term, n] : entries_) sum += n;
  return sum;
}

TermBag symmetric_difference(const TermBag& a, const TermBag& b) {
  // Linear merge over the two sorted maps.
  TermBag out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.add(ia->first, ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.add(ib->first, ib->second);
      ++ib;
    } else {
      const auto diff = ia->second > ib->second ? ia->second - ib->second : ib->second - ia->second;
      if (diff > 0) out.add(ia->first, diff);
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace pairminer
