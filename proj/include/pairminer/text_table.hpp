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

#include <string>
#include <vector>

namespace pairminer {

/// Aligned plain-text table. The first column is left-aligned, the rest
/// right-aligned; rule() inserts a horizontal separator.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);

  void row(std::vector<std::string> cells);
  void rule();
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;  // empty vector = rule
};

/// Rounds half away from zero and formats "NN%".
std::string percent(double fraction);
/// "count (NN%)", with the percentage rounded half up.
std::string count_percent(std::size_t count, std::size_t total);
/// Thousands separators: 1482 -> "1,482".
std::string with_commas(long long value);

}  // namespace pairminer
