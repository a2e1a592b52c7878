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

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pairminer/term_bag.hpp"

namespace pairminer {

struct CodePattern {
  std::string name;
  std::string expression;
};

/// Ordered, immutable list of compiled code-term patterns. Copies share the
/// compiled state.
class RegexCatalog {
 public:
  /// Compiles every pattern. Throws Error naming the first pattern that does
  /// not compile or whose name is a duplicate.
  explicit RegexCatalog(std::vector<CodePattern> patterns);

  /// Parses a JSON array of {"name", "pattern"} objects.
  static RegexCatalog from_json(const nlohmann::json& doc, std::string_view source = "catalog");

  /// The catalog shipped in data/catalog/default.json.
  static const RegexCatalog& builtin();
  static std::string_view builtin_json();

  std::span<const CodePattern> patterns() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

RegexCatalog load_catalog(const std::filesystem::path& path);

/// Minimum length a term must have after delimiter stripping.
inline constexpr std::size_t kMinTermLength = 2;

/// Runs every pattern independently over the raw text and collects the
/// non-overlapping matches of each. Backtick and <code> delimiters and
/// surrounding whitespace are stripped. A text span captured by several
/// patterns is counted once.
TermBag extract_terms(std::string_view text, const RegexCatalog& catalog);

/// Terms of all code blocks of a version, summed.
TermBag extract_terms(std::span<const std::string> code_blocks, const RegexCatalog& catalog);

}  // namespace pairminer
