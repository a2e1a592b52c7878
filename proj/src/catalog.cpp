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

#include "pairminer/catalog.hpp"

#include <fstream>
#include <set>
#include <unordered_set>
#include <utility>

#include <boost/regex.hpp>
#include <fmt/format.h>

#include "pairminer/error.hpp"

namespace pairminer {

struct RegexCatalog::Impl {
  std::vector<CodePattern> patterns;
  std::vector<boost::regex> compiled;
};

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view what) {
  return text.substr(pos, what.size()) == what;
}

/// Shrinks [begin, end) past whitespace and code delimiters.
void strip_delimiters(std::string_view text, std::size_t& begin, std::size_t& end) {
  constexpr std::string_view open = "<code>";
  constexpr std::string_view close = "</code>";
  bool changed = true;
  while (changed && begin < end) {
    changed = false;
    while (begin < end && is_space(text[begin])) { ++begin; changed = true; }
    while (begin < end && is_space(text[end - 1])) { --end; changed = true; }
    while (begin < end && text[begin] == '`') { ++begin; changed = true; }
    while (begin < end && text[end - 1] == '`') { --end; changed = true; }
    if (end - begin >= open.size() && starts_with_at(text, begin, open)) {
      begin += open.size();
      changed = true;
    }
    if (end - begin >= close.size() && starts_with_at(text, end - close.size(), close)) {
      end -= close.size();
      changed = true;
    }
  }
}

}  // namespace

RegexCatalog::RegexCatalog(std::vector<CodePattern> patterns) {
  auto impl = std::make_shared<Impl>();
  std::unordered_set<std::string> names;
  for (const auto& p : patterns) {
    if (p.name.empty()) throw Error("regex catalog: pattern with empty name");
    if (!names.insert(p.name).second) {
      throw Error(fmt::format("regex catalog: duplicate pattern name '{}'", p.name));
    }
    try {
      impl->compiled.emplace_back(p.expression, boost::regex::perl);
    } catch (const boost::regex_error& e) {
      throw Error(fmt::format("regex catalog: pattern '{}' ({}) does not compile: {}", p.name,
                              p.expression, e.what()));
    }
  }
  impl->patterns = std::move(patterns);
  impl_ = std::move(impl);
}

RegexCatalog RegexCatalog::from_json(const nlohmann::json& doc, std::string_view source) {
  if (!doc.is_array()) {
    throw Error(fmt::format("{}: regex catalog must be a JSON array", source));
  }
  std::vector<CodePattern> patterns;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("pattern") ||
        !entry["name"].is_string() || !entry["pattern"].is_string()) {
      throw Error(fmt::format("{}: catalog entry {} must have string fields 'name' and 'pattern'",
                              source, i));
    }
    patterns.push_back({entry["name"].get<std::string>(), entry["pattern"].get<std::string>()});
  }
  return RegexCatalog(std::move(patterns));
}

const RegexCatalog& RegexCatalog::builtin() {
  static const RegexCatalog catalog =
      from_json(nlohmann::json::parse(builtin_json()), "builtin catalog");
  return catalog;
}

std::span<const CodePattern> RegexCatalog::patterns() const { return impl_->patterns; }

RegexCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot read catalog '{}'", path.string()));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(fmt::format("{}: malformed catalog JSON: {}", path.string(), e.what()));
  }
  return RegexCatalog::from_json(doc, path.string());
}

TermBag extract_terms(std::string_view text, const RegexCatalog& catalog) {
  TermBag bag;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const char* const base = text.data();
  for (const auto& re : catalog.impl().compiled) {
    boost::cregex_iterator it(base, base + text.size(), re, boost::match_not_dot_newline);
    for (const boost::cregex_iterator end; it != end; ++it) {
      const auto& m = (*it)[0];
      std::size_t begin = static_cast<std::size_t>(m.first - base);
      std::size_t stop = static_cast<std::size_t>(m.second - base);
      strip_delimiters(text, begin, stop);
      if (stop - begin < kMinTermLength) continue;
      if (!seen.emplace(begin, stop).second) continue;
      bag.add(text.substr(begin, stop - begin));
    }
  }
  return bag;
}

TermBag extract_terms(std::span<const std::string> code_blocks, const RegexCatalog& catalog) {
  TermBag bag;
  for (const auto& block : code_blocks) bag.merge(extract_terms(block, catalog));
  return bag;
}

}  // namespace pairminer
