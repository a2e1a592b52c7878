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

#include <random>

#include <gtest/gtest.h>

#include "pairminer/error.hpp"
#include "test_support.hpp"

namespace pairminer {
namespace {

const RegexCatalog& cat() { return RegexCatalog::builtin(); }

TEST(Catalog, BuiltinMatchesDataFile) {
  const auto from_file = load_catalog(testing::data_dir() / "catalog" / "default.json");
  ASSERT_EQ(from_file.patterns().size(), cat().patterns().size());
  for (std::size_t i = 0; i < from_file.patterns().size(); ++i) {
    EXPECT_EQ(from_file.patterns()[i].name, cat().patterns()[i].name);
    EXPECT_EQ(from_file.patterns()[i].expression, cat().patterns()[i].expression);
  }
}

TEST(Catalog, BacktickedCallAndDunderCountOnce) {
  const TermBag b = extract_terms("use `vars(a)` or `__dict__` directly", cat());
  EXPECT_EQ(b.count("vars(a)"), 1);
  EXPECT_EQ(b.count("__dict__"), 1);
}

TEST(Catalog, PlainMethodCall) {
  const TermBag b = extract_terms(
      "The question doesn't mention the user entering *EXIT*. Also, System.exit(0) will terminate the whole JVM",
      cat());
  EXPECT_EQ(b.count("System.exit(0)"), 1);
}

TEST(Catalog, EmptyAndShortInputs) {
  EXPECT_TRUE(extract_terms("", cat()).empty());
  EXPECT_TRUE(extract_terms("Thanks, this works for me now.", cat()).empty());
  // a single-character backtick span is below the minimum length
  EXPECT_TRUE(extract_terms("use `x` here", cat()).empty());
}

TEST(Catalog, IdentifierStyles) {
  const TermBag b = extract_terms("call getUserName on MyClass, then read max_retry_count and $userId", cat());
  EXPECT_EQ(b.count("getUserName"), 1);
  EXPECT_EQ(b.count("MyClass"), 1);
  EXPECT_EQ(b.count("max_retry_count"), 1);
  EXPECT_EQ(b.count("$userId"), 1);
  EXPECT_EQ(b.count("userId"), 1);  // the identifier itself, a different span
}

TEST(Catalog, CodeTagsStripped) {
  const TermBag b = extract_terms("try <code>list.sort()</code> instead", cat());
  EXPECT_EQ(b.count("list.sort()"), 1);
  EXPECT_FALSE(b.contains("<code>list.sort()</code>"));
}

TEST(Catalog, RepeatedTermsAreCounted) {
  const TermBag b = extract_terms("yourClientObject = make();\nyourClientObject.send(message);", cat());
  EXPECT_EQ(b.count("yourClientObject"), 2);
  EXPECT_EQ(b.count("yourClientObject.send(message)"), 1);
}

TEST(Catalog, BlocksAreSummed) {
  const std::vector<std::string> blocks = {"fooBar()", "fooBar x;"};
  EXPECT_EQ(extract_terms(blocks, cat()).count("fooBar"), 2);
}

TEST(Catalog, InvariantUnderTrailingWhitespace) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"getValue", "x.y(z)", "`code`", "snake_case_id", "plain", "(",
                                          ")", "__init__", "$var", "HttpClient", "\n"};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(words.size()) - 1), len(0, 25);
  for (int iter = 0; iter < 500; ++iter) {
    std::string text;
    for (int n = len(rng); n > 0; --n) text += words[pick(rng)] + " ";
    const TermBag base = extract_terms(text, cat());
    ASSERT_EQ(extract_terms(text + "   \t", cat()), base) << text;
    ASSERT_EQ(extract_terms(text, cat()), base);
  }
}

TEST(Catalog, RejectsBadPatterns) {
  EXPECT_THROW(RegexCatalog(std::vector<CodePattern>{{"broken", "(unclosed"}}), Error);
  EXPECT_THROW(RegexCatalog(std::vector<CodePattern>{{"a", "x"}, {"a", "y"}}), Error);
  try {
    RegexCatalog(std::vector<CodePattern>{{"ok", "x+"}, {"broken", "[a-"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos);
  }
  EXPECT_THROW(RegexCatalog::from_json(nlohmann::json::parse(R"([{"name": 1}])")), Error);
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), InputError);
}

TEST(Catalog, CustomCatalog) {
  const auto c = RegexCatalog::from_json(nlohmann::json::parse(R"([{"name": "num", "pattern": "[0-9]{2,}"}])"));
  const TermBag b = extract_terms("ids 12 and 345, not 7", c);
  EXPECT_EQ(b, (TermBag{{"12", 1}, {"345", 1}}));
}

}  // namespace
}  // namespace pairminer
