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

#include "pairminer/analytics.hpp"

#include <map>

#include <gtest/gtest.h>

#include "pairminer/error.hpp"
#include "test_support.hpp"

namespace pairminer {
namespace {

using testing::fixture;
using testing::make_timeline;
using testing::spit;
using testing::TempDir;

const char* kHeader = "answer_id,comment_id,confirmed,tangled,useful,category\n";

TEST(Annotations, ReaderParsesOptionalCells) {
  TempDir dir;
  spit(dir / "a.csv", std::string(kHeader) + "1,2,1,0,1,Flaw\n1,3,0,,,\n4,5,1,1,,\n");
  const auto rows = read_annotations(dir / "a.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].confirmed);
  EXPECT_EQ(rows[0].tangled, false);
  EXPECT_EQ(rows[0].useful, true);
  EXPECT_EQ(rows[0].category, Category::Flaw);
  EXPECT_FALSE(rows[1].confirmed);
  EXPECT_FALSE(rows[2].useful);
  EXPECT_FALSE(rows[2].category);
}

TEST(Annotations, ReaderRejectsBadRows) {
  TempDir dir;
  spit(dir / "a.csv", std::string(kHeader) + "1,2,1,0,1,Flaw\n1,3,0,1,,\n");
  try {
    read_annotations(dir / "a.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  spit(dir / "b.csv", std::string(kHeader) + "1,2,1,0,1,Praise\n");
  EXPECT_THROW(read_annotations(dir / "b.csv"), ParseError);
  spit(dir / "c.csv", std::string(kHeader) + "1,2,maybe,0,1,Flaw\n");
  EXPECT_THROW(read_annotations(dir / "c.csv"), ParseError);
  EXPECT_THROW(read_annotations(dir / "none.csv"), InputError);
}

TEST(Annotations, CategoryNamesRoundTrip) {
  for (Category c : kAllCategories) EXPECT_EQ(parse_category(to_string(c)), c);
  EXPECT_FALSE(parse_category("Praise"));
}

struct OracleRow {
  std::string tag;
  bool confirmed, tangled, useful;
  std::string category;
};

// Split on commas; the fixture has no quoted cells.
std::vector<OracleRow> oracle_rows(const TagMap& tags) {
  std::istringstream in(testing::slurp(fixture("annotated") / "annotations.csv"));
  std::string line;
  std::getline(in, line);
  std::vector<OracleRow> out;
  while (std::getline(in, line)) {
    std::vector<std::string> cell;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        cell.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    out.push_back({tags.at(std::stoll(cell[0])), cell[2] == "1", cell[3] == "1", cell[4] == "1", cell[5]});
  }
  return out;
}

class AnnotatedCorpus : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dump_ = new LoadedDump(load_dump(testing::dump_paths(fixture("annotated"))));
    notes_ = new std::vector<PairAnnotation>(read_annotations(fixture("annotated") / "annotations.csv"));
  }
  static void TearDownTestSuite() {
    delete dump_;
    delete notes_;
  }
  static LoadedDump* dump_;
  static std::vector<PairAnnotation>* notes_;
};
LoadedDump* AnnotatedCorpus::dump_ = nullptr;
std::vector<PairAnnotation>* AnnotatedCorpus::notes_ = nullptr;

TEST_F(AnnotatedCorpus, CategoryCountsAgreeWithOracle) {
  const TagMap tags = tags_of(dump_->timelines);
  std::map<std::string, std::pair<std::size_t, std::size_t>> expect;
  std::size_t confirmed = 0, useful = 0;
  for (const auto& r : oracle_rows(tags)) {
    if (!r.confirmed) continue;
    ++confirmed;
    useful += r.useful;
    auto& e = expect[r.category];
    ++e.first;
    e.second += r.useful;
  }
  const auto counts = category_counts(*notes_);
  EXPECT_EQ(counts.total_all, confirmed);
  EXPECT_EQ(counts.total_useful, useful);
  ASSERT_EQ(counts.rows.size(), kAllCategories.size());
  for (Category c : kAllCategories) {
    const auto& e = expect[std::string(to_string(c))];
    EXPECT_EQ(counts.row(c).all, e.first) << to_string(c);
    EXPECT_EQ(counts.row(c).useful, e.second) << to_string(c);
  }
  EXPECT_EQ(counts.total_all, 1482u);
  EXPECT_EQ(counts.row(Category::Correction).all, 199u);
  EXPECT_EQ(counts.row(Category::Correction).useful, 133u);
  EXPECT_EQ(counts.row(Category::Error).all, 511u);
  EXPECT_EQ(counts.row(Category::Error).useful, 137u);
}

TEST_F(AnnotatedCorpus, TangledRatesAgreeWithOracle) {
  const TagMap tags = tags_of(dump_->timelines);
  std::map<std::string, TangledRow> expect;
  for (const auto& r : oracle_rows(tags)) {
    if (!r.confirmed) continue;
    for (const std::string& key : {r.tag, std::string("Overall")}) {
      auto& e = expect[key];
      ++e.confirmed;
      e.tangled += r.tangled;
      e.useful += r.useful;
      e.useful_tangled += r.useful && r.tangled;
    }
  }
  const auto rows = tangled_rate(*notes_, tags);
  ASSERT_EQ(rows.size(), expect.size());
  EXPECT_EQ(rows.back().tag, "Overall");
  for (const auto& row : rows) {
    const auto& e = expect.at(row.tag);
    EXPECT_EQ(row.confirmed, e.confirmed) << row.tag;
    EXPECT_EQ(row.tangled, e.tangled) << row.tag;
    EXPECT_EQ(row.useful, e.useful) << row.tag;
    EXPECT_EQ(row.useful_tangled, e.useful_tangled) << row.tag;
    EXPECT_DOUBLE_EQ(row.tangled_rate, static_cast<double>(e.tangled) / e.confirmed);
  }
  EXPECT_EQ(rows.back().confirmed, 1482u);
  EXPECT_EQ(rows.back().tangled, 161u);
  EXPECT_EQ(rows.back().useful, 396u);
  EXPECT_EQ(rows.back().useful_tangled, 39u);

  const auto java = filter_by_tag(*notes_, tags, "java");
  for (const auto& a : java) EXPECT_EQ(tags.at(a.answer_id), "java");
  EXPECT_EQ(tangled_rate(java, tags).back().confirmed, expect.at("java").confirmed);
}

TEST_F(AnnotatedCorpus, FormattedTablesListCategoriesWithOtherLast) {
  const auto counts = category_counts(*notes_);
  const std::string text = format_category_counts({{"java", counts}}, counts);
  const auto other = text.find("Other");
  ASSERT_NE(other, std::string::npos);
  for (Category c : kAllCategories) {
    if (c == Category::Other) continue;
    const auto at = text.find(std::string(to_string(c)));
    ASSERT_NE(at, std::string::npos);
    EXPECT_LT(at, other);
  }
  EXPECT_EQ(category_counts_to_json(counts).at("total_all"), 1482);
}

std::vector<AnswerTimeline> relationship_corpus() {
  // answerer 7, questioner 1
  return {make_timeline(10, 7, {{7, 0, {"a"}}, {7, 60, {"b"}}}, {{1, 1, 30, "x"}}),
          make_timeline(20, 7, {{7, 0, {"a"}}, {9, 120, {"b"}}}, {{2, 9, 0, "y"}, {3, 5, 60, "z"}})};
}

TEST(Relationships, FactsJoinPairAnnotationAndTimeline) {
  const auto timelines = relationship_corpus();
  const std::vector<CommentEditPair> pairs = {{10, 1, 2, {}}, {20, 2, 2, {}}, {20, 3, 2, {}}};
  const std::vector<PairAnnotation> notes = {{10, 1, true, false, true, Category::Flaw},
                                             {20, 2, true, false, false, Category::Flaw},
                                             {20, 3, true, false, false, Category::Question},
                                             {20, 4, false, {}, {}, {}}};
  const auto facts = derive_pair_facts(pairs, notes, timelines);
  ASSERT_EQ(facts.size(), 3u);
  EXPECT_EQ(facts[0].commenter, 1);
  EXPECT_EQ(facts[0].questioner, 1);
  EXPECT_EQ(facts[0].editor, 7);
  EXPECT_DOUBLE_EQ(facts[0].response_seconds, 1800.0);
  EXPECT_EQ(facts[1].editor, 9);
  EXPECT_DOUBLE_EQ(facts[1].response_seconds, 7200.0);

  const auto rows = aggregate_relationships(facts, {3600.0});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].category, Category::Flaw);
  EXPECT_EQ(rows[0].pairs, 2u);
  EXPECT_EQ(rows[0].commenter_editor_same, 1u);  // answer 20, comment 2
  EXPECT_EQ(rows[0].answerer_editor_same, 1u);
  EXPECT_EQ(rows[0].questioner_commenter_same, 1u);
  EXPECT_EQ(rows[0].response_outliers, 1u);
  EXPECT_DOUBLE_EQ(rows[0].mean_response_seconds, 1800.0);
  EXPECT_FALSE(rows.back().category);
  EXPECT_EQ(rows.back().pairs, 3u);

  const auto table = questioner_contingency(facts);
  ASSERT_EQ(table.categories.size(), 2u);
  EXPECT_EQ(table.counts[0], (std::vector<double>{1, 1}));
  EXPECT_EQ(table.counts[1], (std::vector<double>{0, 1}));
  EXPECT_FALSE(format_relationships(rows).empty());
  EXPECT_EQ(relationships_to_json(rows).size(), 3u);
}

TEST(Relationships, UnresolvablePairsAreErrors) {
  const auto timelines = relationship_corpus();
  const std::vector<PairAnnotation> notes = {{10, 1, true, false, true, Category::Flaw}};
  EXPECT_THROW(derive_pair_facts({}, notes, timelines), Error);
  const std::vector<CommentEditPair> bad_version = {{10, 1, 5, {}}};
  EXPECT_THROW(derive_pair_facts(bad_version, notes, timelines), Error);
  auto orphan = timelines;
  orphan[0].questioner_id.reset();
  const std::vector<CommentEditPair> ok = {{10, 1, 2, {}}};
  EXPECT_THROW(derive_pair_facts(ok, notes, orphan), Error);
}

TEST(Relationships, PairwiseTestsCoverPresentCategories) {
  std::vector<PairFacts> facts;
  const Category cats[] = {Category::Correction, Category::Flaw, Category::Question};
  for (int i = 0; i < 30; ++i) {
    PairFacts f;
    f.category = cats[i % 3];
    f.score = i * (i % 3 + 1);
    f.response_seconds = 100.0 * i;
    facts.push_back(f);
  }
  const auto tests = pairwise_rank_sum(facts, FactMeasure::score);
  ASSERT_EQ(tests.size(), 3u);
  std::vector<double> raw;
  for (const auto& t : tests) raw.push_back(t.result.p);
  const auto adjusted = bh_adjust(raw);
  for (std::size_t i = 0; i < tests.size(); ++i) {
    EXPECT_DOUBLE_EQ(tests[i].p_adjusted, adjusted[i]);
    EXPECT_DOUBLE_EQ(tests[i].result.p,
                     rank_sum_test(
                         [&] {
                           std::vector<double> v;
                           for (const auto& f : facts)
                             if (f.category == tests[i].first) v.push_back(static_cast<double>(f.score));
                           return v;
                         }(),
                         [&] {
                           std::vector<double> v;
                           for (const auto& f : facts)
                             if (f.category == tests[i].second) v.push_back(static_cast<double>(f.score));
                           return v;
                         }())
                         .p);
  }
  EXPECT_EQ(tests[0].first, Category::Correction);
  EXPECT_EQ(tests[0].second, Category::Flaw);
  // Cutting everything above 500 s leaves 6 values in total.
  const auto trimmed = pairwise_rank_sum(facts, FactMeasure::response_time, {500.0});
  EXPECT_EQ(trimmed.size(), 3u);
}

}  // namespace
}  // namespace pairminer
