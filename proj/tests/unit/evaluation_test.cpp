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

#include "pairminer/evaluation.hpp"

#include <map>
#include <tuple>

#include <gtest/gtest.h>

#include "pairminer/error.hpp"
#include "pairminer/text_table.hpp"
#include "test_support.hpp"

namespace pairminer {
namespace {

using testing::fixture;
using testing::spit;
using testing::TempDir;

struct Counts {
  std::size_t existing = 0, detected = 0, correct = 0;
};

// Counts straight from the CSV text and a plain scan over the pairs.
std::map<std::string, Counts> oracle_counts(const std::vector<CommentEditPair>& pairs,
                                            const std::filesystem::path& gt_csv, const TagMap& tags) {
  std::map<std::tuple<PostId, CommentId>, int> truth;
  std::map<std::string, Counts> out;
  std::istringstream in(testing::slurp(gt_csv));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    const PostId a = std::stoll(line.substr(0, c1));
    const CommentId c = std::stoll(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string v = line.substr(c2 + 1);
    truth[{a, c}] = v.empty() ? 0 : std::stoi(v);
    if (!v.empty()) ++out[tags.at(a)].existing;
  }
  for (const auto& p : pairs) {
    auto& row = out[tags.at(p.answer_id)];
    ++row.detected;
    const auto it = truth.find({p.answer_id, p.comment_id});
    if (it != truth.end() && it->second == p.edit_version) ++row.correct;
  }
  return out;
}

class GroundTruthCorpus : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dump_ = new LoadedDump(load_dump(testing::dump_paths(fixture("ground_truth"))));
    gt_ = new std::vector<GroundTruthEntry>(read_ground_truth(fixture("ground_truth") / "ground_truth.csv"));
  }
  static void TearDownTestSuite() {
    delete dump_;
    delete gt_;
  }
  static LoadedDump* dump_;
  static std::vector<GroundTruthEntry>* gt_;
};
LoadedDump* GroundTruthCorpus::dump_ = nullptr;
std::vector<GroundTruthEntry>* GroundTruthCorpus::gt_ = nullptr;

TEST_F(GroundTruthCorpus, ScoreAgreesWithOracle) {
  const TagMap tags = tags_of(dump_->timelines);
  for (bool baseline : {false, true}) {
    const auto pairs = baseline ? baseline_corpus(dump_->timelines)
                                : match_corpus(dump_->timelines, RegexCatalog::builtin(), {});
    const auto report = score(pairs, *gt_, tags);
    const auto expect = oracle_counts(pairs, fixture("ground_truth") / "ground_truth.csv", tags);
    ASSERT_EQ(report.rows.size(), expect.size() + 1);
    Counts total;
    for (const auto& [tag, c] : expect) {
      const EvalRow* row = report.find(tag);
      ASSERT_NE(row, nullptr) << tag;
      EXPECT_EQ(row->existing, c.existing) << tag;
      EXPECT_EQ(row->detected, c.detected) << tag;
      EXPECT_EQ(row->correct, c.correct) << tag;
      EXPECT_DOUBLE_EQ(row->precision, static_cast<double>(c.correct) / c.detected);
      EXPECT_DOUBLE_EQ(row->recall, static_cast<double>(c.correct) / c.existing);
      total.existing += c.existing;
      total.detected += c.detected;
      total.correct += c.correct;
    }
    EXPECT_EQ(report.overall().tag, kOverallTag);
    EXPECT_EQ(report.overall().existing, total.existing);
    EXPECT_EQ(report.overall().detected, total.detected);
    EXPECT_EQ(report.overall().correct, total.correct);
  }
}

TEST_F(GroundTruthCorpus, OverallCountsAndRates) {
  const auto report = score(match_corpus(dump_->timelines, RegexCatalog::builtin(), {}), *gt_, tags_of(dump_->timelines));
  EXPECT_EQ(report.overall().existing, 194u);
  EXPECT_EQ(report.overall().detected, 88u);
  EXPECT_EQ(report.overall().correct, 62u);
  EXPECT_EQ(percent(report.overall().recall), "32%");
  EXPECT_EQ(percent(report.overall().precision), "70%");
}

TEST_F(GroundTruthCorpus, SweepRecallNeverRises) {
  const std::vector<double> th = {60, 70, 80, 90, 100};
  const auto points = threshold_sweep(dump_->timelines, RegexCatalog::builtin(), *gt_, th);
  ASSERT_EQ(points.size(), th.size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    EXPECT_LE(points[i].detected, points[i - 1].detected);
    EXPECT_LE(points[i].recall, points[i - 1].recall);
  }
  const std::vector<double> descending = {90, 80};
  EXPECT_THROW(threshold_sweep(dump_->timelines, RegexCatalog::builtin(), *gt_, descending), Error);
  const std::string csv = format_sweep_csv(points);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  EXPECT_EQ(sweep_to_json(points).size(), 5u);
}

TEST(GroundTruth, ReaderRejectsBadRows) {
  TempDir dir;
  spit(dir / "a.csv", "answer_id,comment_id,edit_version\n1,2,\n1,3,4\n");
  const auto ok = read_ground_truth(dir / "a.csv");
  ASSERT_EQ(ok.size(), 2u);
  EXPECT_FALSE(ok[0].edit_version);
  EXPECT_EQ(ok[1].edit_version, 4);

  spit(dir / "b.csv", "answer,comment,version\n");
  EXPECT_THROW(read_ground_truth(dir / "b.csv"), ParseError);
  spit(dir / "c.csv", "answer_id,comment_id,edit_version\n1,2,1\n");
  EXPECT_THROW(read_ground_truth(dir / "c.csv"), ParseError);
  spit(dir / "d.csv", "answer_id,comment_id,edit_version\n1,2,\n1,2,3\n");
  try {
    read_ground_truth(dir / "d.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(read_ground_truth(dir / "none.csv"), InputError);
}

TEST(GroundTruth, UnknownAnswerIsAnError) {
  const std::vector<GroundTruthEntry> gt = {{5, 1, 2}};
  EXPECT_THROW(score({}, gt, TagMap{}), Error);
  EXPECT_THROW(score({}, {}, TagMap{{5, "java"}}), Error);
}

TEST(Kappa, TwoByTwo) {
  AgreementTable t{{"yes", "no"}, {{20, 5}, {10, 15}}};
  EXPECT_NEAR(cohen_kappa(t), 0.4, 1e-12);
  AgreementTable perfect{{"a", "b", "c"}, {{3, 0, 0}, {0, 4, 0}, {0, 0, 5}}};
  EXPECT_DOUBLE_EQ(cohen_kappa(perfect), 1.0);
  EXPECT_THROW(cohen_kappa(AgreementTable{{"a"}, {{4}}}), Error);
  EXPECT_THROW(cohen_kappa(AgreementTable{{"a", "b"}, {{1, 2}}}), Error);
}

TEST(Kappa, ReadsLabelledCsv) {
  TempDir dir;
  spit(dir / "k.csv", "label,yes,no\nyes,20,5\nno,10,15\n");
  EXPECT_NEAR(cohen_kappa(read_agreement_table(dir / "k.csv")), 0.4, 1e-12);
  spit(dir / "bad.csv", "label,yes,no\nno,20,5\nyes,10,15\n");
  EXPECT_THROW(read_agreement_table(dir / "bad.csv"), ParseError);
}

TEST(SampleSize, KnownValues) {
  EXPECT_EQ(sample_size(51358, 0.95, 0.05), 382);
  EXPECT_EQ(sample_size(65373, 0.95, 0.05), 382);
  EXPECT_EQ(sample_size(1'000'000'000, 0.95, 0.05), 385);
  EXPECT_EQ(sample_size(100, 0.95, 0.05), 80);
  EXPECT_EQ(sample_size(1, 0.95, 0.05), 1);
  EXPECT_THROW(sample_size(0, 0.95, 0.05), Error);
  EXPECT_THROW(sample_size(10, 1.0, 0.05), Error);
  EXPECT_THROW(sample_size(10, 0.95, 0.0), Error);
}

TEST(SampleSize, MonotoneAndBoundedByPopulation) {
  std::int64_t last = 0;
  for (std::int64_t n = 1; n < 200000; n = n * 3 / 2 + 1) {
    const auto s = sample_size(n, 0.95, 0.05);
    EXPECT_LE(s, n);
    EXPECT_GE(s, last);
    last = s;
    EXPECT_GE(sample_size(n, 0.99, 0.05), s);
    EXPECT_GE(sample_size(n, 0.95, 0.03), s);
  }
}

}  // namespace
}  // namespace pairminer
