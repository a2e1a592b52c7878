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

#include "pairminer/cli.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "pairminer/evaluation.hpp"
#include "pairminer/matcher.hpp"
#include "test_support.hpp"

namespace pairminer {
namespace {

using testing::fixture;
using testing::slurp;
using testing::TempDir;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> with_out(const TempDir& dir, std::vector<std::string> rest) {
  std::vector<std::string> args = {"--out", dir.path().string()};
  args.insert(args.end(), rest.begin(), rest.end());
  return args;
}

Run ingest(const TempDir& dir, const std::string& name, std::vector<std::string> extra = {}) {
  auto args = with_out(dir, extra);
  args.insert(args.end(), {"ingest", "--dump", fixture(name).string()});
  return run(args);
}

std::size_t lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

TEST(Cli, SampleSizeCommand) {
  const auto r = run({"sample", "51358", "0.95", "0.05"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "382\n");
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(run({"--threshold", "140", "match"}).code, kExitInput);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MissingInputNamesThePath) {
  TempDir dir;
  const auto r = run(with_out(dir, {"match"}));
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("timelines.json"), std::string::npos) << r.err;
  const auto s = run(with_out(dir, {"ingest", "--posts", (dir / "p.jsonl").string(), "--versions", "v", "--comments", "c"}));
  EXPECT_EQ(s.code, kExitInput);
  EXPECT_NE(s.err.find("p.jsonl"), std::string::npos) << s.err;
}

TEST(Cli, IngestAndMatchRenamedVariable) {
  TempDir dir;
  auto r = ingest(dir, "renamed_variable");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Overall"), std::string::npos);
  r = run(with_out(dir, {"match"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pairs = read_pairs(dir / "pairs.jsonl");
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].comment_id, 11091234);
}

TEST(Cli, TagFilterRestrictsOutput) {
  TempDir dir;
  ASSERT_EQ(ingest(dir, "ground_truth").code, 0);
  ASSERT_EQ(run(with_out(dir, {"--tag", "PHP", "match"})).code, 0);
  const auto dump = read_timeline_cache(dir / "timelines.json");
  const auto tags = tags_of(dump);
  const auto pairs = read_pairs(dir / "pairs.jsonl");
  ASSERT_FALSE(pairs.empty());
  for (const auto& p : pairs) EXPECT_EQ(tags.at(p.answer_id), "php");
}

TEST(Cli, ThresholdAndBaselineOrdering) {
  TempDir dir;
  ASSERT_EQ(ingest(dir, "ground_truth").code, 0);
  ASSERT_EQ(run(with_out(dir, {"match"})).code, 0);
  ASSERT_EQ(run(with_out(dir, {"--threshold", "100", "match", "--pairs-out", (dir / "strict.jsonl").string()})).code, 0);
  ASSERT_EQ(run(with_out(dir, {"baseline"})).code, 0);
  const auto normal = read_pairs(dir / "pairs.jsonl");
  const auto strict = read_pairs(dir / "strict.jsonl");
  const auto base = read_pairs(dir / "baseline_pairs.jsonl");
  EXPECT_LE(strict.size(), normal.size());
  EXPECT_GE(base.size(), normal.size());
  for (const auto& p : base) EXPECT_EQ(p.method, MatchMethod::proximity_baseline);
}

TEST(Cli, EvaluateReportsScores) {
  TempDir dir;
  ASSERT_EQ(ingest(dir, "ground_truth").code, 0);
  ASSERT_EQ(run(with_out(dir, {"match"})).code, 0);
  ASSERT_EQ(run(with_out(dir, {"baseline"})).code, 0);
  const auto gt = (fixture("ground_truth") / "ground_truth.csv").string();
  const auto r = run(with_out(dir, {"evaluate", "--ground-truth", gt, "--baseline-pairs",
                                    (dir / "baseline_pairs.jsonl").string()}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "evaluation.txt"), r.out);

  const auto expect = score(read_pairs(dir / "pairs.jsonl"), read_ground_truth(gt),
                            tags_of(read_timeline_cache(dir / "timelines.json")));
  const auto j = nlohmann::json::parse(slurp(dir / "evaluation.json"));
  const auto& rows = j.at("code_check").at("rows");
  ASSERT_EQ(rows.size(), expect.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].at("tag"), expect.rows[i].tag);
    EXPECT_EQ(rows[i].at("detected"), expect.rows[i].detected);
    EXPECT_EQ(rows[i].at("correct"), expect.rows[i].correct);
    EXPECT_EQ(rows[i].at("existing"), expect.rows[i].existing);
  }
  EXPECT_TRUE(j.contains("baseline"));
}

TEST(Cli, SweepWritesOneRowPerThreshold) {
  TempDir dir;
  ASSERT_EQ(ingest(dir, "ground_truth").code, 0);
  const auto gt = (fixture("ground_truth") / "ground_truth.csv").string();
  const auto r = run(with_out(dir, {"sweep", "--ground-truth", gt}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "sweep.json"));
  ASSERT_EQ(j.size(), 5u);
  for (std::size_t i = 1; i < j.size(); ++i)
    EXPECT_LE(j[i].at("detected").get<int>(), j[i - 1].at("detected").get<int>());
  EXPECT_EQ(lines(slurp(dir / "sweep.csv")), 6u);
  EXPECT_EQ(run(with_out(dir, {"sweep", "--ground-truth", gt, "--thresholds", "90,x"})).code, kExitInput);
}

TEST(Cli, StatsOnAnnotatedCorpus) {
  TempDir dir;
  ASSERT_EQ(ingest(dir, "annotated").code, 0);
  ASSERT_EQ(run(with_out(dir, {"match"})).code, 0);
  const auto r = run(with_out(dir, {"stats", "--annotations", (fixture("annotated") / "annotations.csv").string()}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1,482          161 (11%)         396 (27%)                39 (10%)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Questioner as commenter by category"), std::string::npos);
  EXPECT_EQ(slurp(dir / "stats.txt"), r.out);
  EXPECT_NO_THROW(nlohmann::json::parse(slurp(dir / "stats.json")));
}

TEST(Cli, SampleDrawsReproducibly) {
  TempDir a, b;
  for (const TempDir* d : {&a, &b}) {
    ASSERT_EQ(ingest(*d, "mini").code, 0);
    ASSERT_EQ(run(with_out(*d, {"baseline"})).code, 0);
    ASSERT_EQ(run(with_out(*d, {"--seed", "9", "sample", "--pairs", (d->path() / "baseline_pairs.jsonl").string()})).code, 0);
  }
  EXPECT_EQ(slurp(a / "sample.csv"), slurp(b / "sample.csv"));
  EXPECT_EQ(slurp(a / "sample.csv").rfind("# seed=9", 0), 0u);
}

TEST(Cli, ProspectFromReplay) {
  TempDir dir;
  ASSERT_EQ(ingest(dir, "utf8").code, 0);
  ASSERT_EQ(run(with_out(dir, {"match"})).code, 0);
  const auto r = run(with_out(dir, {"prospect", "--replay", (fixture("utf8") / "github_replay.json").string(),
                                    "--now", "2026-10-01T12:00:00Z"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "3 candidate(s) from 1 pair(s)\n");
  EXPECT_EQ(lines(slurp(dir / "candidates.jsonl")), 3u);
}

TEST(Cli, OutputsIndependentOfJobs) {
  TempDir one, many;
  for (auto [d, jobs] : {std::pair{&one, "1"}, std::pair{&many, "8"}}) {
    ASSERT_EQ(ingest(*d, "mini", {"--jobs", jobs}).code, 0);
    ASSERT_EQ(run(with_out(*d, {"--jobs", jobs, "match"})).code, 0);
  }
  EXPECT_EQ(slurp(one / "timelines.json"), slurp(many / "timelines.json"));
  EXPECT_EQ(slurp(one / "pairs.jsonl"), slurp(many / "pairs.jsonl"));
}

}  // namespace
}  // namespace pairminer
