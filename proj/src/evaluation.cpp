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

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "pairminer/error.hpp"
#include "pairminer/jsonl.hpp"
#include "pairminer/text_table.hpp"

namespace pairminer {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void finish(EvalRow& row) {
  row.precision = ratio(row.correct, row.detected);
  row.recall = ratio(row.correct, row.existing);
}

const std::string& tag_for(const TagMap& tag_of, PostId answer, const char* what) {
  const auto it = tag_of.find(answer);
  if (it == tag_of.end()) {
    throw Error(fmt::format("{} references answer {} with no known tag", what, answer));
  }
  return it->second;
}

}  // namespace

std::vector<GroundTruthEntry> read_ground_truth(const std::filesystem::path& path) {
  const CsvTable csv = read_csv(path);
  const std::vector<std::string> expected = {"answer_id", "comment_id", "edit_version"};
  if (csv.header != expected) {
    throw ParseError(path.string(), 1, "expected header answer_id,comment_id,edit_version");
  }
  std::vector<GroundTruthEntry> out;
  std::set<std::pair<PostId, CommentId>> keys;
  for (const auto& row : csv.rows) {
    if (row.cells.size() != 3) row.where.fail("expected 3 cells");
    const auto answer = parse_integer(row.cells[0]);
    const auto comment = parse_integer(row.cells[1]);
    if (!answer || !comment) row.where.fail("answer_id and comment_id must be integers");
    GroundTruthEntry e{*answer, *comment, std::nullopt};
    if (!trim(row.cells[2]).empty()) {
      const auto version = parse_integer(row.cells[2]);
      if (!version || *version < 2) row.where.fail("edit_version must be an integer >= 2 or empty");
      e.edit_version = static_cast<int>(*version);
    }
    if (!keys.emplace(e.answer_id, e.comment_id).second) {
      row.where.fail(fmt::format("duplicate entry for answer {} comment {}", e.answer_id,
                                 e.comment_id));
    }
    out.push_back(e);
  }
  return out;
}

TagMap tags_of(std::span<const AnswerTimeline> timelines) {
  TagMap out;
  for (const auto& t : timelines) out.emplace(t.answer.post_id, t.answer.tag);
  return out;
}

const EvalRow* EvalReport::find(std::string_view tag) const {
  for (const auto& r : rows) {
    if (r.tag == tag) return &r;
  }
  return nullptr;
}

EvalReport score(std::span<const CommentEditPair> detected,
                 std::span<const GroundTruthEntry> ground_truth, const TagMap& tag_of) {
  if (ground_truth.empty()) throw Error("score: ground truth is empty");

  std::map<std::pair<PostId, CommentId>, std::optional<int>> truth;
  std::map<std::string, EvalRow> rows;
  for (const auto& e : ground_truth) {
    truth.emplace(std::pair{e.answer_id, e.comment_id}, e.edit_version);
    const std::string& tag = tag_for(tag_of, e.answer_id, "ground-truth entry");
    auto& row = rows[tag];
    if (e.edit_version) ++row.existing;
  }
  for (const auto& p : detected) {
    const std::string& tag = tag_for(tag_of, p.answer_id, "detected pair");
    auto& row = rows[tag];
    ++row.detected;
    const auto it = truth.find({p.answer_id, p.comment_id});
    if (it != truth.end() && it->second && *it->second == p.edit_version) ++row.correct;
  }

  EvalReport report;
  EvalRow overall;
  overall.tag = kOverallTag;
  for (auto& [tag, row] : rows) {
    row.tag = tag;
    finish(row);
    overall.existing += row.existing;
    overall.detected += row.detected;
    overall.correct += row.correct;
    report.rows.push_back(row);
  }
  finish(overall);
  report.rows.push_back(overall);
  return report;
}

std::string format_eval_report(const EvalReport& report, const EvalReport* baseline) {
  std::vector<std::string> header = {"Tag", "Existing", "Detected", "Correct", "Recall",
                                     "Precision"};
  if (baseline) {
    for (const char* h : {"Baseline Detected", "Baseline Recall", "Baseline Precision"}) {
      header.emplace_back(h);
    }
  }
  TextTable table(std::move(header));
  for (const auto& r : report.rows) {
    if (r.tag == kOverallTag) table.rule();
    std::vector<std::string> cells = {r.tag,
                                      with_commas(static_cast<long long>(r.existing)),
                                      with_commas(static_cast<long long>(r.detected)),
                                      with_commas(static_cast<long long>(r.correct)),
                                      percent(r.recall),
                                      percent(r.precision)};
    if (baseline) {
      if (const EvalRow* b = baseline->find(r.tag)) {
        cells.push_back(with_commas(static_cast<long long>(b->detected)));
        cells.push_back(percent(b->recall));
        cells.push_back(percent(b->precision));
      }
    }
    table.row(std::move(cells));
  }
  return table.str();
}

nlohmann::ordered_json eval_report_to_json(const EvalReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"tag", r.tag},
                    {"existing", r.existing},
                    {"detected", r.detected},
                    {"correct", r.correct},
                    {"precision", r.precision},
                    {"recall", r.recall}});
  }
  return {{"rows", std::move(rows)}};
}

AgreementTable read_agreement_table(const std::filesystem::path& path) {
  const CsvTable csv = read_csv(path);
  if (csv.header.size() < 2) throw ParseError(path.string(), 1, "agreement table needs labels");
  AgreementTable table;
  table.categories.assign(csv.header.begin() + 1, csv.header.end());
  for (auto& c : table.categories) c = std::string(trim(c));
  if (csv.rows.size() != table.categories.size()) {
    throw ParseError(path.string(), 1,
                     fmt::format("expected {} rows, found {}", table.categories.size(),
                                 csv.rows.size()));
  }
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    if (row.cells.size() != table.categories.size() + 1) row.where.fail("row width mismatch");
    if (trim(row.cells[0]) != table.categories[i]) {
      row.where.fail(fmt::format("row label '{}' does not match column label '{}'", row.cells[0],
                                 table.categories[i]));
    }
    std::vector<std::int64_t> counts;
    for (std::size_t j = 1; j < row.cells.size(); ++j) {
      const auto v = parse_integer(row.cells[j]);
      if (!v || *v < 0) row.where.fail("counts must be non-negative integers");
      counts.push_back(*v);
    }
    table.counts.push_back(std::move(counts));
  }
  return table;
}

double cohen_kappa(const AgreementTable& table) {
  const std::size_t k = table.counts.size();
  if (k == 0) throw Error("cohen_kappa: empty table");
  std::vector<double> rows(k, 0.0), cols(k, 0.0);
  double total = 0.0, diagonal = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (table.counts[i].size() != k) throw Error("cohen_kappa: table is not square");
    for (std::size_t j = 0; j < k; ++j) {
      const auto n = table.counts[i][j];
      if (n < 0) throw Error("cohen_kappa: negative count");
      rows[i] += static_cast<double>(n);
      cols[j] += static_cast<double>(n);
      total += static_cast<double>(n);
      if (i == j) diagonal += static_cast<double>(n);
    }
  }
  if (total <= 0.0) throw Error("cohen_kappa: table has no observations");
  double expected = 0.0;
  for (std::size_t i = 0; i < k; ++i) expected += rows[i] * cols[i];
  // Work in raw counts to keep small tables exact: kappa = (N*d - e) / (N^2 - e).
  const double denom = total * total - expected;
  if (denom == 0.0) throw Error("cohen_kappa: expected agreement is 1, kappa undefined");
  return (total * diagonal - expected) / denom;
}

std::int64_t sample_size(std::int64_t population, double confidence, double interval) {
  if (population < 1) throw Error("sample_size: population must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error("sample_size: confidence must be in (0,1)");
  if (!(interval > 0.0 && interval < 1.0)) throw Error("sample_size: interval must be in (0,1)");
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 0.5 + confidence / 2.0);
  const double n0 = z * z * 0.25 / (interval * interval);
  const double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
  return static_cast<std::int64_t>(std::ceil(n));
}

std::vector<SweepPoint> threshold_sweep(std::span<const AnswerTimeline> timelines,
                                        const RegexCatalog& catalog,
                                        std::span<const GroundTruthEntry> ground_truth,
                                        std::span<const double> thresholds,
                                        const MatchConfig& base, const CorpusOptions& options) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error("threshold_sweep: thresholds must be ascending");
  }
  const TagMap tag_of = tags_of(timelines);
  std::vector<SweepPoint> out;
  for (const double threshold : thresholds) {
    MatchConfig cfg = base;
    cfg.threshold = threshold;
    const auto pairs = match_corpus(timelines, catalog, cfg, options);
    const EvalRow overall = score(pairs, ground_truth, tag_of).overall();
    out.push_back({threshold, overall.detected, overall.correct, overall.existing,
                   overall.precision, overall.recall});
  }
  return out;
}

std::string format_sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "threshold,detected,correct,existing,precision,recall\n";
  for (const auto& p : points) {
    out += fmt::format("{},{},{},{},{:.6f},{:.6f}\n", p.threshold, p.detected, p.correct,
                       p.existing, p.precision, p.recall);
  }
  return out;
}

nlohmann::ordered_json sweep_to_json(std::span<const SweepPoint> points) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    out.push_back({{"threshold", p.threshold},
                   {"detected", p.detected},
                   {"correct", p.correct},
                   {"existing", p.existing},
                   {"precision", p.precision},
                   {"recall", p.recall}});
  }
  return out;
}

}  // namespace pairminer
