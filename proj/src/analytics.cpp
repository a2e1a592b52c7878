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

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "pairminer/error.hpp"
#include "pairminer/jsonl.hpp"
#include "pairminer/text_table.hpp"
#include "pairminer/timestamp.hpp"

namespace pairminer {

namespace {

std::optional<bool> parse_flag(std::string_view cell, const LineContext& where, const char* field) {
  std::string v(trim(cell));
  if (v.empty()) return std::nullopt;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  where.fail(fmt::format("field '{}' must be a boolean, got '{}'", field, cell));
}

std::size_t category_index(Category c) { return static_cast<std::size_t>(c); }

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

CategoryStatsRow summarize(std::optional<Category> category, std::span<const PairFacts* const> group,
                           const RelationshipOptions& options) {
  CategoryStatsRow row;
  row.category = category;
  row.pairs = group.size();
  std::vector<double> scores, responses;
  for (const PairFacts* f : group) {
    (f->commenter == f->editor ? row.commenter_editor_same : row.commenter_editor_diff)++;
    (f->answerer == f->editor ? row.answerer_editor_same : row.answerer_editor_diff)++;
    (f->questioner == f->commenter ? row.questioner_commenter_same : row.questioner_commenter_diff)++;
    scores.push_back(static_cast<double>(f->score));
    if (options.response_outlier_seconds && f->response_seconds > *options.response_outlier_seconds) {
      ++row.response_outliers;
    } else {
      responses.push_back(f->response_seconds);
    }
  }
  row.mean_score = mean(scores);
  row.mean_response_seconds = mean(responses);
  return row;
}

std::string row_label(const CategoryStatsRow& row) {
  return row.category ? std::string(to_string(*row.category)) : std::string("All");
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Correction: return "Correction";
    case Category::Extension: return "Extension";
    case Category::Flaw: return "Flaw";
    case Category::Error: return "Error";
    case Category::Obsolete: return "Obsolete";
    case Category::Disagree: return "Disagree";
    case Category::Question: return "Question";
    case Category::Request: return "Request";
    case Category::Solution: return "Solution";
    case Category::Other: return "Other";
  }
  return "Other";
}

std::optional<Category> parse_category(std::string_view text) {
  for (const Category c : kAllCategories) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::vector<PairAnnotation> read_annotations(const std::filesystem::path& path) {
  const CsvTable csv = read_csv(path);
  const std::vector<std::string> expected = {"answer_id", "comment_id", "confirmed",
                                             "tangled",   "useful",     "category"};
  if (csv.header != expected) {
    throw ParseError(path.string(), 1,
                     "expected header answer_id,comment_id,confirmed,tangled,useful,category");
  }
  std::vector<PairAnnotation> out;
  for (const auto& row : csv.rows) {
    if (row.cells.size() != expected.size()) row.where.fail("expected 6 cells");
    const auto answer = parse_integer(row.cells[0]);
    const auto comment = parse_integer(row.cells[1]);
    if (!answer || !comment) row.where.fail("answer_id and comment_id must be integers");
    PairAnnotation a;
    a.answer_id = *answer;
    a.comment_id = *comment;
    const auto confirmed = parse_flag(row.cells[2], row.where, "confirmed");
    if (!confirmed) row.where.fail("field 'confirmed' is required");
    a.confirmed = *confirmed;
    a.tangled = parse_flag(row.cells[3], row.where, "tangled");
    a.useful = parse_flag(row.cells[4], row.where, "useful");
    if (const auto cat = trim(row.cells[5]); !cat.empty()) {
      a.category = parse_category(cat);
      if (!a.category) row.where.fail(fmt::format("unknown category '{}'", cat));
    }
    if (!a.confirmed && (a.tangled || a.useful || a.category)) {
      row.where.fail("only confirmed pairs may carry tangled/useful/category labels");
    }
    out.push_back(a);
  }
  return out;
}

std::vector<PairAnnotation> filter_by_tag(std::span<const PairAnnotation> annotations,
                                          const TagMap& tag_of, std::string_view tag) {
  std::vector<PairAnnotation> out;
  for (const auto& a : annotations) {
    const auto it = tag_of.find(a.answer_id);
    if (it != tag_of.end() && it->second == tag) out.push_back(a);
  }
  return out;
}

std::vector<PairFacts> derive_pair_facts(std::span<const CommentEditPair> pairs,
                                         std::span<const PairAnnotation> annotations,
                                         std::span<const AnswerTimeline> timelines) {
  std::map<std::pair<PostId, CommentId>, const CommentEditPair*> pair_index;
  for (const auto& p : pairs) pair_index.emplace(std::pair{p.answer_id, p.comment_id}, &p);
  std::unordered_map<PostId, const AnswerTimeline*> timeline_index;
  for (const auto& t : timelines) timeline_index.emplace(t.answer.post_id, &t);

  std::vector<PairFacts> out;
  for (const auto& a : annotations) {
    if (!a.confirmed || !a.category) continue;
    const auto name = fmt::format("pair (answer {}, comment {})", a.answer_id, a.comment_id);
    const auto p = pair_index.find({a.answer_id, a.comment_id});
    if (p == pair_index.end()) throw Error(name + " is annotated but not in the pairs file");
    const auto t = timeline_index.find(a.answer_id);
    if (t == timeline_index.end()) throw Error(name + " references an unknown answer");
    const AnswerTimeline& timeline = *t->second;
    const VersionSnapshot* edit = timeline.find_version(p->second->edit_version);
    if (!edit) {
      throw Error(fmt::format("{} references missing version {}", name, p->second->edit_version));
    }
    const CommentRecord* comment = timeline.find_comment(a.comment_id);
    if (!comment) throw Error(name + " references a missing comment");
    if (!timeline.questioner_id) throw Error(name + ": questioner of the parent question is unknown");

    PairFacts f;
    f.answer_id = a.answer_id;
    f.comment_id = a.comment_id;
    f.category = *a.category;
    f.tag = timeline.answer.tag;
    f.commenter = comment->author_id;
    f.editor = edit->editor_id;
    f.answerer = timeline.answer.author_id;
    f.questioner = *timeline.questioner_id;
    f.score = timeline.answer.score;
    f.response_seconds = static_cast<double>((edit->created - comment->created).count());
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<CategoryStatsRow> aggregate_relationships(std::span<const PairFacts> facts,
                                                      const RelationshipOptions& options) {
  std::array<std::vector<const PairFacts*>, kAllCategories.size()> groups;
  std::vector<const PairFacts*> all;
  for (const auto& f : facts) {
    groups[category_index(f.category)].push_back(&f);
    all.push_back(&f);
  }
  std::vector<CategoryStatsRow> rows;
  for (const Category c : kAllCategories) {
    const auto& g = groups[category_index(c)];
    if (!g.empty()) rows.push_back(summarize(c, g, options));
  }
  rows.push_back(summarize(std::nullopt, all, options));
  return rows;
}

std::vector<CategoryStatsRow> aggregate_relationships(std::span<const CommentEditPair> pairs,
                                                      std::span<const PairAnnotation> annotations,
                                                      std::span<const AnswerTimeline> timelines,
                                                      const RelationshipOptions& options) {
  const auto facts = derive_pair_facts(pairs, annotations, timelines);
  return aggregate_relationships(facts, options);
}

const CategoryCountRow& CategoryCounts::row(Category c) const { return rows.at(category_index(c)); }

CategoryCounts category_counts(std::span<const PairAnnotation> annotations) {
  CategoryCounts out;
  for (const Category c : kAllCategories) out.rows.push_back({c, 0, 0});
  for (const auto& a : annotations) {
    if (!a.confirmed) continue;
    const bool useful = a.useful.value_or(false);
    ++out.total_all;
    if (useful) ++out.total_useful;
    if (!a.category) {
      ++out.uncategorized;
      continue;
    }
    auto& row = out.rows[category_index(*a.category)];
    ++row.all;
    if (useful) ++row.useful;
  }
  return out;
}

std::vector<TangledRow> tangled_rate(std::span<const PairAnnotation> annotations,
                                     const TagMap& tag_of) {
  std::map<std::string, TangledRow> by_tag;
  TangledRow overall;
  overall.tag = kOverallTag;
  for (const auto& a : annotations) {
    if (!a.confirmed) continue;
    const auto it = tag_of.find(a.answer_id);
    if (it == tag_of.end()) {
      throw Error(fmt::format("annotation for answer {} has no known tag", a.answer_id));
    }
    const bool tangled = a.tangled.value_or(false);
    const bool useful = a.useful.value_or(false);
    for (TangledRow* row : {&by_tag[it->second], &overall}) {
      ++row->confirmed;
      if (tangled) ++row->tangled;
      if (useful) ++row->useful;
      if (tangled && useful) ++row->useful_tangled;
    }
  }
  std::vector<TangledRow> rows;
  auto finish = [](TangledRow& r) {
    r.tangled_rate = r.confirmed ? static_cast<double>(r.tangled) / static_cast<double>(r.confirmed) : 0.0;
    r.useful_rate = r.confirmed ? static_cast<double>(r.useful) / static_cast<double>(r.confirmed) : 0.0;
  };
  for (auto& [tag, row] : by_tag) {
    row.tag = tag;
    finish(row);
    rows.push_back(row);
  }
  finish(overall);
  rows.push_back(overall);
  return rows;
}

Contingency questioner_contingency(std::span<const PairFacts> facts) {
  Contingency out;
  std::array<std::array<double, 2>, kAllCategories.size()> counts{};
  for (const auto& f : facts) {
    counts[category_index(f.category)][f.questioner == f.commenter ? 0 : 1] += 1.0;
  }
  for (const Category c : kAllCategories) {
    const auto& row = counts[category_index(c)];
    if (row[0] + row[1] == 0.0) continue;
    out.categories.push_back(c);
    out.counts.push_back({row[0], row[1]});
  }
  return out;
}

std::vector<PairwiseTest> pairwise_rank_sum(std::span<const PairFacts> facts, FactMeasure measure,
                                            const RelationshipOptions& options) {
  std::array<std::vector<double>, kAllCategories.size()> values;
  for (const auto& f : facts) {
    if (measure == FactMeasure::score) {
      values[category_index(f.category)].push_back(static_cast<double>(f.score));
    } else if (!options.response_outlier_seconds ||
               f.response_seconds <= *options.response_outlier_seconds) {
      values[category_index(f.category)].push_back(f.response_seconds);
    }
  }
  std::vector<PairwiseTest> tests;
  for (std::size_t i = 0; i < kAllCategories.size(); ++i) {
    for (std::size_t j = i + 1; j < kAllCategories.size(); ++j) {
      if (values[i].empty() || values[j].empty()) continue;
      try {
        tests.push_back({kAllCategories[i], kAllCategories[j], rank_sum_test(values[i], values[j])});
      } catch (const Error&) {
        // All values tied across both groups: no test.
      }
    }
  }
  std::vector<double> raw;
  for (const auto& t : tests) raw.push_back(t.result.p);
  const auto adjusted = bh_adjust(raw);
  for (std::size_t k = 0; k < tests.size(); ++k) tests[k].p_adjusted = adjusted[k];
  return tests;
}

std::string format_category_counts(const std::vector<std::pair<std::string, CategoryCounts>>& by_tag,
                                   const CategoryCounts& overall) {
  std::vector<std::string> header = {"Category"};
  for (const auto& [tag, counts] : by_tag) {
    header.push_back(tag + " All");
    header.push_back(tag + " Useful");
  }
  header.emplace_back("Overall All");
  header.emplace_back("Overall Useful");
  TextTable table(std::move(header));

  std::vector<Category> order(kAllCategories.begin(), kAllCategories.end());
  // Most frequent first; the catch-all category closes the list.
  std::stable_sort(order.begin(), order.end(), [&](Category a, Category b) {
    if ((a == Category::Other) != (b == Category::Other)) return b == Category::Other;
    return overall.row(a).all > overall.row(b).all;
  });
  auto cells_for = [](const CategoryCountRow& r, std::vector<std::string>& cells) {
    cells.push_back(with_commas(static_cast<long long>(r.all)));
    cells.push_back(count_percent(r.useful, r.all));
  };
  for (const Category c : order) {
    std::vector<std::string> cells = {std::string(to_string(c))};
    for (const auto& [tag, counts] : by_tag) cells_for(counts.row(c), cells);
    cells_for(overall.row(c), cells);
    table.row(std::move(cells));
  }
  table.rule();
  std::vector<std::string> total = {"Total"};
  for (const auto& [tag, counts] : by_tag) {
    cells_for({Category::Other, counts.total_all, counts.total_useful}, total);
  }
  cells_for({Category::Other, overall.total_all, overall.total_useful}, total);
  table.row(std::move(total));
  return table.str();
}

nlohmann::ordered_json category_counts_to_json(const CategoryCounts& counts) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : counts.rows) {
    rows.push_back({{"category", std::string(to_string(r.category))},
                    {"all", r.all},
                    {"useful", r.useful}});
  }
  return {{"rows", std::move(rows)},
          {"total_all", counts.total_all},
          {"total_useful", counts.total_useful},
          {"uncategorized", counts.uncategorized}};
}

std::string format_tangled(std::span<const TangledRow> rows) {
  TextTable table({"Tag", "Confirmed Pairs", "Tangled Count (%)", "Useful Count (%)",
                   "Useful and Tangled (%)"});
  for (const auto& r : rows) {
    if (r.tag == kOverallTag) table.rule();
    table.row({r.tag, with_commas(static_cast<long long>(r.confirmed)),
               count_percent(r.tangled, r.confirmed), count_percent(r.useful, r.confirmed),
               count_percent(r.useful_tangled, r.useful)});
  }
  return table.str();
}

nlohmann::ordered_json tangled_to_json(std::span<const TangledRow> rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"tag", r.tag},
                   {"confirmed", r.confirmed},
                   {"tangled", r.tangled},
                   {"useful", r.useful},
                   {"useful_tangled", r.useful_tangled},
                   {"tangled_rate", r.tangled_rate},
                   {"useful_rate", r.useful_rate}});
  }
  return out;
}

std::string format_relationships(std::span<const CategoryStatsRow> rows) {
  std::vector<std::string> header = {""};
  for (const auto& r : rows) header.push_back(row_label(r));
  TextTable table(std::move(header));
  auto add = [&](const char* label, auto&& value) {
    std::vector<std::string> cells = {label};
    for (const auto& r : rows) cells.push_back(value(r));
    table.row(std::move(cells));
  };
  auto count = [](std::size_t CategoryStatsRow::*field) {
    return [field](const CategoryStatsRow& r) { return std::to_string(r.*field); };
  };
  add("Pairs", count(&CategoryStatsRow::pairs));
  table.rule();
  add("Commenter/Editor Same", count(&CategoryStatsRow::commenter_editor_same));
  add("Commenter/Editor Different", count(&CategoryStatsRow::commenter_editor_diff));
  table.rule();
  add("Answerer/Editor Same", count(&CategoryStatsRow::answerer_editor_same));
  add("Answerer/Editor Different", count(&CategoryStatsRow::answerer_editor_diff));
  table.rule();
  add("Questioner/Commenter Same", count(&CategoryStatsRow::questioner_commenter_same));
  add("Questioner/Commenter Different", count(&CategoryStatsRow::questioner_commenter_diff));
  table.rule();
  add("Average Answer Score", [](const CategoryStatsRow& r) { return fmt::format("{:.0f}", r.mean_score); });
  add("Average Response Time",
      [](const CategoryStatsRow& r) { return format_duration(r.mean_response_seconds); });
  return table.str();
}

nlohmann::ordered_json relationships_to_json(std::span<const CategoryStatsRow> rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"category", row_label(r)},
                   {"pairs", r.pairs},
                   {"commenter_editor_same", r.commenter_editor_same},
                   {"commenter_editor_diff", r.commenter_editor_diff},
                   {"answerer_editor_same", r.answerer_editor_same},
                   {"answerer_editor_diff", r.answerer_editor_diff},
                   {"questioner_commenter_same", r.questioner_commenter_same},
                   {"questioner_commenter_diff", r.questioner_commenter_diff},
                   {"mean_score", r.mean_score},
                   {"mean_response_seconds", r.mean_response_seconds},
                   {"response_outliers", r.response_outliers}});
  }
  return out;
}

}  // namespace pairminer
