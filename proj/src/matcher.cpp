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

#include "pairminer/matcher.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "pairminer/error.hpp"
#include "pairminer/jsonl.hpp"
#include "pairminer/parallel.hpp"

namespace pairminer {

namespace {

std::vector<const CommentRecord*> chronological(const AnswerTimeline& t) {
  std::vector<const CommentRecord*> out;
  out.reserve(t.comments.size());
  for (const auto& c : t.comments) out.push_back(&c);
  std::stable_sort(out.begin(), out.end(), [](const CommentRecord* a, const CommentRecord* b) {
    if (a->created != b->created) return a->created < b->created;
    return a->comment_id < b->comment_id;
  });
  return out;
}

void sort_pairs(std::vector<CommentEditPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const CommentEditPair& a, const CommentEditPair& b) {
    if (a.answer_id != b.answer_id) return a.answer_id < b.answer_id;
    return a.comment_id < b.comment_id;
  });
}

template <typename PerAnswer>
std::vector<CommentEditPair> over_corpus(std::span<const AnswerTimeline> timelines,
                                         const CorpusOptions& options, PerAnswer&& per_answer) {
  std::vector<std::vector<CommentEditPair>> slots(timelines.size());
  parallel_for(timelines.size(), options.jobs,
               [&](std::size_t i) { slots[i] = per_answer(timelines[i]); });
  std::vector<CommentEditPair> out;
  for (auto& s : slots) {
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  sort_pairs(out);
  return out;
}

}  // namespace

std::string_view to_string(MatchMethod method) {
  return method == MatchMethod::code_check ? "code-check" : "proximity-baseline";
}

MatchMethod parse_match_method(std::string_view text) {
  if (text == "code-check") return MatchMethod::code_check;
  if (text == "proximity-baseline") return MatchMethod::proximity_baseline;
  throw Error(fmt::format("unknown match method '{}'", text));
}

std::vector<CommentEditPair> match_answer(const AnswerTimeline& t, const RegexCatalog& catalog,
                                          const MatchConfig& cfg) {
  std::vector<CommentEditPair> out;
  if (t.versions.size() < 2 || t.comments.empty()) return out;

  // Terms of each version are needed by every comment; extract them once.
  std::vector<TermBag> version_terms;
  version_terms.reserve(t.versions.size());
  for (const auto& v : t.versions) version_terms.push_back(extract_terms(v.code_blocks, catalog));

  for (const CommentRecord* c : chronological(t)) {
    const TermBag comment_terms = extract_terms(c->text, catalog);
    if (comment_terms.empty()) continue;
    std::size_t prev = 0;
    for (std::size_t k = 1; k < t.versions.size(); ++k) {
      const VersionSnapshot& edit = t.versions[k];
      const bool after = edit.created > c->created;
      const bool other_author = !cfg.require_distinct_authors || edit.editor_id != c->author_id;
      if (after && other_author) {
        const TermBag diff = symmetric_difference(version_terms[k], version_terms[prev]);
        auto matches = fuzzy_intersect(comment_terms, diff, cfg.threshold, cfg.similarity_norm);
        if (!matches.empty()) {
          out.push_back({t.answer.post_id, c->comment_id, edit.version_index, std::move(matches),
                         MatchMethod::code_check});
          break;
        }
      }
      prev = k;
    }
  }
  sort_pairs(out);
  return out;
}

std::vector<CommentEditPair> baseline_match(const AnswerTimeline& t) {
  std::vector<CommentEditPair> out;
  for (const CommentRecord* c : chronological(t)) {
    const VersionSnapshot* nearest = nullptr;
    for (std::size_t k = 1; k < t.versions.size(); ++k) {
      const auto& v = t.versions[k];
      if (v.created <= c->created) continue;
      if (!nearest || v.created < nearest->created ||
          (v.created == nearest->created && v.version_index < nearest->version_index)) {
        nearest = &v;
      }
    }
    if (nearest) {
      out.push_back({t.answer.post_id, c->comment_id, nearest->version_index, {},
                     MatchMethod::proximity_baseline});
    }
  }
  sort_pairs(out);
  return out;
}

std::vector<CommentEditPair> match_corpus(std::span<const AnswerTimeline> timelines,
                                          const RegexCatalog& catalog, const MatchConfig& cfg,
                                          const CorpusOptions& options) {
  return over_corpus(timelines, options,
                     [&](const AnswerTimeline& t) { return match_answer(t, catalog, cfg); });
}

std::vector<CommentEditPair> baseline_corpus(std::span<const AnswerTimeline> timelines,
                                             const CorpusOptions& options) {
  return over_corpus(timelines, options, [](const AnswerTimeline& t) { return baseline_match(t); });
}

nlohmann::ordered_json pair_to_json(const CommentEditPair& pair) {
  nlohmann::ordered_json matches = nlohmann::ordered_json::array();
  for (const auto& m : pair.matches) {
    matches.push_back(
        {{"comment_term", m.comment_term}, {"diff_term", m.diff_term}, {"similarity", m.similarity}});
  }
  return {{"answer_id", pair.answer_id},
          {"comment_id", pair.comment_id},
          {"edit_version", pair.edit_version},
          {"method", std::string(to_string(pair.method))},
          {"matches", std::move(matches)}};
}

CommentEditPair pair_from_json(const nlohmann::json& j) {
  CommentEditPair p;
  p.answer_id = j.at("answer_id").get<PostId>();
  p.comment_id = j.at("comment_id").get<CommentId>();
  p.edit_version = j.at("edit_version").get<int>();
  p.method = parse_match_method(j.at("method").get<std::string>());
  for (const auto& m : j.at("matches")) {
    p.matches.push_back({m.at("comment_term").get<std::string>(),
                         m.at("diff_term").get<std::string>(), m.at("similarity").get<double>()});
  }
  return p;
}

std::string format_pairs_jsonl(std::span<const CommentEditPair> pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += pair_to_json(p).dump();
    out += '\n';
  }
  return out;
}

void write_pairs(const std::filesystem::path& path, std::span<const CommentEditPair> pairs) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write pairs file '{}'", path.string()));
  out << format_pairs_jsonl(pairs);
}

std::vector<CommentEditPair> read_pairs(const std::filesystem::path& path) {
  std::vector<CommentEditPair> out;
  for_each_json_line(path, [&](const nlohmann::json& obj, const LineContext& ctx) {
    try {
      out.push_back(pair_from_json(obj));
    } catch (const nlohmann::json::exception& e) {
      ctx.fail(fmt::format("invalid pair record: {}", e.what()));
    } catch (const Error& e) {
      ctx.fail(e.what());
    }
  });
  return out;
}

}  // namespace pairminer
