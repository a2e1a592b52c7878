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

#include "pairminer/prospect.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <set>

#include <fmt/format.h>

#include "pairminer/error.hpp"
#include "pairminer/jsonl.hpp"

namespace pairminer {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_criteria(const RepoCriteria& c) {
  if (c.min_stars < 0 || c.max_days_since_push < 0 || c.min_closed_prs < 0)
    throw Error("repository criteria must be non-negative");
  if (c.language.empty()) throw Error("repository criteria need a language");
}

// Source-file extensions per host language; unknown languages scan everything.
const std::map<std::string, std::vector<std::string>>& extensions() {
  static const std::map<std::string, std::vector<std::string>> m{
      {"java", {".java"}},
      {"javascript", {".js", ".jsx", ".mjs", ".cjs", ".ts", ".tsx", ".html", ".vue"}},
      {"python", {".py"}},
      {"php", {".php", ".phtml", ".inc"}},
  };
  return m;
}

bool wanted_file(std::string_view path, const std::string& language) {
  auto it = extensions().find(lower(language));
  if (it == extensions().end()) return true;
  std::string p = lower(path);
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const std::string& ext) { return p.ends_with(ext); });
}

}  // namespace

std::string build_search_query(const RepoCriteria& criteria, Timestamp now) {
  check_criteria(criteria);
  auto since = now - std::chrono::days(criteria.max_days_since_push);
  auto day = std::chrono::floor<std::chrono::days>(since);
  // pushed:> is exclusive on the date; the day before keeps the boundary
  // repo, which the local check then decides exactly.
  std::chrono::year_month_day before{day - std::chrono::days(1)};
  return fmt::format("language:{} pushed:>{:04d}-{:02d}-{:02d} stars:>={}", lower(criteria.language),
                     static_cast<int>(before.year()), static_cast<unsigned>(before.month()),
                     static_cast<unsigned>(before.day()), criteria.min_stars);
}

bool meets_metadata_criteria(const RepoInfo& repo, const RepoCriteria& criteria, Timestamp now) {
  if (lower(repo.language) != lower(criteria.language)) return false;
  if (repo.stars < criteria.min_stars) return false;
  return repo.pushed_at >= now - std::chrono::days(criteria.max_days_since_push);
}

std::vector<RepoInfo> search_repos(const RepoCriteria& criteria, RepoHost& host, Timestamp now) {
  auto found = host.search_repositories(build_search_query(criteria, now));
  std::vector<RepoInfo> out;
  std::set<std::string> seen;
  for (auto& repo : found) {
    if (!seen.insert(lower(repo.full_name)).second) continue;
    if (!meets_metadata_criteria(repo, criteria, now)) continue;
    if (host.closed_pull_requests(repo.full_name) < criteria.min_closed_prs) continue;
    out.push_back(std::move(repo));
  }
  std::stable_sort(out.begin(), out.end(), [](const RepoInfo& a, const RepoInfo& b) {
    if (a.stars != b.stars) return a.stars > b.stars;
    return a.full_name < b.full_name;
  });
  return out;
}

std::string language_for_tag(std::string_view tag) {
  static const std::map<std::string, std::string> m{
      {"java", "Java"}, {"android", "Java"}, {"javascript", "JavaScript"},
      {"python", "Python"}, {"php", "PHP"}};
  auto it = m.find(lower(tag));
  return it == m.end() ? std::string(tag) : it->second;
}

std::string normalize_code(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t line_start = 0;
  auto end_line = [&] {
    while (out.size() > line_start && (out.back() == ' ' || out.back() == '\t' || out.back() == '\f' ||
                                       out.back() == '\v'))
      out.pop_back();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_line();
      out += '\n';
      line_start = out.size();
    } else {
      out += c;
    }
  }
  end_line();
  return out;
}

std::string normalize_snippet(std::string_view text) {
  std::string s = normalize_code(text);
  std::size_t begin = 0;
  // Drop whole blank lines at the front, keep indentation of the first real line.
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\n')
      begin = i + 1;
    else if (s[i] != ' ' && s[i] != '\t')
      break;
  }
  s.erase(0, begin);
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

std::vector<MatchSite> find_code_sites(std::span<const SourceFile> files, std::string_view before_snippet,
                                       std::string_view repo) {
  std::string needle = normalize_snippet(before_snippet);
  if (needle.empty()) throw Error("before snippet is empty after normalization");
  std::vector<MatchSite> out;
  for (const auto& f : files) {
    std::string hay = normalize_code(f.contents);
    std::int64_t line = 1;
    std::size_t counted = 0, last_nl = std::string::npos;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
      for (; counted < pos; ++counted)
        if (hay[counted] == '\n') {
          ++line;
          last_nl = counted;
        }
      MatchSite site;
      site.repo = std::string(repo);
      site.file_path = f.path;
      site.line_start = line;
      site.column = static_cast<std::int64_t>(pos - (last_nl == std::string::npos ? 0 : last_nl + 1)) + 1;
      site.snippet = needle;
      out.push_back(std::move(site));
    }
  }
  return out;
}

BeforeStrategy parse_before_strategy(std::string_view name) {
  if (name == "containing-block") return BeforeStrategy::containing_block;
  if (name == "whole-version") return BeforeStrategy::whole_version;
  throw Error(fmt::format("unknown before-snippet strategy '{}' (containing-block, whole-version)", name));
}

std::string_view to_string(BeforeStrategy s) {
  return s == BeforeStrategy::containing_block ? "containing-block" : "whole-version";
}

std::string select_before_snippet(const AnswerTimeline& timeline, const CommentEditPair& pair,
                                  BeforeStrategy strategy) {
  const VersionSnapshot* prev = timeline.find_version(pair.edit_version - 1);
  if (prev == nullptr)
    throw Error(fmt::format("answer {} has no version {}", timeline.answer.post_id, pair.edit_version - 1));
  std::vector<std::string> blocks;
  for (const auto& b : prev->code_blocks)
    if (!normalize_snippet(b).empty()) blocks.push_back(b);
  if (blocks.empty())
    throw Error(fmt::format("answer {} version {} has no code", timeline.answer.post_id, prev->version_index));

  if (strategy == BeforeStrategy::whole_version) {
    std::string out;
    for (const auto& b : blocks) {
      if (!out.empty()) out += '\n';
      out += normalize_snippet(b);
    }
    return out;
  }

  std::vector<TermMatch> ranked = pair.matches;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const TermMatch& a, const TermMatch& b) { return a.similarity > b.similarity; });
  for (const auto& m : ranked)
    for (const auto& b : blocks)
      if (b.find(m.diff_term) != std::string::npos) return b;
  return blocks.front();
}

std::vector<PrCandidate> emit_candidates(const CommentEditPair& pair, std::string_view comment_text,
                                         std::span<const MatchSite> sites) {
  if (trim(comment_text).empty())
    throw Error(fmt::format("comment {} on answer {} has empty text", pair.comment_id, pair.answer_id));
  std::vector<PrCandidate> out;
  out.reserve(sites.size());
  for (const auto& s : sites)
    out.push_back(PrCandidate{pair.answer_id, pair.comment_id, pair.edit_version, s, std::string(comment_text)});
  return out;
}

std::vector<PrCandidate> prospect(std::span<const AnswerTimeline> timelines,
                                  std::span<const CommentEditPair> pairs, RepoHost& host,
                                  const ProspectOptions& options) {
  std::map<PostId, const AnswerTimeline*> by_id;
  for (const auto& t : timelines) by_id[t.answer.post_id] = &t;

  std::map<std::string, std::vector<RepoInfo>> repos_by_language;
  std::map<std::string, std::vector<SourceFile>> files_by_repo;
  std::vector<PrCandidate> out;

  for (const auto& pair : pairs) {
    auto it = by_id.find(pair.answer_id);
    if (it == by_id.end()) throw Error(fmt::format("pair refers to unknown answer {}", pair.answer_id));
    const AnswerTimeline& t = *it->second;
    const CommentRecord* comment = t.find_comment(pair.comment_id);
    if (comment == nullptr)
      throw Error(fmt::format("answer {} has no comment {}", pair.answer_id, pair.comment_id));

    RepoCriteria criteria = options.criteria;
    if (criteria.language.empty()) criteria.language = language_for_tag(t.answer.tag);
    auto key = lower(criteria.language);
    auto rl = repos_by_language.find(key);
    if (rl == repos_by_language.end())
      rl = repos_by_language.emplace(key, search_repos(criteria, host, options.now)).first;

    std::string snippet = select_before_snippet(t, pair, options.before_strategy);
    for (const auto& repo : rl->second) {
      auto fr = files_by_repo.find(repo.full_name);
      if (fr == files_by_repo.end()) {
        std::vector<SourceFile> files;
        for (const auto& path : host.list_files(repo.full_name))
          if (wanted_file(path, criteria.language))
            files.push_back(SourceFile{path, host.file_contents(repo.full_name, path)});
        fr = files_by_repo.emplace(repo.full_name, std::move(files)).first;
      }
      auto sites = find_code_sites(fr->second, snippet, repo.full_name);
      auto cands = emit_candidates(pair, comment->text, sites);
      out.insert(out.end(), std::make_move_iterator(cands.begin()), std::make_move_iterator(cands.end()));
    }
  }
  return out;
}

nlohmann::ordered_json candidate_to_json(const PrCandidate& c) {
  nlohmann::ordered_json j;
  j["answer_id"] = c.answer_id;
  j["comment_id"] = c.comment_id;
  j["edit_version"] = c.edit_version;
  j["repo"] = c.site.repo;
  j["file_path"] = c.site.file_path;
  j["line_start"] = c.site.line_start;
  j["column"] = c.site.column;
  j["snippet"] = c.site.snippet;
  j["description"] = c.description;
  return j;
}

std::string format_candidates_jsonl(std::span<const PrCandidate> candidates) {
  std::string out;
  for (const auto& c : candidates) {
    out += candidate_to_json(c).dump();
    out += '\n';
  }
  return out;
}

}  // namespace pairminer
