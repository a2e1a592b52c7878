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

#include "pairminer/similarity.hpp"

#include <algorithm>
#include <cstdlib>

#include <fmt/format.h>

#include "pairminer/error.hpp"

namespace pairminer {

namespace {

/// Decodes UTF-8; an invalid byte is kept as a single unit so that distances
/// stay defined on arbitrary input.
std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xC0 && b0 < 0xE0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if (b0 >= 0xE0 && b0 < 0xF0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if (b0 >= 0xF0 && b0 < 0xF8) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool valid = len > 1 && i + len <= s.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xC0) != 0x80) valid = false;
      cp = (cp << 6) | (bk & 0x3F);
    }
    if (!valid) {
      cp = b0;
      len = 1;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t edit_distance(const std::u32string& a, const std::u32string& b,
                          std::size_t substitution_cost) {
  if (a.size() < b.size()) return edit_distance(b, a, substitution_cost);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : substitution_cost);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

double ratio(std::size_t la, std::size_t lb, std::size_t distance, SimilarityNorm norm) {
  if (norm == SimilarityNorm::max_norm) {
    const auto longest = static_cast<double>(std::max(la, lb));
    return 100.0 * (longest - static_cast<double>(distance)) / longest;
  }
  const auto sum = static_cast<double>(la + lb);
  return 100.0 * (sum - static_cast<double>(distance)) / sum;
}

double similarity_decoded(const std::u32string& a, const std::u32string& b, SimilarityNorm norm) {
  const std::size_t d = edit_distance(a, b, norm == SimilarityNorm::max_norm ? 1 : 2);
  return ratio(a.size(), b.size(), d, norm);
}

/// Upper bound on the similarity reachable given only the two lengths.
double length_bound(std::size_t la, std::size_t lb, SimilarityNorm norm) {
  const std::size_t gap = la > lb ? la - lb : lb - la;
  return ratio(la, lb, gap, norm);
}

}  // namespace

SimilarityNorm parse_similarity_norm(std::string_view text) {
  if (text == "max-norm") return SimilarityNorm::max_norm;
  if (text == "sum-norm") return SimilarityNorm::sum_norm;
  throw Error(fmt::format("unknown similarity norm '{}' (expected max-norm or sum-norm)", text));
}

std::string_view to_string(SimilarityNorm norm) {
  return norm == SimilarityNorm::max_norm ? "max-norm" : "sum-norm";
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return edit_distance(decode(a), decode(b), 1);
}

std::size_t indel_distance(std::string_view a, std::string_view b) {
  return edit_distance(decode(a), decode(b), 2);
}

double similarity(std::string_view a, std::string_view b, SimilarityNorm norm) {
  if (a.empty() && b.empty()) throw Error("similarity of two empty strings is undefined");
  return similarity_decoded(decode(a), decode(b), norm);
}

std::vector<TermMatch> fuzzy_intersect(const TermBag& comment_terms, const TermBag& diff_terms,
                                       double threshold, SimilarityNorm norm) {
  if (!(threshold >= 0.0 && threshold <= 100.0)) {
    throw Error(fmt::format("similarity threshold {} outside [0, 100]", threshold));
  }
  std::vector<TermMatch> out;
  if (comment_terms.empty() || diff_terms.empty()) return out;

  std::vector<std::pair<const std::string*, std::u32string>> diff;
  diff.reserve(diff_terms.distinct());
  for (const auto& [term, n] : diff_terms) diff.emplace_back(&term, decode(term));

  for (const auto& [term, n] : comment_terms) {
    const std::u32string c = decode(term);
    const std::string* best = nullptr;
    double best_sim = -1.0;
    // Diff terms are visited in lexicographic order, so keeping only strict
    // improvements resolves ties towards the smallest term.
    for (const auto& [dterm, d] : diff) {
      if (length_bound(c.size(), d.size(), norm) < std::max(threshold, best_sim)) continue;
      const double sim = similarity_decoded(c, d, norm);
      if (sim >= threshold && sim > best_sim) {
        best_sim = sim;
        best = dterm;
        if (sim >= 100.0) break;
      }
    }
    if (best) out.push_back({term, *best, best_sim});
  }
  return out;
}

}  // namespace pairminer
