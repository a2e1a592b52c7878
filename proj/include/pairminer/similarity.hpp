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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pairminer/term_bag.hpp"

namespace pairminer {

/// How an edit distance is turned into a 0..100 similarity ratio.
enum class SimilarityNorm {
  /// 100 * (1 - levenshtein / max(|a|, |b|)).
  max_norm,
  /// 100 * (|a| + |b| - d) / (|a| + |b|) where d is the edit distance with
  /// substitutions costing 2 (the ratio used by python-Levenshtein).
  sum_norm,
};

SimilarityNorm parse_similarity_norm(std::string_view text);
std::string_view to_string(SimilarityNorm norm);

/// Unit-cost edit distance over Unicode code points (UTF-8 input).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Edit distance where a substitution costs 2 (insert + delete).
std::size_t indel_distance(std::string_view a, std::string_view b);

/// Similarity ratio in [0, 100]. Throws Error when both strings are empty.
double similarity(std::string_view a, std::string_view b,
                  SimilarityNorm norm = SimilarityNorm::max_norm);

struct TermMatch {
  std::string comment_term;
  std::string diff_term;
  double similarity = 0.0;

  friend bool operator==(const TermMatch&, const TermMatch&) = default;
};

/// For each distinct comment term, the most similar diff term whose
/// similarity is >= threshold (ties go to the lexicographically smallest diff
/// term). Sorted by comment term. Throws Error for a threshold outside
/// [0, 100].
std::vector<TermMatch> fuzzy_intersect(const TermBag& comment_terms, const TermBag& diff_terms,
                                       double threshold,
                                       SimilarityNorm norm = SimilarityNorm::max_norm);

}  // namespace pairminer
