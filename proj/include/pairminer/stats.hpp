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
#include <cstdint>
#include <span>
#include <vector>

namespace pairminer {

struct ChiSquaredResult {
  double statistic = 0.0;
  int dof = 0;
  double p = 1.0;
};

/// Pearson chi-squared test of independence on an r x c count table.
/// Throws Error for ragged or too-small tables and zero row/column sums.
ChiSquaredResult chi_squared_independence(const std::vector<std::vector<double>>& table);

/// Upper tail of the chi-squared distribution, Q(dof/2, x/2).
double chi_squared_upper_tail(double x, int dof);

struct RankSumResult {
  /// Mann-Whitney U of the first sample: R_a - n_a (n_a + 1) / 2.
  double u = 0.0;
  /// Two-sided p-value.
  double p = 1.0;
  bool exact = false;
};

/// Samples at most this large in total get the exact permutation p-value.
inline constexpr std::size_t kExactRankSumLimit = 50;

/// Wilcoxon rank-sum (Mann-Whitney) test with midranks for ties. Small
/// samples use the exact permutation distribution of the rank sum; larger
/// ones use the normal approximation with tie-corrected variance and
/// continuity correction. Throws Error for an empty sample or when every
/// value is tied.
RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b);

/// Benjamini-Hochberg step-up adjustment, returned in input order.
/// Throws Error for values outside [0, 1].
std::vector<double> bh_adjust(std::span<const double> pvalues);

}  // namespace pairminer
