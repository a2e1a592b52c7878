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

#include "pairminer/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "pairminer/error.hpp"

namespace pairminer {

double chi_squared_upper_tail(double x, int dof) {
  if (dof < 1) throw Error("chi-squared: dof must be >= 1");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

ChiSquaredResult chi_squared_independence(const std::vector<std::vector<double>>& table) {
  const std::size_t r = table.size();
  if (r < 2) throw Error("chi-squared: need at least 2 rows");
  const std::size_t c = table[0].size();
  if (c < 2) throw Error("chi-squared: need at least 2 columns");
  std::vector<double> rows(r, 0.0), cols(c, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    if (table[i].size() != c) throw Error("chi-squared: ragged table");
    for (std::size_t j = 0; j < c; ++j) {
      if (table[i][j] < 0.0) throw Error("chi-squared: negative count");
      rows[i] += table[i][j];
      cols[j] += table[i][j];
      total += table[i][j];
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i] <= 0.0) throw Error(fmt::format("chi-squared: row {} sums to zero", i));
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (cols[j] <= 0.0) throw Error(fmt::format("chi-squared: column {} sums to zero", j));
  }
  ChiSquaredResult out;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = rows[i] * cols[j] / total;
      const double d = table[i][j] - expected;
      out.statistic += d * d / expected;
    }
  }
  out.dof = static_cast<int>((r - 1) * (c - 1));
  out.p = chi_squared_upper_tail(out.statistic, out.dof);
  return out;
}

namespace {

/// Doubled midranks (always integers) of the pooled sample.
std::vector<std::int64_t> doubled_midranks(const std::vector<double>& pooled,
                                           std::vector<std::size_t>& tie_sizes) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<std::int64_t> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Positions i..j (0-based) share rank ((i+1) + (j+1)) / 2.
    const auto doubled = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = doubled;
    tie_sizes.push_back(j - i + 1);
    i = j + 1;
  }
  return ranks;
}

/// P(S <= observed) and P(S >= observed) where S is the doubled rank sum of
/// a random subset of size n1.
std::pair<double, double> exact_tails(const std::vector<std::int64_t>& ranks, std::size_t n1,
                                      std::int64_t observed) {
  const std::int64_t max_sum = std::accumulate(ranks.begin(), ranks.end(), std::int64_t{0});
  // ways[j][s]: subsets of size j with doubled rank sum s.
  std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(max_sum + 1, 0.0));
  ways[0][0] = 1.0;
  for (const auto r : ranks) {
    for (std::size_t j = n1; j >= 1; --j) {
      auto& dst = ways[j];
      const auto& src = ways[j - 1];
      for (std::int64_t s = max_sum; s >= r; --s) dst[s] += src[s - r];
    }
  }
  double total = 0.0, lower = 0.0, upper = 0.0;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    const double w = ways[n1][s];
    total += w;
    if (s <= observed) lower += w;
    if (s >= observed) upper += w;
  }
  return {lower / total, upper / total};
}

}  // namespace

RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("rank-sum test: both samples must be non-empty");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t n = n1 + n2;

  std::vector<std::size_t> ties;
  const auto ranks = doubled_midranks(pooled, ties);
  if (ties.size() == 1) throw Error("rank-sum test: all values are tied");

  std::int64_t doubled_sum_a = 0;
  for (std::size_t i = 0; i < n1; ++i) doubled_sum_a += ranks[i];

  RankSumResult out;
  out.u = static_cast<double>(doubled_sum_a) / 2.0 -
          static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;

  if (n <= kExactRankSumLimit) {
    const auto [lower, upper] = exact_tails(ranks, n1, doubled_sum_a);
    out.p = std::min(1.0, 2.0 * std::min(lower, upper));
    out.exact = true;
    return out;
  }

  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  double tie_term = 0.0;
  for (const auto t : ties) {
    const double dt = static_cast<double>(t);
    tie_term += dt * dt * dt - dt;
  }
  const double mean = dn1 * dn2 / 2.0;
  const double variance = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (variance <= 0.0) throw Error("rank-sum test: zero variance");
  const double z = std::max(0.0, std::abs(out.u - mean) - 0.5) / std::sqrt(variance);
  out.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return out;
}

std::vector<double> bh_adjust(std::span<const double> pvalues) {
  const std::size_t m = pvalues.size();
  for (const double p : pvalues) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(fmt::format("bh_adjust: p-value {} outside [0,1]", p));
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pvalues[x] < pvalues[y]; });
  std::vector<double> adjusted(m);
  double running = 1.0;
  for (std::size_t k = m; k-- > 0;) {
    const double rank = static_cast<double>(k + 1);
    running = std::min(running, static_cast<double>(m) / rank * pvalues[order[k]]);
    adjusted[order[k]] = std::min(1.0, running);
  }
  return adjusted;
}

}  // namespace pairminer
