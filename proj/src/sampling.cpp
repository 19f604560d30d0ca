// Copyright 2026 The tsapprox Authors.
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

#include "tsapprox/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace tsapprox {

SampleSize required_sample_size(std::int64_t n, double epsilon, double beta, double d_min, double d_max) {
  if (n < 1) throw ContractViolation("population must be non-empty");
  if (!(epsilon > 0.0)) throw ContractViolation("epsilon must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw ContractViolation("beta must lie in (0, 1)");
  if (!(d_min <= d_max)) throw ContractViolation("d_min must not exceed d_max");
  const double nn = static_cast<double>(n);
  const double range = d_max - d_min;
  const double m = std::ceil(nn * nn * range * range * std::log(2.0 / beta) / (2.0 * epsilon * epsilon));
  if (m > nn) return {n, true};
  return {std::max<std::int64_t>(1, static_cast<std::int64_t>(m)), false};
}

double sampled_sum_product(const TimeSeries& t1, const TimeSeries& t2, std::int64_t m, std::uint64_t seed) {
  const auto d = intersect(t1.domain(), t2.domain());
  if (!d) throw DomainError("series do not overlap");
  const std::int64_t n = d->length();
  if (m < 1 || m > n) {
    throw ContractViolation("sample size " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<Position> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), d->a());
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first m entries are a uniform sample.
  for (std::int64_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::int64_t> pick(i, n - 1);
    std::swap(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(pick(rng))]);
  }
  double s = 0.0;
  for (std::int64_t i = 0; i < m; ++i) {
    const Position p = pos[static_cast<std::size_t>(i)];
    s += t1[p] * t2[p];
  }
  return static_cast<double>(n) / static_cast<double>(m) * s;
}

}  // namespace tsapprox
