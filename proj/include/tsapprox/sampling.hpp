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

#pragma once

#include <cstdint>

#include "tsapprox/core.hpp"

namespace tsapprox {

struct SampleSize {
  std::int64_t m = 0;
  // Set when the bound asked for more than the population; m is then n.
  bool exhausted = false;
};

// Hoeffding sample size for estimating a sum of n values in [d_min, d_max]
// by n times the sample mean, to within epsilon with probability 1 - beta:
//   m = ceil(n^2 (d_max - d_min)^2 ln(2 / beta) / (2 epsilon^2)), capped at n.
SampleSize required_sample_size(std::int64_t n, double epsilon, double beta, double d_min, double d_max);

// (n / m) * sum of t1[i] t2[i] over m positions of the common domain drawn
// uniformly without replacement.
double sampled_sum_product(const TimeSeries& t1, const TimeSeries& t2, std::int64_t m, std::uint64_t seed);

}  // namespace tsapprox
