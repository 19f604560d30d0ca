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

// Generators and brute-force oracles shared by the test binaries. Oracles
// here work point by point and never touch the coefficient machinery.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include <string>

#include "tsapprox/compress.hpp"
#include "tsapprox/core.hpp"
#include "tsapprox/families.hpp"
#include "tsapprox/guarantees.hpp"
#include "tsapprox/store.hpp"

namespace tsapprox::testing {

// Smooth signal (random linear pieces and a bump) plus uniform noise.
inline TimeSeries random_series(std::mt19937_64& rng, Position a, std::int64_t n, double noise = 0.1) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double level = 2.0 * u(rng), slope = 0.05 * u(rng);
  const double bump_at = (0.5 + 0.4 * u(rng)) * static_cast<double>(n);
  const double bump_h = 2.0 * u(rng);
  const double bump_w = 1.0 + 0.1 * static_cast<double>(n) * (1.0 + u(rng));
  for (std::int64_t i = 0; i < n; ++i) {
    if (u(rng) > 0.95) slope = 0.05 * u(rng);
    level += slope;
    const double z = (static_cast<double>(i) - bump_at) / bump_w;
    v[static_cast<std::size_t>(i)] = level + bump_h * std::exp(-0.5 * z * z) + noise * u(rng);
  }
  return TimeSeries(a, std::move(v));
}

inline double point_norm(const FittedFunction& f, const Domain& d) {
  double s = 0.0;
  for (Position i = d.a(); i <= d.b(); ++i) s += f.evaluate(i) * f.evaluate(i);
  return std::sqrt(s);
}

inline double point_sum(const FittedFunction& f, const Domain& d) {
  double s = 0.0;
  for (Position i = d.a(); i <= d.b(); ++i) s += f.evaluate(i);
  return s;
}

// Cross term of a partition given as window end positions (last == hi).
inline double partition_cost(std::span<const FesSegment> s1, std::span<const FesSegment> s2,
                             Position lo, const std::vector<Position>& ends) {
  double total = 0.0;
  Position start = lo;
  for (Position e : ends) {
    double a = 0.0, b = 0.0;
    for (const auto& s : s1) {
      if (s.domain.b() >= start && s.domain.a() <= e) a += s.fes * s.fes;
    }
    for (const auto& s : s2) {
      if (s.domain.b() >= start && s.domain.a() <= e) b += s.fes * s.fes;
    }
    total += std::sqrt(a * b);
    start = e + 1;
  }
  return total;
}

// Minimum over every subset of segment endpoints used as cuts.
inline double exhaustive_min(std::span<const FesSegment> s1, std::span<const FesSegment> s2) {
  const Position lo = std::max(s1.front().domain.a(), s2.front().domain.a());
  const Position hi = std::min(s1.back().domain.b(), s2.back().domain.b());
  std::vector<Position> cand;
  for (const auto& s : s1) {
    if (s.domain.b() >= lo && s.domain.b() < hi) cand.push_back(s.domain.b());
  }
  for (const auto& s : s2) {
    if (s.domain.b() >= lo && s.domain.b() < hi) cand.push_back(s.domain.b());
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cand.size()); ++mask) {
    std::vector<Position> ends;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (mask >> k & 1) ends.push_back(cand[k]);
    }
    ends.push_back(hi);
    best = std::min(best, partition_cost(s1, s2, lo, ends));
  }
  return best;
}

// Random contiguous segmentation of [a, b] with random fes.
inline std::vector<FesSegment> random_profile(std::mt19937_64& rng, Position a, Position b, int max_segments,
                                              bool integer_fes = false) {
  std::uniform_int_distribution<int> count(1, max_segments);
  const int k = std::min<std::int64_t>(count(rng), b - a + 1);
  std::vector<Position> cuts;
  for (Position p = a; p < b; ++p) cuts.push_back(p);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(k - 1));
  std::sort(cuts.begin(), cuts.end());
  std::uniform_real_distribution<double> fes(0.0, 3.0);
  std::uniform_int_distribution<int> ifes(0, 5);
  std::vector<FesSegment> out;
  Position start = a;
  for (Position c : cuts) {
    out.push_back({Domain(start, c), integer_fes ? ifes(rng) : fes(rng)});
    start = c + 1;
  }
  out.push_back({Domain(start, b), integer_fes ? ifes(rng) : fes(rng)});
  return out;
}

// One randomized soundness case: two series, compressed with the same
// family and segmentation spec, and an expression over them.
struct SweepCase {
  Catalog catalog;
  std::string expression;
  FamilyDescriptor family;
  SegSpec spec;
};

inline SweepCase sweep_case(std::mt19937_64& rng, int index) {
  static const char* const kFamilies[] = {"p0", "p1", "p2", "g"};
  const auto family = FamilyDescriptor::parse(kFamilies[index % 4]);
  std::uniform_int_distribution<int> fixed_len(5, 30);
  std::uniform_real_distribution<double> tau(0.15, 0.8), scale(1.0, 4.0);
  const double s = scale(rng);
  const SegSpec spec = (index / 4) % 2 == 0 ? SegSpec::fixed(fixed_len(rng)) : SegSpec::sliding(tau(rng) * s);

  const std::int64_t n = 80 + static_cast<std::int64_t>(rng() % 120);
  const Position a1 = static_cast<Position>(rng() % 5);
  const Position a2 = static_cast<Position>(rng() % 5);
  std::uniform_real_distribution<double> period(40.0, 120.0), phase(0.0, 6.283185307179586);
  // The periodic term keeps the variance well above the compression error.
  auto scaled = [&](Position a) {
    const auto base = random_series(rng, a, n, 0.1);
    const double w = 6.283185307179586 / period(rng), ph = phase(rng);
    std::vector<double> v(base.values().begin(), base.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * (v[i] + 2.0 * std::sin(w * static_cast<double>(i) + ph));
    return TimeSeries(a, std::move(v));
  };
  const TimeSeries t1 = scaled(a1), t2 = scaled(a2);

  SweepCase c{Catalog{}, "", family, spec};
  c.catalog.put_raw("T1", t1);
  c.catalog.put_raw("T2", t2);
  c.catalog.put_compressed(compress(t1, family, spec, "T1"));
  c.catalog.put_compressed(compress(t2, family, spec, "T2"));

  const Position lo = std::max(a1, a2), hi = std::min(t1.domain().b(), t2.domain().b());
  const Position r1 = lo + static_cast<Position>(rng() % 20), r2 = hi - static_cast<Position>(rng() % 20);
  const int m = 1 + static_cast<int>(rng() % 10);
  const std::string range = std::to_string(r1) + ", " + std::to_string(r2);
  switch ((index / 8) % 10) {
    case 0: c.expression = "Sum(T1)"; break;
    case 1: c.expression = "Sum(T1, " + range + ")"; break;
    case 2: c.expression = "Sum(T1 + T2)"; break;
    case 3: c.expression = "Sum(T1 - Shift(T2, " + std::to_string(m) + "), " + range + ")"; break;
    case 4: c.expression = "Sum(T1 * T2)"; break;
    case 5: c.expression = "Mu(T1)"; break;
    case 6: c.expression = "Sigma(T1)"; break;
    case 7: c.expression = "Corr(T1, T2)"; break;
    case 8: c.expression = "CCorr(T1, T2, " + std::to_string(m) + ")"; break;
    default: c.expression = "ACorr(T1, " + std::to_string(m) + ")"; break;
  }
  return c;
}

}  // namespace tsapprox::testing
