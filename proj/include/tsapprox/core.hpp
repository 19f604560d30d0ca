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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsapprox/errors.hpp"

namespace tsapprox {

using Position = std::int64_t;

// Inclusive integer interval [a, b] with a <= b.
class Domain {
 public:
  Domain(Position a, Position b);

  Position a() const noexcept { return a_; }
  Position b() const noexcept { return b_; }
  std::int64_t length() const noexcept { return b_ - a_ + 1; }

  bool contains(Position i) const noexcept { return a_ <= i && i <= b_; }
  bool contains(const Domain& d) const noexcept { return a_ <= d.a_ && d.b_ <= b_; }
  Domain shifted(std::int64_t k) const { return Domain(a_ + k, b_ + k); }

  friend bool operator==(const Domain&, const Domain&) = default;

  std::string str() const;

 private:
  Position a_;
  Position b_;
};

// Empty optional when the intervals are disjoint.
std::optional<Domain> intersect(const Domain& x, const Domain& y);

// A finite-valued series defined on every integer of its domain.
class TimeSeries {
 public:
  TimeSeries(Domain domain, std::vector<double> values);
  TimeSeries(Position a, std::vector<double> values);

  const Domain& domain() const noexcept { return domain_; }
  std::span<const double> values() const noexcept { return values_; }
  std::int64_t length() const noexcept { return domain_.length(); }

  // Value at absolute position i; throws DomainError outside the domain.
  double at(Position i) const;
  double operator[](Position i) const { return values_[static_cast<std::size_t>(i - domain_.a())]; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  Domain domain_;
  std::vector<double> values_;
};

// Per-segment error measures. fes: L2 norm of residuals, ses: L2 norm of
// the estimated values, tes: |sum of residuals|.
struct ErrorMeasures {
  double fes = 0.0;
  double ses = 0.0;
  double tes = 0.0;

  friend bool operator==(const ErrorMeasures&, const ErrorMeasures&) = default;
};

// An approximate answer with a deterministic bound: the exact answer lies
// in [value - guarantee, value + guarantee].
struct ApproxScalar {
  double value = 0.0;
  double guarantee = 0.0;

  ApproxScalar() = default;
  ApproxScalar(double v, double g);

  static ApproxScalar exact(double v) { return {v, 0.0}; }
  bool contains(double truth) const noexcept;
};

TimeSeries restrict(const TimeSeries& t, const Domain& sub);
TimeSeries shift(const TimeSeries& t, std::int64_t k);
double exact_sum(const TimeSeries& t, const Domain& sub);

enum class PointOp { kAdd, kSub, kMul };

TimeSeries pointwise(PointOp op, const TimeSeries& t1, const TimeSeries& t2);
TimeSeries constant_series(double v, const Domain& d);

}  // namespace tsapprox
