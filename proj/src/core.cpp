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

#include "tsapprox/core.hpp"

#include <algorithm>
#include <cmath>

namespace tsapprox {

Domain::Domain(Position a, Position b) : a_(a), b_(b) {
  if (a > b) throw DomainError("empty domain " + std::to_string(a) + ".." + std::to_string(b));
}

std::string Domain::str() const {
  return "[" + std::to_string(a_) + "," + std::to_string(b_) + "]";
}

std::optional<Domain> intersect(const Domain& x, const Domain& y) {
  const Position a = std::max(x.a(), y.a());
  const Position b = std::min(x.b(), y.b());
  if (a > b) return std::nullopt;
  return Domain(a, b);
}

TimeSeries::TimeSeries(Domain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != domain_.length()) {
    throw DomainError("series length " + std::to_string(values_.size()) +
                      " does not match domain " + domain_.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("non-finite value in series");
  }
}

namespace {

Domain span_from(Position a, const std::vector<double>& values) {
  if (values.empty()) throw DomainError("empty series");
  return Domain(a, a + static_cast<Position>(values.size()) - 1);
}

}  // namespace

// domain_ is declared before values_, so it is initialized first.
TimeSeries::TimeSeries(Position a, std::vector<double> values)
    : domain_(span_from(a, values)), values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("non-finite value in series");
  }
}

double TimeSeries::at(Position i) const {
  if (!domain_.contains(i)) {
    throw DomainError("position " + std::to_string(i) + " outside " + domain_.str());
  }
  return (*this)[i];
}

ApproxScalar::ApproxScalar(double v, double g) : value(v), guarantee(g < 0.0 ? 0.0 : g) {}

bool ApproxScalar::contains(double truth) const noexcept {
  return std::abs(truth - value) <= guarantee;
}

TimeSeries restrict(const TimeSeries& t, const Domain& sub) {
  if (!t.domain().contains(sub)) {
    throw DomainError(sub.str() + " not contained in " + t.domain().str());
  }
  const auto first = t.values().begin() + (sub.a() - t.domain().a());
  return TimeSeries(sub, std::vector<double>(first, first + sub.length()));
}

TimeSeries shift(const TimeSeries& t, std::int64_t k) {
  return TimeSeries(t.domain().shifted(k), std::vector<double>(t.values().begin(), t.values().end()));
}

double exact_sum(const TimeSeries& t, const Domain& sub) {
  if (!t.domain().contains(sub)) {
    throw DomainError(sub.str() + " not contained in " + t.domain().str());
  }
  double s = 0.0;
  for (Position i = sub.a(); i <= sub.b(); ++i) s += t[i];
  return s;
}

TimeSeries pointwise(PointOp op, const TimeSeries& t1, const TimeSeries& t2) {
  const auto d = intersect(t1.domain(), t2.domain());
  if (!d) {
    throw DomainError("disjoint domains " + t1.domain().str() + " and " + t2.domain().str());
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(d->length()));
  for (Position i = d->a(); i <= d->b(); ++i) {
    switch (op) {
      case PointOp::kAdd: out.push_back(t1[i] + t2[i]); break;
      case PointOp::kSub: out.push_back(t1[i] - t2[i]); break;
      case PointOp::kMul: out.push_back(t1[i] * t2[i]); break;
    }
  }
  return TimeSeries(*d, std::move(out));
}

TimeSeries constant_series(double v, const Domain& d) {
  return TimeSeries(d, std::vector<double>(static_cast<std::size_t>(d.length()), v));
}

}  // namespace tsapprox
