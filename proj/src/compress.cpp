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

#include "tsapprox/compress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tsapprox {
namespace {

double residual_norm(const TimeSeries& seg, const FittedFunction& fn) {
  const auto est = fn.values();
  const auto y = seg.values();
  double s = 0.0;
  for (std::size_t x = 0; x < y.size(); ++x) s += (y[x] - est[x]) * (y[x] - est[x]);
  return std::sqrt(s);
}

struct Window {
  Domain domain;
  FittedFunction fn;
};

std::vector<Window> sliding_windows(const TimeSeries& t, const FamilyDescriptor& family,
                                    double tau, std::optional<std::int64_t> max_len) {
  if (!(tau > 0.0)) throw Error("segspec", "sliding threshold must be positive");
  if (max_len && *max_len < 1) throw Error("segspec", "max length must be positive");
  std::vector<Window> out;
  const Domain full = t.domain();
  const std::int64_t cap = max_len.value_or(std::numeric_limits<std::int64_t>::max());
  if (std::isinf(tau) && cap >= full.length()) {
    out.push_back({full, fit(family, t)});
    return out;
  }
  Position start = full.a();
  while (start <= full.b()) {
    const Position last = std::min(full.b(), start + std::min(cap, full.length()) - 1);
    Domain cur(start, start);
    FittedFunction cur_fn = fit(family, restrict(t, cur));
    // Try extending the accepted window to end e; on success cur moves there.
    auto accept = [&](Position e) {
      const Domain grown(start, e);
      const auto seg = restrict(t, grown);
      auto fn = fit(family, seg, &cur_fn);
      if (residual_norm(seg, fn) > tau) return false;
      cur = grown;
      cur_fn = std::move(fn);
      return true;
    };
    // Galloping then bisection. The least-squares residual never shrinks as
    // the window grows, so this finds the same end as a point-by-point scan.
    Position fail = last + 1;
    for (std::int64_t step = 1; cur.b() < last;) {
      const Position probe = std::min(last, cur.b() + step);
      if (!accept(probe)) {
        fail = probe;
        break;
      }
      step *= 2;
    }
    while (fail - cur.b() > 1) {
      const Position mid = cur.b() + (fail - cur.b()) / 2;
      if (!accept(mid)) fail = mid;
    }
    out.push_back({cur, std::move(cur_fn)});
    start = cur.b() + 1;
  }
  return out;
}

}  // namespace

SegmentRep::SegmentRep(FittedFunction f, ErrorMeasures m)
    : domain(f.domain()), fn(std::move(f)), em(m) {
  if (!(em.fes >= 0.0 && em.ses >= 0.0 && em.tes >= 0.0)) {
    throw ContractViolation("error measures must be non-negative");
  }
}

CompressedSeries::CompressedSeries(std::string series_id, FamilyDescriptor family,
                                   std::vector<SegmentRep> segments)
    : series_id_(std::move(series_id)), family_(std::move(family)), segments_(std::move(segments)) {
  if (segments_.empty()) throw ContractViolation("compressed series " + series_id_ + " has no segments");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!(segments_[i].fn.family() == family_)) {
      throw ContractViolation("segment family " + segments_[i].fn.family().id() +
                              " differs from series family " + family_.id());
    }
    if (i > 0 && segments_[i].domain.a() != segments_[i - 1].domain.b() + 1) {
      throw ContractViolation("segments of " + series_id_ + " are not contiguous at " +
                              segments_[i].domain.str());
    }
  }
}

Domain CompressedSeries::domain() const {
  return Domain(segments_.front().domain.a(), segments_.back().domain.b());
}

std::size_t CompressedSeries::stored_numbers() const noexcept {
  return segments_.size() * static_cast<std::size_t>(family_.stored_numbers_per_segment());
}

double CompressedSeries::compression_ratio() const {
  return static_cast<double>(domain().length()) / static_cast<double>(stored_numbers());
}

TimeSeries CompressedSeries::reconstruct() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(domain().length()));
  for (const auto& s : segments_) {
    const auto v = s.fn.values();
    out.insert(out.end(), v.begin(), v.end());
  }
  return TimeSeries(domain(), std::move(out));
}

SegSpec SegSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("segspec", "expected fixed:<len> or sliding:<tau>, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    if (kind == "fixed") {
      const long long len = std::stoll(arg, &used);
      if (used != arg.size() || len < 1) throw std::invalid_argument(arg);
      return fixed(len);
    }
    if (kind == "sliding") {
      const double tau = std::stod(arg, &used);
      if (used != arg.size() || !(tau > 0.0)) throw std::invalid_argument(arg);
      return sliding(tau);
    }
  } catch (const std::logic_error&) {
    throw Error("segspec", "invalid argument in '" + text + "'");
  }
  throw Error("segspec", "unknown segmentation '" + kind + "'");
}

std::string SegSpec::str() const {
  std::ostringstream os;
  if (kind == Kind::kFixed) {
    os << "fixed:" << len;
  } else {
    os << "sliding:" << tau;
  }
  return os.str();
}

std::vector<Domain> segment_fixed(const TimeSeries& t, std::int64_t len) {
  if (len < 1) throw Error("segspec", "fixed window length must be positive");
  std::vector<Domain> out;
  const Domain d = t.domain();
  for (Position a = d.a(); a <= d.b(); a += len) {
    out.emplace_back(a, std::min(d.b(), a + len - 1));
  }
  return out;
}

std::vector<Domain> segment_sliding(const TimeSeries& t, const FamilyDescriptor& family,
                                    double tau, std::optional<std::int64_t> max_len) {
  std::vector<Domain> out;
  for (auto& w : sliding_windows(t, family, tau, max_len)) out.push_back(w.domain);
  return out;
}

ErrorMeasures error_measures(const TimeSeries& seg, const FittedFunction& fn) {
  if (!(seg.domain() == fn.domain())) {
    throw DomainError("function domain " + fn.domain().str() + " differs from segment " +
                      seg.domain().str());
  }
  const auto est = fn.values();
  const auto y = seg.values();
  double r2 = 0.0, f2 = 0.0, rs = 0.0;
  for (std::size_t x = 0; x < y.size(); ++x) {
    const double r = y[x] - est[x];
    r2 += r * r;
    f2 += est[x] * est[x];
    rs += r;
  }
  return {std::sqrt(r2), std::sqrt(f2), std::abs(rs)};
}

CompressedSeries compress(const TimeSeries& t, const FamilyDescriptor& family,
                          const SegSpec& spec, const std::string& series_id) {
  std::vector<SegmentRep> reps;
  if (spec.kind == SegSpec::Kind::kFixed) {
    for (const auto& d : segment_fixed(t, spec.len)) {
      const auto seg = restrict(t, d);
      auto fn = fit(family, seg);
      const auto em = error_measures(seg, fn);
      reps.emplace_back(std::move(fn), em);
    }
  } else {
    for (auto& w : sliding_windows(t, family, spec.tau, spec.max_len)) {
      const auto em = error_measures(restrict(t, w.domain), w.fn);
      reps.emplace_back(std::move(w.fn), em);
    }
  }
  return CompressedSeries(series_id, family, std::move(reps));
}

}  // namespace tsapprox
