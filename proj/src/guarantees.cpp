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

#include "tsapprox/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsapprox/basis.hpp"

namespace tsapprox {
namespace {

Domain common_domain(const SeriesView& l1, const SeriesView& l2) {
  auto d = intersect(l1.domain(), l2.domain());
  if (!d) {
    throw DomainError("series " + l1.series().series_id() + " " + l1.domain().str() + " and " +
                      l2.series().series_id() + " " + l2.domain().str() + " do not overlap");
  }
  return *d;
}

void require_inside(const SeriesView& l, const Domain& r) {
  if (!l.domain().contains(r)) {
    throw DomainError("range " + r.str() + " is outside series " + l.series().series_id() + " " +
                      l.domain().str());
  }
}

int exact_dim(int d, const Domain& p) {
  return static_cast<int>(std::min<std::int64_t>(d, p.length()));
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// ||f restricted to p||, exact.
double piece_norm(const FittedFunction& f, const Domain& p) {
  if (p == f.domain()) return f.norm();
  if (f.family().is_lsf()) return norm2(restricted_coeffs(f, p, exact_dim(f.dim(), p)));
  double s = 0.0;
  for (Position i = p.a(); i <= p.b(); ++i) {
    const double v = f.evaluate(i);
    s += v * v;
  }
  return std::sqrt(s);
}

double piece_sum(const FittedFunction& f, const Domain& p) {
  if (p == f.domain()) return f.sum();
  if (f.family().is_lsf()) {
    return restricted_coeffs(f, p, 1)[0] * std::sqrt(static_cast<double>(p.length()));
  }
  double s = 0.0;
  for (Position i = p.a(); i <= p.b(); ++i) s += f.evaluate(i);
  return s;
}

double piece_dot(const FittedFunction& f1, const FittedFunction& f2, const Domain& p) {
  if (f1.family().is_lsf() && f2.family().is_lsf()) {
    const int d = exact_dim(std::max(f1.dim(), f2.dim()), p);
    const auto c1 = restricted_coeffs(f1, p, d);
    const auto c2 = restricted_coeffs(f2, p, d);
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += c1[static_cast<std::size_t>(k)] * c2[static_cast<std::size_t>(k)];
    return s;
  }
  double s = 0.0;
  for (Position i = p.a(); i <= p.b(); ++i) s += f1.evaluate(i) * f2.evaluate(i);
  return s;
}

std::vector<FesSegment> fes_profile(const SeriesView& l, const Domain& r) {
  std::vector<FesSegment> out;
  for (std::size_t i : cover(l, r)) {
    out.push_back({*intersect(l.segment_domain(i), r), l.measures(i).fes});
  }
  return out;
}

std::vector<FesSegment> clip(std::span<const FesSegment> s, const Domain& d) {
  std::vector<FesSegment> out;
  for (const auto& seg : s) {
    if (auto x = intersect(seg.domain, d)) out.push_back({*x, seg.fes});
  }
  return out;
}

void check_profile(std::span<const FesSegment> s) {
  if (s.empty()) throw ContractViolation("segment list is empty");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].fes >= 0.0)) throw ContractViolation("fes must be non-negative");
    if (i > 0 && s[i].domain.a() != s[i - 1].domain.b() + 1) {
      throw ContractViolation("segment list is not contiguous at " + s[i].domain.str());
    }
  }
}

// Index of the segment of s holding p.
std::size_t seg_index(std::span<const FesSegment> s, Position p) {
  auto it = std::upper_bound(s.begin(), s.end(), p,
                             [](Position x, const FesSegment& seg) { return x < seg.domain.a(); });
  return static_cast<std::size_t>(it - s.begin()) - 1;
}

// Distance on p (a whole segment of la, fitted by fa) between lb's
// estimate and the span of fa's family on p. Computed per overlap piece in
// coefficient space, so no cancellation between large estimates occurs.
double family_distance(const FittedFunction& fa, const SeriesView& lb, const Domain& p) {
  const int da = fa.dim();
  const auto pb = build_basis(p, da);
  struct Piece {
    std::vector<double> g;
    BasisTransform b;
  };
  std::vector<Piece> pieces;
  std::vector<double> proj(static_cast<std::size_t>(da), 0.0);
  for (std::size_t j : cover(lb, p)) {
    const Domain q = *intersect(p, lb.segment_domain(j));
    const auto fb = lb.function(j);
    const int dq = exact_dim(std::max(da, fb.dim()), q);
    auto g = restricted_coeffs(fb, q, dq);
    auto b = psi(pb, build_basis(q, dq));
    for (int k = 0; k < da; ++k) {
      double s = 0.0;
      for (int l = 0; l < dq; ++l) s += g[static_cast<std::size_t>(l)] * b.at(k, l);
      proj[static_cast<std::size_t>(k)] += s;
    }
    pieces.push_back({std::move(g), std::move(b)});
  }
  double d2 = 0.0;
  for (const auto& pc : pieces) {
    for (int l = 0; l < pc.b.cols; ++l) {
      double r = pc.g[static_cast<std::size_t>(l)];
      for (int k = 0; k < da; ++k) r -= proj[static_cast<std::size_t>(k)] * pc.b.at(k, l);
      d2 += r * r;
    }
  }
  return std::sqrt(d2);
}

// Bound on |<e_a, f_b>| over r, summed over la's segments.
double residual_estimate_term(const SeriesView& la, const SeriesView& lb, const Domain& r,
                              bool allow_lsf) {
  const bool lsf = allow_lsf && la.family().is_lsf() && lb.family().is_lsf();
  double total = 0.0;
  for (std::size_t i : cover(la, r)) {
    const double fes = la.measures(i).fes;
    if (fes == 0.0) continue;
    const Domain seg = la.segment_domain(i);
    const Domain p = *intersect(seg, r);
    double other = 0.0;
    if (lsf && p == seg) {
      other = family_distance(la.function(i), lb, p);
    } else if (allow_lsf && lb.family().is_lsf()) {
      double s2 = 0.0;
      for (std::size_t j : cover(lb, p)) {
        const double n = piece_norm(lb.function(j), *intersect(p, lb.segment_domain(j)));
        s2 += n * n;
      }
      other = std::sqrt(s2);
    } else {
      double s2 = 0.0;
      for (std::size_t j : cover(lb, p)) s2 += lb.measures(j).ses * lb.measures(j).ses;
      other = std::sqrt(s2);
    }
    total += fes * other;
  }
  return total;
}

bool aligned_on(const SeriesView& l1, const SeriesView& l2, const Domain& r) {
  const auto c1 = cover(l1, r);
  const auto c2 = cover(l2, r);
  if (c1.size() != c2.size()) return false;
  for (std::size_t k = 0; k < c1.size(); ++k) {
    const Domain d1 = l1.segment_domain(c1[k]);
    if (!(d1 == l2.segment_domain(c2[k])) || !r.contains(d1)) return false;
  }
  return true;
}

double aligned_bound_on(const SeriesView& l1, const SeriesView& l2, const Domain& r) {
  std::vector<ErrorMeasures> m1, m2;
  for (std::size_t i : cover(l1, r)) m1.push_back(l1.measures(i));
  for (std::size_t i : cover(l2, r)) m2.push_back(l2.measures(i));
  const auto& f1 = l1.family();
  const auto& f2 = l2.family();
  return aligned_product_bound(m1, m2, f1.is_vs() && f1.contains(f2), f2.is_vs() && f2.contains(f1));
}

double misaligned_bound_on(const SeriesView& l1, const SeriesView& l2, const Domain& r,
                           bool allow_lsf) {
  const auto p1 = fes_profile(l1, r);
  const auto p2 = fes_profile(l2, r);
  return residual_estimate_term(l1, l2, r, allow_lsf) + residual_estimate_term(l2, l1, r, allow_lsf) +
         os_combination(p1, p2).cross_term;
}

}  // namespace

std::size_t SeriesView::locate(Position p) const {
  const Position local = p - shift_;
  const auto& segs = cs_->segments();
  auto it = std::upper_bound(segs.begin(), segs.end(), local,
                             [](Position x, const SegmentRep& s) { return x < s.domain.a(); });
  if (it == segs.begin() || !std::prev(it)->domain.contains(local)) {
    throw DomainError("position " + std::to_string(p) + " is outside series " + cs_->series_id());
  }
  return static_cast<std::size_t>(it - segs.begin()) - 1;
}

std::vector<std::size_t> cover(const SeriesView& l, const Domain& d) {
  require_inside(l, d);
  const std::size_t first = l.locate(d.a());
  const std::size_t last = l.locate(d.b());
  std::vector<std::size_t> out;
  out.reserve(last - first + 1);
  for (std::size_t i = first; i <= last; ++i) out.push_back(i);
  return out;
}

bool check_aligned(const SeriesView& l1, const SeriesView& l2) {
  return aligned_on(l1, l2, common_domain(l1, l2));
}

SegmentCombination os_combination(std::span<const FesSegment> s1_in,
                                  std::span<const FesSegment> s2_in) {
  check_profile(s1_in);
  check_profile(s2_in);
  const Position lo = std::max(s1_in.front().domain.a(), s2_in.front().domain.a());
  const Position hi = std::min(s1_in.back().domain.b(), s2_in.back().domain.b());
  if (lo > hi) throw DomainError("segment lists do not overlap");
  const Domain d(lo, hi);
  const auto s1 = clip(s1_in, d);
  const auto s2 = clip(s2_in, d);

  std::vector<double> pre1(s1.size() + 1, 0.0), pre2(s2.size() + 1, 0.0);
  for (std::size_t i = 0; i < s1.size(); ++i) pre1[i + 1] = pre1[i] + s1[i].fes * s1[i].fes;
  for (std::size_t i = 0; i < s2.size(); ++i) pre2[i + 1] = pre2[i] + s2[i].fes * s2[i].fes;

  std::vector<Position> cuts;
  for (const auto& s : s1) cuts.push_back(s.domain.b());
  for (const auto& s : s2) cuts.push_back(s.domain.b());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const std::size_t k = cuts.size();

  // Window (s, t) spans [start(s), cuts[t-1]] with start(0) = lo.
  std::vector<std::size_t> b1(k), b2(k), e1(k + 1), e2(k + 1);
  for (std::size_t s = 0; s < k; ++s) {
    const Position start = s == 0 ? lo : cuts[s - 1] + 1;
    b1[s] = seg_index(s1, start);
    b2[s] = seg_index(s2, start);
  }
  for (std::size_t t = 1; t <= k; ++t) {
    e1[t] = seg_index(s1, cuts[t - 1]);
    e2[t] = seg_index(s2, cuts[t - 1]);
  }
  auto cost = [&](std::size_t s, std::size_t t) {
    const double a = std::max(0.0, pre1[e1[t] + 1] - pre1[b1[s]]);
    const double b = std::max(0.0, pre2[e2[t] + 1] - pre2[b2[s]]);
    return std::sqrt(a) * std::sqrt(b);
  };

  // best[] is nondecreasing and cost(s, t) grows as s falls, so the scan
  // may stop once the window alone reaches the incumbent.
  std::vector<double> best(k + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(k + 1, 0);
  best[0] = 0.0;
  for (std::size_t t = 1; t <= k; ++t) {
    for (std::size_t s = t; s-- > 0;) {
      const double c = cost(s, t);
      if (best[s] + c < best[t]) {
        best[t] = best[s] + c;
        parent[t] = s;
      }
      if (c >= best[t]) break;
    }
  }

  SegmentCombination out;
  out.cross_term = best[k];
  for (std::size_t t = k; t > 0; t = parent[t]) {
    const std::size_t s = parent[t];
    out.windows.emplace_back(s == 0 ? lo : cuts[s - 1] + 1, cuts[t - 1]);
  }
  std::reverse(out.windows.begin(), out.windows.end());
  return out;
}

SegmentCombination os_combination(const SeriesView& l1, const SeriesView& l2) {
  const Domain d = common_domain(l1, l2);
  return os_combination(fes_profile(l1, d), fes_profile(l2, d));
}

double combination_cost(std::span<const FesSegment> s1, std::span<const FesSegment> s2,
                        std::span<const Domain> windows) {
  double total = 0.0;
  for (const auto& w : windows) {
    double a = 0.0, b = 0.0;
    for (const auto& s : s1) {
      if (intersect(s.domain, w)) a += s.fes * s.fes;
    }
    for (const auto& s : s2) {
      if (intersect(s.domain, w)) b += s.fes * s.fes;
    }
    total += std::sqrt(a) * std::sqrt(b);
  }
  return total;
}

double is_combination_value(std::span<const FesSegment> s1_in, std::span<const FesSegment> s2_in) {
  check_profile(s1_in);
  check_profile(s2_in);
  const Position lo = std::max(s1_in.front().domain.a(), s2_in.front().domain.a());
  const Position hi = std::min(s1_in.back().domain.b(), s2_in.back().domain.b());
  if (lo > hi) throw DomainError("segment lists do not overlap");
  const auto s1 = clip(s1_in, Domain(lo, hi));
  const auto s2 = clip(s2_in, Domain(lo, hi));
  auto with_windows_of = [&](const std::vector<FesSegment>& s) {
    std::vector<Domain> w;
    for (const auto& seg : s) w.push_back(seg.domain);
    return combination_cost(s1, s2, w);
  };
  return std::min(with_windows_of(s1), with_windows_of(s2));
}

double is_combination_value(const SeriesView& l1, const SeriesView& l2) {
  const Domain d = common_domain(l1, l2);
  return is_combination_value(fes_profile(l1, d), fes_profile(l2, d));
}

double aligned_product_bound(std::span<const ErrorMeasures> m1, std::span<const ErrorMeasures> m2,
                             bool e1_orth_f2, bool e2_orth_f1) {
  if (m1.size() != m2.size()) throw ContractViolation("aligned inputs must have equal segment counts");
  double total = 0.0;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    total += m1[i].fes * m2[i].fes;
    if (!e1_orth_f2) total += m1[i].fes * m2[i].ses;
    if (!e2_orth_f1) total += m1[i].ses * m2[i].fes;
  }
  return total;
}

double guarantee_product_aligned(const SeriesView& l1, const SeriesView& l2) {
  const Domain d = common_domain(l1, l2);
  if (!aligned_on(l1, l2, d)) {
    throw ContractViolation("series " + l1.series().series_id() + " and " + l2.series().series_id() +
                            " are not aligned");
  }
  return aligned_bound_on(l1, l2, d);
}

double guarantee_product_misaligned(const SeriesView& l1, const SeriesView& l2) {
  return misaligned_bound_on(l1, l2, common_domain(l1, l2), true);
}

double guarantee_product_misaligned_any(const SeriesView& l1, const SeriesView& l2) {
  return misaligned_bound_on(l1, l2, common_domain(l1, l2), false);
}

ApproxScalar product_sum(const SeriesView& l1, const SeriesView& l2, const Domain& r) {
  require_inside(l1, r);
  require_inside(l2, r);
  double value = 0.0;
  std::size_t i = l1.locate(r.a());
  std::size_t j = l2.locate(r.a());
  Position cur = r.a();
  while (cur <= r.b()) {
    const Domain d1 = l1.segment_domain(i);
    const Domain d2 = l2.segment_domain(j);
    const Position end = std::min({d1.b(), d2.b(), r.b()});
    value += piece_dot(l1.function(i), l2.function(j), Domain(cur, end));
    if (d1.b() == end) ++i;
    if (d2.b() == end) ++j;
    cur = end + 1;
  }
  const double g = aligned_on(l1, l2, r) ? aligned_bound_on(l1, l2, r)
                                         : misaligned_bound_on(l1, l2, r, true);
  return {value, g};
}

ApproxScalar generic_product_sum(std::span<const SeriesView> views, const Domain& r) {
  if (views.empty()) throw ContractViolation("product needs at least one factor");
  std::vector<std::size_t> idx;
  for (const auto& v : views) {
    require_inside(v, r);
    idx.push_back(v.locate(r.a()));
  }
  double value = 0.0, guarantee = 0.0;
  Position cur = r.a();
  std::vector<FittedFunction> fns;
  while (cur <= r.b()) {
    Position end = r.b();
    for (std::size_t k = 0; k < views.size(); ++k) end = std::min(end, views[k].segment_domain(idx[k]).b());
    const Domain p(cur, end);
    fns.clear();
    for (std::size_t k = 0; k < views.size(); ++k) fns.push_back(views[k].function(idx[k]));

    for (Position x = p.a(); x <= p.b(); ++x) {
      double prod = 1.0;
      for (const auto& f : fns) prod *= f.evaluate(x);
      value += prod;
    }

    if (views.size() == 1) {
      const auto& em = views[0].measures(idx[0]);
      guarantee += p == views[0].segment_domain(idx[0])
                       ? em.tes
                       : std::sqrt(static_cast<double>(p.length())) * em.fes;
    } else {
      ErrorMeasures acc{views[0].measures(idx[0]).fes, piece_norm(fns[0], p), 0.0};
      for (std::size_t k = 1; k < views.size(); ++k) {
        const ErrorMeasures next{views[k].measures(idx[k]).fes, piece_norm(fns[k], p), 0.0};
        acc = propagate_measures(MeasureOp::kMul, acc, next, false);
      }
      guarantee += acc.tes;
    }

    for (std::size_t k = 0; k < views.size(); ++k) {
      if (views[k].segment_domain(idx[k]).b() == end) ++idx[k];
    }
    cur = end + 1;
  }
  return {value, guarantee};
}

ApproxScalar guarantee_sum_range(const SeriesView& l, const Domain& sub) {
  double value = 0.0, g = 0.0;
  for (std::size_t i : cover(l, sub)) {
    const Domain seg = l.segment_domain(i);
    const Domain p = *intersect(seg, sub);
    if (p == seg) {
      value += l.function(i).sum();
      g += l.measures(i).tes;
    } else {
      value += piece_sum(l.function(i), p);
      g += std::sqrt(static_cast<double>(p.length())) * l.measures(i).fes;
    }
  }
  return {value, g};
}

ErrorMeasures propagate_measures(MeasureOp op, const ErrorMeasures& es1, const ErrorMeasures& es2,
                                 bool vs) {
  switch (op) {
    case MeasureOp::kAdd:
    case MeasureOp::kSub:
      return {es1.fes + es2.fes, es1.ses + es2.ses, es1.tes + es2.tes};
    case MeasureOp::kMul: {
      const double fes = es1.fes * es2.ses + es1.ses * es2.fes + es1.fes * es2.fes;
      return {fes, es1.ses * es2.ses, vs ? es1.fes * es2.fes : fes};
    }
  }
  throw ContractViolation("unknown measure operation");
}

ApproxScalar propagate_scalar(ScalarOp op, const ApproxScalar& a1, const ApproxScalar& a2) {
  const double v1 = a1.value, e1 = a1.guarantee;
  const double v2 = a2.value, e2 = a2.guarantee;
  switch (op) {
    case ScalarOp::kAdd:
      return {v1 + v2, e1 + e2};
    case ScalarOp::kSub:
      return {v1 - v2, e1 + e2};
    case ScalarOp::kMul:
      return {v1 * v2, e1 * std::abs(v2) + e2 * std::abs(v1) + e1 * e2};
    case ScalarOp::kDiv: {
      const double margin = std::abs(v2) - e2;
      if (!(margin > 0.0)) {
        throw UnboundedGuarantee("divisor " + std::to_string(v2) + " +/- " + std::to_string(e2) +
                                 " may be zero");
      }
      return {v1 / v2, (e1 * std::abs(v2) + e2 * std::abs(v1)) / (margin * std::abs(v2))};
    }
  }
  throw ContractViolation("unknown scalar operation");
}

ApproxScalar propagate_sqrt(const ApproxScalar& a) {
  const double v = a.value, e = a.guarantee;
  if (v + e < 0.0) throw EvalError("square root of a negative value " + std::to_string(v));
  const double root = std::sqrt(std::max(v, 0.0));
  const double up = std::sqrt(v + e) - root;
  const double down = root - std::sqrt(std::max(v - e, 0.0));
  return {root, std::max(up, down)};
}

ApproxScalar propagate_neg(const ApproxScalar& a) { return {-a.value, a.guarantee}; }

}  // namespace tsapprox
