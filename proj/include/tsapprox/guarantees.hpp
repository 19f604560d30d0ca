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

// Deterministic error guarantees over compressed series.
//
// Every bound here follows from splitting the true value into estimate plus
// residual and applying Cauchy-Schwarz / Hoelder to the cross terms. For
// Sum(T1 x T2) the error is <e1, f2> + <e2, f1> + <e1, e2>:
//
//                  | ANY                         | VS / LSF
//   aligned        | fes1 fes2 + fes1 ses2       | fes1 fes2
//                  |   + ses1 fes2               |
//   misaligned     | fes1 (cover ses2) +         | fes1 dist(f2, F1) +
//                  | fes2 (cover ses1) + cross   | fes2 dist(f1, F2) + cross
//
// where cross bounds <e1, e2> over the optimal segment combination and
// dist is the distance of the other operand's estimate from the family,
// computed on orthonormal-basis coefficients.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsapprox/compress.hpp"
#include "tsapprox/core.hpp"

namespace tsapprox {

// A compressed series seen through a time shift.
class SeriesView {
 public:
  SeriesView(const CompressedSeries& cs, std::int64_t shift = 0) : cs_(&cs), shift_(shift) {}  // NOLINT

  const CompressedSeries& series() const noexcept { return *cs_; }
  std::int64_t shift() const noexcept { return shift_; }
  const FamilyDescriptor& family() const noexcept { return cs_->family(); }
  std::size_t size() const noexcept { return cs_->size(); }

  Domain domain() const { return cs_->domain().shifted(shift_); }
  Domain segment_domain(std::size_t i) const { return (*cs_)[i].domain.shifted(shift_); }
  const ErrorMeasures& measures(std::size_t i) const { return (*cs_)[i].em; }
  FittedFunction function(std::size_t i) const { return (*cs_)[i].fn.shifted(shift_); }

  // Index of the segment holding absolute position p (p must be inside).
  std::size_t locate(Position p) const;

 private:
  const CompressedSeries* cs_;
  std::int64_t shift_;
};

// Minimal set of segments whose union contains d (d inside the series).
std::vector<std::size_t> cover(const SeriesView& l, const Domain& d);

// True iff both series cut their common domain at exactly the same places,
// so every segment inside it is a whole segment of both.
bool check_aligned(const SeriesView& l1, const SeriesView& l2);

// --- segment combination ---------------------------------------------------

// A segment reduced to what the residual cross term needs.
struct FesSegment {
  Domain domain;
  double fes;
};

struct SegmentCombination {
  std::vector<Domain> windows;
  double cross_term = 0.0;
};

// Partition of the common domain (cut only at segment ends) minimising
//   sum_w sqrt(sum_{cover1(w)} fes^2) * sqrt(sum_{cover2(w)} fes^2).
// Inputs must be sorted and contiguous; they are clipped to their overlap.
SegmentCombination os_combination(std::span<const FesSegment> s1, std::span<const FesSegment> s2);
SegmentCombination os_combination(const SeriesView& l1, const SeriesView& l2);

// Cross term of one partition (used by tests and by is_combination_value).
double combination_cost(std::span<const FesSegment> s1, std::span<const FesSegment> s2,
                        std::span<const Domain> windows);

// The better of the two single-series window choices.
double is_combination_value(std::span<const FesSegment> s1, std::span<const FesSegment> s2);
double is_combination_value(const SeriesView& l1, const SeriesView& l2);

// --- product guarantees -----------------------------------------------------

// Aligned product guarantee per segment pair. Orthogonality flags say
// whether e1 is orthogonal to f2 (and e2 to f1); with both set this is
// sum fes1 fes2, with neither it is the full three-term form.
double aligned_product_bound(std::span<const ErrorMeasures> m1, std::span<const ErrorMeasures> m2,
                             bool e1_orth_f2, bool e2_orth_f1);

// Sum(T1 x T2) guarantee over the common domain of aligned inputs; throws
// ContractViolation on misaligned inputs.
double guarantee_product_aligned(const SeriesView& l1, const SeriesView& l2);

// Misaligned product guarantee over the common domain (valid for aligned
// inputs as well, where it reduces to the aligned form).
double guarantee_product_misaligned(const SeriesView& l1, const SeriesView& l2);

// Same bound with the generic cover-ses terms forced even for LSF inputs.
double guarantee_product_misaligned_any(const SeriesView& l1, const SeriesView& l2);

// Approximate Sum(T1 x T2) over r with its guarantee, dispatching between
// the aligned and misaligned forms.
ApproxScalar product_sum(const SeriesView& l1, const SeriesView& l2, const Domain& r);

// Approximate Sum(T1 x ... x Tk) over r for k >= 1 via piecewise measure
// propagation (the fallback for k >= 3).
ApproxScalar generic_product_sum(std::span<const SeriesView> views, const Domain& r);

// Approximate Sum(T) over sub: whole segments contribute tes, partially
// covered ones sqrt(overlap) * fes.
ApproxScalar guarantee_sum_range(const SeriesView& l, const Domain& sub);

// --- propagation ------------------------------------------------------------

enum class MeasureOp { kAdd, kSub, kMul };

// Measures of a derived single-segment series. For x with vs set the tes
// drops the amplitude terms.
ErrorMeasures propagate_measures(MeasureOp op, const ErrorMeasures& es1, const ErrorMeasures& es2,
                                 bool vs);

enum class ScalarOp { kAdd, kSub, kMul, kDiv };

// Interval-style propagation; a literal is an ApproxScalar with guarantee 0.
ApproxScalar propagate_scalar(ScalarOp op, const ApproxScalar& a1, const ApproxScalar& a2);
ApproxScalar propagate_sqrt(const ApproxScalar& a);
ApproxScalar propagate_neg(const ApproxScalar& a);

}  // namespace tsapprox
