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
#include <string>
#include <vector>

#include "tsapprox/core.hpp"
#include "tsapprox/families.hpp"

namespace tsapprox {

struct SegmentRep {
  Domain domain;
  FittedFunction fn;
  ErrorMeasures em;

  SegmentRep(FittedFunction f, ErrorMeasures m);
};

class CompressedSeries {
 public:
  // Segments must be sorted, contiguous and of the given family.
  CompressedSeries(std::string series_id, FamilyDescriptor family,
                   std::vector<SegmentRep> segments);

  const std::string& series_id() const noexcept { return series_id_; }
  const FamilyDescriptor& family() const noexcept { return family_; }
  const std::vector<SegmentRep>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  const SegmentRep& operator[](std::size_t i) const { return segments_[i]; }
  Domain domain() const;

  std::size_t stored_numbers() const noexcept;
  double compression_ratio() const;

  // Evaluated estimation functions over the whole domain.
  TimeSeries reconstruct() const;

 private:
  std::string series_id_;
  FamilyDescriptor family_;
  std::vector<SegmentRep> segments_;
};

struct SegSpec {
  enum class Kind { kFixed, kSliding };
  Kind kind = Kind::kFixed;
  std::int64_t len = 1;
  double tau = 0.0;
  std::optional<std::int64_t> max_len;

  static SegSpec fixed(std::int64_t len) { return {Kind::kFixed, len, 0.0, std::nullopt}; }
  static SegSpec sliding(double tau, std::optional<std::int64_t> max_len = std::nullopt) {
    return {Kind::kSliding, 1, tau, max_len};
  }
  // "fixed:<len>" or "sliding:<tau>" ("sliding:inf" allowed).
  static SegSpec parse(const std::string& text);
  std::string str() const;
};

std::vector<Domain> segment_fixed(const TimeSeries& t, std::int64_t len);

// Greedy left-to-right windows whose least-squares residual norm stays
// within tau; the first point that breaks the threshold opens the next
// window.
std::vector<Domain> segment_sliding(const TimeSeries& t, const FamilyDescriptor& family,
                                    double tau,
                                    std::optional<std::int64_t> max_len = std::nullopt);

ErrorMeasures error_measures(const TimeSeries& seg, const FittedFunction& fn);

CompressedSeries compress(const TimeSeries& t, const FamilyDescriptor& family,
                          const SegSpec& spec, const std::string& series_id = "T");

}  // namespace tsapprox
