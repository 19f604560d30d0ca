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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "test_support.hpp"
#include "tsapprox/compress.hpp"

using namespace tsapprox;

namespace {

double fes_of(const TimeSeries& t, const FamilyDescriptor& fam, const Domain& d) {
  const auto seg = restrict(t, d);
  return error_measures(seg, fit(fam, seg)).fes;
}

}  // namespace

TEST_CASE("fixed segmentation") {
  const TimeSeries t10 = constant_series(1.0, Domain(1, 10));
  CHECK(segment_fixed(t10, 5) == std::vector<Domain>{Domain(1, 5), Domain(6, 10)});
  const TimeSeries t7 = constant_series(1.0, Domain(1, 7));
  CHECK(segment_fixed(t7, 3) == std::vector<Domain>{Domain(1, 3), Domain(4, 6), Domain(7, 7)});
  CHECK(segment_fixed(t7, 100) == std::vector<Domain>{Domain(1, 7)});
  CHECK_THROWS(segment_fixed(t7, 0));
}

TEST_CASE("segmentation specs") {
  CHECK(SegSpec::parse("fixed:10").kind == SegSpec::Kind::kFixed);
  CHECK(SegSpec::parse("fixed:10").len == 10);
  CHECK(SegSpec::parse("sliding:0.5").tau == 0.5);
  CHECK(std::isinf(SegSpec::parse("sliding:inf").tau));
  CHECK_THROWS(SegSpec::parse("fixed:0"));
  CHECK_THROWS(SegSpec::parse("sliding:-1"));
  CHECK_THROWS(SegSpec::parse("window:3"));
  CHECK_THROWS(SegSpec::parse("fixed"));
  CHECK(SegSpec::parse("fixed:12").str() == "fixed:12");
}

TEST_CASE("sliding window segmentation") {
  const auto p1 = FamilyDescriptor::polynomial(1);

  SUBCASE("cuts at a slope change") {
    std::vector<double> v;
    for (int i = 1; i <= 40; ++i) v.push_back(i <= 25 ? 0.5 * i : 12.5 - 2.0 * (i - 25));
    const TimeSeries t(1, v);
    const auto segs = segment_sliding(t, p1, 1e-6);
    REQUIRE(segs.size() >= 2);
    CHECK(std::abs(segs[0].b() - 25) <= 1);
  }
  SUBCASE("constant series is one segment") {
    CHECK(segment_sliding(constant_series(2.0, Domain(0, 99)), p1, 1e-3).size() == 1);
  }
  SUBCASE("infinite threshold is one segment") {
    std::mt19937_64 rng(1);
    const auto t = testing::random_series(rng, 0, 200, 1.0);
    CHECK(segment_sliding(t, p1, std::numeric_limits<double>::infinity()).size() == 1);
    CHECK(segment_sliding(t, FamilyDescriptor::gaussian(), std::numeric_limits<double>::infinity()).size() == 1);
  }
  SUBCASE("threshold and greedy maximality") {
    std::mt19937_64 rng(42);
    for (const auto& fam : {FamilyDescriptor::polynomial(0), p1, FamilyDescriptor::polynomial(2)}) {
      const auto t = testing::random_series(rng, 5, 150, 0.3);
      const double tau = 0.8;
      const auto segs = segment_sliding(t, fam, tau);
      CHECK(segs.front().a() == t.domain().a());
      CHECK(segs.back().b() == t.domain().b());
      for (std::size_t i = 0; i < segs.size(); ++i) {
        if (i > 0) CHECK(segs[i].a() == segs[i - 1].b() + 1);
        CHECK(fes_of(t, fam, segs[i]) <= tau);
        if (i + 1 < segs.size()) {
          CHECK(fes_of(t, fam, Domain(segs[i].a(), segs[i].b() + 1)) > tau);
        }
      }
    }
  }
  SUBCASE("max length cap") {
    const auto segs = segment_sliding(constant_series(1.0, Domain(1, 25)), p1, 1.0, 10);
    CHECK(segs == std::vector<Domain>{Domain(1, 10), Domain(11, 20), Domain(21, 25)});
  }
}

TEST_CASE("error measures") {
  const TimeSeries t(1, {3.0, 4.0});
  const FittedFunction zero(FamilyDescriptor::polynomial(0), Domain(1, 2), {0.0});
  const auto em = error_measures(t, zero);
  CHECK(em.fes == doctest::Approx(5.0));
  CHECK(em.ses == 0.0);
  CHECK(em.tes == doctest::Approx(7.0));

  const TimeSeries lin(1, {1.0, 2.0, 3.0});
  const auto exact = error_measures(lin, fit(FamilyDescriptor::polynomial(1), lin));
  CHECK(exact.fes < 1e-14);
  CHECK(exact.ses == doctest::Approx(std::sqrt(14.0)).epsilon(1e-14));
  CHECK(exact.tes < 1e-14);

  CHECK_THROWS_AS(error_measures(TimeSeries(2, {3.0, 4.0}), zero), DomainError);
}

TEST_CASE("tes never exceeds sqrt(length) fes") {
  std::mt19937_64 rng(8);
  for (const char* tok : {"p0", "p1", "p2", "g"}) {
    const auto cs = compress(testing::random_series(rng, 0, 120, 0.4), FamilyDescriptor::parse(tok),
                             SegSpec::fixed(17));
    for (const auto& s : cs.segments()) {
      CHECK(s.em.tes <= std::sqrt(static_cast<double>(s.domain.length())) * s.em.fes + 1e-12);
    }
  }
}

TEST_CASE("compressed series") {
  std::mt19937_64 rng(17);
  const auto t = testing::random_series(rng, 1, 1000);

  SUBCASE("fixed:10 with p1") {
    const auto cs = compress(t, FamilyDescriptor::polynomial(1), SegSpec::fixed(10), "T");
    CHECK(cs.size() == 100);
    CHECK(cs.stored_numbers() == 300);
    CHECK(cs.compression_ratio() == doctest::Approx(1000.0 / 300.0));
    CHECK(cs.domain() == t.domain());
  }
  SUBCASE("one window") {
    const auto fam = FamilyDescriptor::polynomial(2);
    const auto cs = compress(t, fam, SegSpec::fixed(1000));
    REQUIRE(cs.size() == 1);
    const auto em = error_measures(t, fit(fam, t));
    CHECK(cs[0].em.fes == doctest::Approx(em.fes).epsilon(1e-12));
    CHECK(cs[0].em.ses == doctest::Approx(em.ses).epsilon(1e-12));
  }
  SUBCASE("stored measures match a recomputation") {
    for (const char* tok : {"p0", "p1", "p2", "g"}) {
      const auto fam = FamilyDescriptor::parse(tok);
      const auto cs = compress(restrict(t, Domain(1, 300)), fam, SegSpec::sliding(1.0));
      for (const auto& s : cs.segments()) {
        const auto again = error_measures(restrict(t, s.domain), s.fn);
        CHECK(s.em.fes == doctest::Approx(again.fes).epsilon(1e-9));
        CHECK(s.em.ses == doctest::Approx(again.ses).epsilon(1e-9));
        if (fam.is_vs()) CHECK(s.em.tes <= 1e-8 * std::max(1.0, s.em.ses + s.em.fes));
      }
    }
  }
  SUBCASE("reconstruction of an exact fit recompresses exactly") {
    const auto fam = FamilyDescriptor::polynomial(2);
    const auto cs = compress(t, fam, SegSpec::fixed(25));
    const auto again = compress(cs.reconstruct(), fam, SegSpec::fixed(25));
    for (const auto& s : again.segments()) CHECK(s.em.fes < 1e-9);
  }
  SUBCASE("gaussian storage accounting") {
    const auto cs = compress(restrict(t, Domain(1, 100)), FamilyDescriptor::gaussian(), SegSpec::fixed(20));
    CHECK(cs.stored_numbers() == 5 * 7);
  }
}

TEST_CASE("compressed series validation") {
  const auto fam = FamilyDescriptor::polynomial(0);
  std::vector<SegmentRep> gap;
  gap.emplace_back(FittedFunction(fam, Domain(1, 3), {1.0}), ErrorMeasures{});
  gap.emplace_back(FittedFunction(fam, Domain(5, 6), {1.0}), ErrorMeasures{});
  CHECK_THROWS_AS(CompressedSeries("X", fam, gap), ContractViolation);
  CHECK_THROWS_AS(CompressedSeries("X", fam, {}), ContractViolation);
  CHECK_THROWS_AS(SegmentRep(FittedFunction(fam, Domain(1, 3), {1.0}), ErrorMeasures{-1.0, 0.0, 0.0}),
                  ContractViolation);
}
