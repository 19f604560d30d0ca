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
#include <random>

#include "test_support.hpp"
#include "tsapprox/basis.hpp"
#include "tsapprox/compress.hpp"
#include "tsapprox/families.hpp"

using namespace tsapprox;

namespace {

const TimeSeries kExample(1, {0.2, 0.4, 0.4, 0.5, 0.6});

double inner(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

TEST_CASE("family descriptors") {
  const auto p1 = FamilyDescriptor::parse("p1");
  CHECK(p1.id() == "p1");
  CHECK(p1.dim() == 2);
  CHECK(p1.is_lsf());
  CHECK(p1.is_vs());
  CHECK(p1.usable_as(FamilyGroup::kAny));
  const auto g = FamilyDescriptor::parse("g");
  CHECK(g.group() == FamilyGroup::kAny);
  CHECK_FALSE(g.is_vs());
  CHECK(g.nonlinear());
  CHECK(FamilyDescriptor::polynomial(2).contains(FamilyDescriptor::polynomial(1)));
  CHECK_FALSE(FamilyDescriptor::polynomial(0).contains(FamilyDescriptor::polynomial(1)));
  CHECK_FALSE(p1.contains(g));
  CHECK(p1.stored_numbers_per_segment() == 3);
  CHECK(g.stored_numbers_per_segment() == 7);
  try {
    FamilyDescriptor::parse("p7");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'p7'") != std::string::npos);
  }
}

TEST_CASE("orthonormal basis values") {
  SUBCASE("[1,3] dim 2") {
    const auto b = build_basis(Domain(1, 3), 2);
    for (Position i = 1; i <= 3; ++i) CHECK(b.phi(0, i) == doctest::Approx(0.57735).epsilon(1e-5));
    CHECK(b.phi(1, 1) == doctest::Approx(-0.70711).epsilon(1e-5));
    CHECK(std::abs(b.phi(1, 2)) < 1e-15);
    CHECK(b.phi(1, 3) == doctest::Approx(0.70711).epsilon(1e-5));
  }
  SUBCASE("[1,1] dim 1") { CHECK(build_basis(Domain(1, 1), 1).phi(0, 1) == doctest::Approx(1.0)); }
  SUBCASE("[1,4] dim 2") {
    const auto b = build_basis(Domain(1, 4), 2);
    for (Position i = 1; i <= 4; ++i) {
      CHECK(b.phi(1, i) == doctest::Approx((static_cast<double>(i) - 2.5) / std::sqrt(5.0)).epsilon(1e-12));
    }
  }
  SUBCASE("degenerate") {
    CHECK_THROWS_AS(build_basis(Domain(1, 2), 3), DegenerateBasisError);
    CHECK_THROWS_AS(build_basis(Domain(1, 2), 0), DegenerateBasisError);
  }
}

TEST_CASE("basis is orthonormal and translation covariant") {
  for (std::int64_t len : {1, 2, 3, 7, 50, 1000, 20000}) {
    const int dim = static_cast<int>(std::min<std::int64_t>(3, len));
    const auto b = build_basis(Domain(10, 10 + len - 1), dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        CHECK(std::abs(inner(b.vector(i), b.vector(j)) - (i == j ? 1.0 : 0.0)) <= 1e-9);
      }
    }
    const auto moved = build_basis(Domain(-500, -500 + len - 1), dim);
    for (int j = 0; j < dim; ++j) CHECK(moved.phi(j, -500) == b.phi(j, 10));
  }
}

TEST_CASE("psi transform") {
  SUBCASE("frozen [1,4] -> [1,2]") {
    const auto t = psi(build_basis(Domain(1, 4), 2), build_basis(Domain(1, 2), 2));
    CHECK(t.at(0, 0) == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(std::abs(t.at(0, 1)) < 1e-12);
    CHECK(t.at(1, 0) == doctest::Approx(-0.63246).epsilon(1e-5));
    CHECK(t.at(1, 1) == doctest::Approx(0.31623).epsilon(1e-5));
  }
  SUBCASE("sub == src is identity") {
    const auto b = build_basis(Domain(3, 12), 3);
    const auto t = psi(b, b);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(std::abs(t.at(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
  SUBCASE("containment") {
    CHECK_THROWS_AS(psi(build_basis(Domain(1, 4), 2), build_basis(Domain(3, 6), 2)), DomainError);
  }
  SUBCASE("cached by shape") {
    clear_basis_caches();
    (void)psi(build_basis(Domain(1, 40), 2), build_basis(Domain(5, 9), 2));
    (void)psi(build_basis(Domain(101, 140), 2), build_basis(Domain(105, 109), 2));
    const auto st = psi_cache_stats();
    CHECK(st.misses == 1);
    CHECK(st.hits == 1);
  }
}

TEST_CASE("restricted norms match point summation") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(0, 2);
  std::uniform_int_distribution<int> len(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = len(rng);
    const auto t = testing::random_series(rng, 7, n, 0.3);
    const auto f = fit(FamilyDescriptor::polynomial(deg(rng)), t);
    std::uniform_int_distribution<std::int64_t> pos(7, 7 + n - 1);
    Position a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    const Domain sub(a, b);
    const auto c = restricted_coeffs(f, sub, static_cast<int>(std::min<std::int64_t>(f.dim(), sub.length())));
    const double coeff_norm = std::sqrt(inner(c, c));
    const double brute = testing::point_norm(f, sub);
    CHECK(std::abs(coeff_norm - brute) <= 1e-8 * brute + 1e-12);
  }
}

TEST_CASE("least-squares fits") {
  SUBCASE("linear fit of the worked example") {
    const auto f = fit(FamilyDescriptor::polynomial(1), kExample);
    for (Position i = 1; i <= 5; ++i) {
      CHECK(f.evaluate(i) == doctest::Approx(0.09 * static_cast<double>(i) + 0.15).epsilon(1e-12));
    }
    CHECK(f.evaluate(3) == doctest::Approx(0.42));
    CHECK(f.evaluate(5) == doctest::Approx(0.60));
    CHECK_THROWS_AS(f.evaluate(6), DomainError);
    const auto em = error_measures(kExample, f);
    CHECK(em.fes == doctest::Approx(0.0837).epsilon(1e-3));
    CHECK(em.ses == doctest::Approx(0.9813).epsilon(1e-4));
    CHECK(em.tes < 1e-12);
  }
  SUBCASE("constant series") {
    const auto t = constant_series(3.25, Domain(1, 9));
    const auto f = fit(FamilyDescriptor::polynomial(0), t);
    for (Position i = 1; i <= 9; ++i) CHECK(f.evaluate(i) == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(error_measures(t, f).fes < 1e-13);
  }
  SUBCASE("short segment reduces dimension") {
    const auto f = fit(FamilyDescriptor::polynomial(2), TimeSeries(4, {1.0, 5.0}));
    CHECK(f.dim() == 2);
    CHECK(f.evaluate(4) == doctest::Approx(1.0));
    CHECK(f.evaluate(5) == doctest::Approx(5.0));
  }
  SUBCASE("gaussian recovers its parameters") {
    std::vector<double> v;
    for (Position x = 1; x <= 8; ++x) v.push_back(gaussian_value(std::vector<double>{2.0, 4.0, 1.5, 0.5}, static_cast<double>(x)));
    const TimeSeries t(1, v);
    const auto f = fit(FamilyDescriptor::gaussian(), t);
    CHECK(error_measures(t, f).fes < 1e-6);
    CHECK(f.coeffs()[0] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(f.coeffs()[1] == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(std::abs(f.coeffs()[2]) == doctest::Approx(1.5).epsilon(1e-4));
    CHECK(f.coeffs()[3] == doctest::Approx(0.5).epsilon(1e-4));
  }
  SUBCASE("gaussian on a single point") {
    const auto f = fit(FamilyDescriptor::gaussian(), TimeSeries(3, {2.5}));
    CHECK(f.evaluate(3) == doctest::Approx(2.5));
  }
}

TEST_CASE("projection residual is orthogonal to the family") {
  std::mt19937_64 rng(99);
  for (int deg = 0; deg <= 2; ++deg) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto t = testing::random_series(rng, -20, 3 + trial * 13, 0.5);
      const auto f = fit(FamilyDescriptor::polynomial(deg), t);
      const auto est = f.values();
      std::vector<double> r(est.size());
      for (std::size_t x = 0; x < r.size(); ++x) r[x] = t.values()[x] - est[x];
      const double tnorm = std::sqrt(inner(t.values(), t.values()));
      const auto b = build_basis(t.domain(), f.dim());
      for (int j = 0; j < f.dim(); ++j) CHECK(std::abs(inner(r, b.vector(j))) <= 1e-8 * tnorm);
      const auto em = error_measures(t, f);
      CHECK(em.tes <= 1e-8 * tnorm);
      CHECK(std::abs(f.norm() - em.ses) <= 1e-9 * std::max(1.0, em.ses));
    }
  }
}

TEST_CASE("restriction of LSF functions") {
  const auto f = fit(FamilyDescriptor::polynomial(1), kExample);
  const auto r = restrict_function(f, Domain(2, 4));
  CHECK(r.domain() == Domain(2, 4));
  CHECK(r.evaluate(2) == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(r.evaluate(3) == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(r.evaluate(4) == doctest::Approx(0.51).epsilon(1e-12));

  const auto same = restrict_function(f, f.domain());
  CHECK(same.coeffs()[0] == f.coeffs()[0]);
  CHECK(same.coeffs()[1] == f.coeffs()[1]);

  const auto c = fit(FamilyDescriptor::polynomial(2), constant_series(-1.5, Domain(0, 30)));
  const auto cr = restrict_function(c, Domain(17, 19));
  for (Position i = 17; i <= 19; ++i) CHECK(cr.evaluate(i) == doctest::Approx(-1.5).epsilon(1e-12));

  SUBCASE("refitting a restriction is a fixed point") {
    std::mt19937_64 rng(5);
    const auto g = fit(FamilyDescriptor::polynomial(2), testing::random_series(rng, 0, 80));
    const Domain sub(20, 44);
    const auto gr = restrict_function(g, sub);
    const auto refit = fit(FamilyDescriptor::polynomial(2), TimeSeries(sub, gr.values()));
    for (Position i = sub.a(); i <= sub.b(); ++i) {
      CHECK(refit.evaluate(i) == doctest::Approx(g.evaluate(i)).epsilon(1e-9));
    }
  }

  SUBCASE("gaussian restriction is unsupported") {
    const auto gf = fit(FamilyDescriptor::gaussian(), kExample);
    CHECK_THROWS_AS(restrict_function(gf, Domain(2, 3)), UnsupportedOperation);
  }
}

TEST_CASE("difference norms on sub-domains") {
  const auto p1 = FamilyDescriptor::polynomial(1);
  const auto outer = fit(p1, TimeSeries(1, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}));
  const auto inner_fn = fit(p1, TimeSeries(3, {4.0, 5.0, 6.0, 7.0}));
  CHECK(diff_norm_on_subdomain(outer, inner_fn, Domain(3, 6)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(diff_norm_on_subdomain(outer, outer, Domain(2, 5)) < 1e-12);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f1 = fit(p1, testing::random_series(rng, 0, 60));
    const auto f2 = fit(FamilyDescriptor::polynomial(trial % 3), testing::random_series(rng, 20, 60));
    const Domain sub(20 + trial % 10, 59 - trial % 7);
    double brute = 0.0;
    for (Position i = sub.a(); i <= sub.b(); ++i) {
      const double d = f1.evaluate(i) - f2.evaluate(i);
      brute += d * d;
    }
    brute = std::sqrt(brute);
    CHECK(std::abs(diff_norm_on_subdomain(f1, f2, sub) - brute) <= 1e-8 * brute + 1e-12);
  }
}

TEST_CASE("shifted functions") {
  const auto f = fit(FamilyDescriptor::polynomial(2), kExample);
  const auto s = f.shifted(10);
  for (Position i = 1; i <= 5; ++i) CHECK(s.evaluate(i + 10) == doctest::Approx(f.evaluate(i)).epsilon(1e-14));
  const auto g = fit(FamilyDescriptor::gaussian(), kExample);
  const auto gs = g.shifted(-4);
  for (Position i = 1; i <= 5; ++i) CHECK(gs.evaluate(i - 4) == doctest::Approx(g.evaluate(i)).epsilon(1e-12));
}
