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

#include "tsapprox/basis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "lru_cache.hpp"

namespace tsapprox {
namespace {

using ShapeKey = std::pair<std::int64_t, int>;
// (src_len, offset, sub_len, src_dim, sub_dim)
using PsiKey = std::tuple<std::int64_t, std::int64_t, std::int64_t, int, int>;

constexpr std::size_t kShapeCacheDoubles = std::size_t{1} << 23;
constexpr std::size_t kPsiCacheEntries = 4096;

detail::LruCache<ShapeKey, std::shared_ptr<const BasisShape>>& shape_cache() {
  static detail::LruCache<ShapeKey, std::shared_ptr<const BasisShape>> cache(kShapeCacheDoubles);
  return cache;
}

detail::LruCache<PsiKey, std::shared_ptr<const std::vector<double>>>& psi_cache() {
  static detail::LruCache<PsiKey, std::shared_ptr<const std::vector<double>>> cache(kPsiCacheEntries);
  return cache;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::shared_ptr<const BasisShape> make_shape(std::int64_t len, int dim) {
  auto shape = std::make_shared<BasisShape>();
  shape->len = len;
  shape->dim = dim;
  const auto n = static_cast<std::size_t>(len);
  shape->values.assign(n * static_cast<std::size_t>(dim), 0.0);

  // Centre at the midpoint and scale to [-1, 1] so the monomials stay
  // comparable in magnitude on long domains.
  const double mid = static_cast<double>(len - 1) / 2.0;
  const double half = std::max(1.0, mid);
  std::vector<double> u(n);
  for (int k = 0; k < dim; ++k) {
    for (std::size_t x = 0; x < n; ++x) {
      u[x] = std::pow((static_cast<double>(x) - mid) / half, k);
    }
    // Two MGS sweeps; the second removes the residual loss of orthogonality.
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        std::span<const double> q(shape->values.data() + static_cast<std::size_t>(j) * n, n);
        const double r = dot(q, u);
        for (std::size_t x = 0; x < n; ++x) u[x] -= r * q[x];
      }
    }
    const double norm = std::sqrt(dot(u, u));
    if (!(norm > 1e-12)) {
      throw DegenerateBasisError("monomial of degree " + std::to_string(k) +
                                 " is dependent on a grid of length " + std::to_string(len));
    }
    double* row = shape->values.data() + static_cast<std::size_t>(k) * n;
    for (std::size_t x = 0; x < n; ++x) row[x] = u[x] / norm;
  }
  return shape;
}

std::shared_ptr<const BasisShape> shape_for(std::int64_t len, int dim) {
  const ShapeKey key{len, dim};
  if (auto hit = shape_cache().get(key)) return *hit;
  auto shape = make_shape(len, dim);
  shape_cache().put(key, shape, static_cast<std::size_t>(len) * static_cast<std::size_t>(dim));
  return shape;
}

}  // namespace

OrthonormalBasis build_basis(const Domain& domain, int dim) {
  if (dim < 1) throw DegenerateBasisError("basis dimension must be positive");
  if (dim > domain.length()) {
    throw DegenerateBasisError("dimension " + std::to_string(dim) + " exceeds length of " +
                               domain.str());
  }
  return OrthonormalBasis(domain, shape_for(domain.length(), dim));
}

BasisTransform psi(const OrthonormalBasis& src, const OrthonormalBasis& sub) {
  if (!src.domain().contains(sub.domain())) {
    throw DomainError(sub.domain().str() + " not contained in " + src.domain().str());
  }
  BasisTransform t{src.domain(), sub.domain(), src.dim(), sub.dim(), {}};
  const std::int64_t offset = sub.domain().a() - src.domain().a();
  const PsiKey key{src.domain().length(), offset, sub.domain().length(), src.dim(), sub.dim()};
  if (auto hit = psi_cache().get(key)) {
    t.psi = **hit;
    return t;
  }
  auto m = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(t.rows) * static_cast<std::size_t>(t.cols), 0.0);
  const auto n = static_cast<std::size_t>(sub.domain().length());
  for (int i = 0; i < t.rows; ++i) {
    std::span<const double> si = src.vector(i).subspan(static_cast<std::size_t>(offset), n);
    for (int j = 0; j < t.cols; ++j) {
      (*m)[static_cast<std::size_t>(i) * static_cast<std::size_t>(t.cols) +
           static_cast<std::size_t>(j)] = dot(si, sub.vector(j));
    }
  }
  psi_cache().put(key, m);
  t.psi = *m;
  return t;
}

std::vector<double> transform_coeffs(std::span<const double> c, const Domain& src,
                                     const Domain& sub, int sub_dim) {
  const int src_dim = static_cast<int>(c.size());
  if (sub == src && sub_dim == src_dim) return {c.begin(), c.end()};
  const auto t = psi(build_basis(src, src_dim), build_basis(sub, sub_dim));
  std::vector<double> out(static_cast<std::size_t>(sub_dim), 0.0);
  for (int i = 0; i < src_dim; ++i) {
    for (int j = 0; j < sub_dim; ++j) out[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(i)] * t.at(i, j);
  }
  return out;
}

CacheStats psi_cache_stats() {
  return {psi_cache().size(), psi_cache().hits(), psi_cache().misses()};
}

void clear_basis_caches() {
  shape_cache().clear();
  psi_cache().clear();
}

}  // namespace tsapprox
