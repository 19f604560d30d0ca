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
#include <memory>
#include <span>
#include <vector>

#include "tsapprox/core.hpp"

namespace tsapprox {

// Values of an orthonormal polynomial basis on the local grid 0..len-1.
// A basis on [a, b] is this shape translated by a, so one shape serves
// every domain of the same length.
struct BasisShape {
  std::int64_t len = 0;
  int dim = 0;
  std::vector<double> values;  // dim rows of len entries

  double at(int j, std::int64_t x) const {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(len) +
                  static_cast<std::size_t>(x)];
  }
  std::span<const double> row(int j) const {
    return {values.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(len),
            static_cast<std::size_t>(len)};
  }
};

// Orthonormal basis of the polynomials of degree < dim on the integer grid
// of a domain, under <f, g> = sum_{i=a}^{b} f(i) g(i).
class OrthonormalBasis {
 public:
  OrthonormalBasis(Domain domain, std::shared_ptr<const BasisShape> shape)
      : domain_(domain), shape_(std::move(shape)) {}

  const Domain& domain() const noexcept { return domain_; }
  int dim() const noexcept { return shape_->dim; }
  const BasisShape& shape() const noexcept { return *shape_; }

  // phi_j(i) at absolute position i (j is 0-based).
  double phi(int j, Position i) const { return shape_->at(j, i - domain_.a()); }
  std::span<const double> vector(int j) const { return shape_->row(j); }

 private:
  Domain domain_;
  std::shared_ptr<const BasisShape> shape_;
};

// Modified Gram-Schmidt on centred monomials. Throws DegenerateBasisError
// when dim exceeds the domain length or dim < 1.
OrthonormalBasis build_basis(const Domain& domain, int dim);

// psi[i][j] = <phi_i^src restricted to sub, phi_j^sub>. Rows follow the
// source dimension, columns the sub-domain dimension.
struct BasisTransform {
  Domain src;
  Domain sub;
  int rows = 0;
  int cols = 0;
  std::vector<double> psi;  // row-major rows x cols

  double at(int i, int j) const {
    return psi[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
               static_cast<std::size_t>(j)];
  }
};

// Transform between two bases; the sub basis domain must lie within the
// source domain. Results depend only on (src length, offset, sub length,
// dims) and are served from a shared LRU cache.
BasisTransform psi(const OrthonormalBasis& src, const OrthonormalBasis& sub);

// Coefficients on sub (in sub's basis of dimension sub_dim) of the function
// with coefficients c in the basis of src.
std::vector<double> transform_coeffs(std::span<const double> c, const Domain& src,
                                     const Domain& sub, int sub_dim);

struct CacheStats {
  std::size_t entries = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
};

CacheStats psi_cache_stats();
void clear_basis_caches();

}  // namespace tsapprox
