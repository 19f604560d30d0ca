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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsapprox/basis.hpp"
#include "tsapprox/core.hpp"

namespace tsapprox {

// Family groups, ordered by inclusion: every LSF family is a vector space,
// every vector space family is usable by the generic formulas.
enum class FamilyGroup { kAny = 0, kVs = 1, kLsf = 2 };

enum class FamilyKind { kPolynomial, kGaussian };

std::string to_string(FamilyGroup g);

class FamilyDescriptor {
 public:
  static FamilyDescriptor polynomial(int degree);
  static FamilyDescriptor gaussian();
  // "p0", "p1", "p2" or "g"; throws Error("family", ...) naming the token.
  static FamilyDescriptor parse(const std::string& token);

  const std::string& id() const noexcept { return id_; }
  FamilyGroup group() const noexcept { return group_; }
  FamilyKind kind() const noexcept { return kind_; }
  // Polynomials: degree + 1. Gaussian: number of parameters.
  int dim() const noexcept { return dim_; }
  bool nonlinear() const noexcept { return kind_ == FamilyKind::kGaussian; }

  bool is_vs() const noexcept { return group_ >= FamilyGroup::kVs; }
  bool is_lsf() const noexcept { return group_ == FamilyGroup::kLsf; }
  bool usable_as(FamilyGroup g) const noexcept { return group_ >= g; }

  // True when every member of `other` is also a member of this family on
  // any domain. Used to decide when a residual is orthogonal to the other
  // operand's estimate.
  bool contains(const FamilyDescriptor& other) const noexcept;

  // Numbers stored per segment for compression-ratio accounting:
  // polynomial coefficients plus fes; Gaussian parameters plus three measures.
  int stored_numbers_per_segment() const noexcept;

  friend bool operator==(const FamilyDescriptor& x, const FamilyDescriptor& y) {
    return x.id_ == y.id_;
  }

 private:
  FamilyDescriptor(std::string id, FamilyGroup g, FamilyKind k, int dim)
      : id_(std::move(id)), group_(g), kind_(k), dim_(dim) {}

  std::string id_;
  FamilyGroup group_;
  FamilyKind kind_;
  int dim_;
};

// One segment's estimation function. Polynomial families keep coefficients
// in the orthonormal basis of the domain; the Gaussian keeps raw parameters
// (amplitude, centre at an absolute position, width, offset).
class FittedFunction {
 public:
  FittedFunction(FamilyDescriptor family, Domain domain, std::vector<double> repr);

  const FamilyDescriptor& family() const noexcept { return family_; }
  const Domain& domain() const noexcept { return domain_; }
  // Effective dimension: may be below family().dim() on short segments.
  int dim() const noexcept { return static_cast<int>(repr_.size()); }
  std::span<const double> coeffs() const noexcept { return repr_; }

  double evaluate(Position i) const;
  std::vector<double> values() const;
  double sum() const;
  double norm() const;

  // The same function translated by k positions.
  FittedFunction shifted(std::int64_t k) const;

  friend bool operator==(const FittedFunction&, const FittedFunction&) = default;

 private:
  double eval_unchecked(Position i) const;

  FamilyDescriptor family_;
  Domain domain_;
  std::vector<double> repr_;
};

double gaussian_value(std::span<const double> params, double x);

// Least-squares fit of the segment by the family. `hint` seeds the
// nonlinear solver (used by sliding-window growth) and is ignored for
// polynomial families.
FittedFunction fit(const FamilyDescriptor& family, const TimeSeries& seg,
                   const FittedFunction* hint = nullptr);

double evaluate(const FittedFunction& f, Position i);

// Restriction of an LSF function to a sub-domain, in the sub-domain's basis.
FittedFunction restrict_function(const FittedFunction& f, const Domain& sub);

// L2 norm over sub of f_outer - f_inner, computed on coefficients.
double diff_norm_on_subdomain(const FittedFunction& f_outer, const FittedFunction& f_inner,
                              const Domain& sub);

// Coefficients of f restricted to sub in the sub basis of dimension
// sub_dim. sub_dim >= min(f.dim(), |sub|) keeps the restriction exact.
std::vector<double> restricted_coeffs(const FittedFunction& f, const Domain& sub, int sub_dim);

}  // namespace tsapprox
