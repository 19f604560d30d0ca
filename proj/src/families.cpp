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

#include "tsapprox/families.hpp"

#include <algorithm>
#include <cmath>

namespace tsapprox {

FittedFunction fit_gaussian(const FamilyDescriptor& family, const TimeSeries& seg,
                            const FittedFunction* hint);

std::string to_string(FamilyGroup g) {
  switch (g) {
    case FamilyGroup::kAny: return "ANY";
    case FamilyGroup::kVs: return "VS";
    case FamilyGroup::kLsf: return "LSF";
  }
  return "?";
}

FamilyDescriptor FamilyDescriptor::polynomial(int degree) {
  if (degree < 0 || degree > 2) {
    throw Error("family", "unsupported polynomial degree " + std::to_string(degree));
  }
  return FamilyDescriptor("p" + std::to_string(degree), FamilyGroup::kLsf,
                          FamilyKind::kPolynomial, degree + 1);
}

FamilyDescriptor FamilyDescriptor::gaussian() {
  return FamilyDescriptor("g", FamilyGroup::kAny, FamilyKind::kGaussian, 4);
}

FamilyDescriptor FamilyDescriptor::parse(const std::string& token) {
  if (token == "g") return gaussian();
  if (token == "p0") return polynomial(0);
  if (token == "p1") return polynomial(1);
  if (token == "p2") return polynomial(2);
  throw Error("family", "unknown family token '" + token + "'");
}

bool FamilyDescriptor::contains(const FamilyDescriptor& other) const noexcept {
  if (id_ == other.id_) return true;
  return kind_ == FamilyKind::kPolynomial && other.kind_ == FamilyKind::kPolynomial &&
         other.dim_ <= dim_;
}

int FamilyDescriptor::stored_numbers_per_segment() const noexcept {
  return kind_ == FamilyKind::kGaussian ? 4 + 3 : dim_ + 1;
}

double gaussian_value(std::span<const double> p, double x) {
  const double amp = p[0], centre = p[1], width = p[2], offset = p[3];
  if (width == 0.0) return offset + (x == centre ? amp : 0.0);
  const double z = (x - centre) / width;
  return amp * std::exp(-0.5 * z * z) + offset;
}

FittedFunction::FittedFunction(FamilyDescriptor family, Domain domain, std::vector<double> repr)
    : family_(std::move(family)), domain_(domain), repr_(std::move(repr)) {
  if (family_.kind() == FamilyKind::kGaussian) {
    if (repr_.size() != 4) throw FitError("gaussian representation needs 4 parameters");
  } else if (repr_.empty() || static_cast<int>(repr_.size()) > family_.dim() ||
             static_cast<std::int64_t>(repr_.size()) > domain_.length()) {
    throw FitError("polynomial representation of dimension " + std::to_string(repr_.size()) +
                   " is invalid for " + family_.id() + " on " + domain_.str());
  }
  for (double v : repr_) {
    if (!std::isfinite(v)) throw FitError("non-finite coefficient");
  }
}

double FittedFunction::eval_unchecked(Position i) const {
  if (family_.kind() == FamilyKind::kGaussian) {
    return gaussian_value(repr_, static_cast<double>(i));
  }
  const auto basis = build_basis(domain_, dim());
  double v = 0.0;
  for (int j = 0; j < dim(); ++j) v += repr_[static_cast<std::size_t>(j)] * basis.phi(j, i);
  return v;
}

double FittedFunction::evaluate(Position i) const {
  if (!domain_.contains(i)) {
    throw DomainError("position " + std::to_string(i) + " outside " + domain_.str());
  }
  return eval_unchecked(i);
}

std::vector<double> FittedFunction::values() const {
  std::vector<double> out(static_cast<std::size_t>(domain_.length()), 0.0);
  if (family_.kind() == FamilyKind::kGaussian) {
    for (std::size_t x = 0; x < out.size(); ++x) {
      out[x] = gaussian_value(repr_, static_cast<double>(domain_.a() + static_cast<Position>(x)));
    }
    return out;
  }
  const auto basis = build_basis(domain_, dim());
  for (int j = 0; j < dim(); ++j) {
    const auto row = basis.vector(j);
    const double c = repr_[static_cast<std::size_t>(j)];
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += c * row[x];
  }
  return out;
}

double FittedFunction::sum() const {
  if (family_.kind() == FamilyKind::kPolynomial) {
    // phi_0 is the constant 1/sqrt(n); higher basis vectors sum to zero.
    return repr_[0] * std::sqrt(static_cast<double>(domain_.length()));
  }
  double s = 0.0;
  for (double v : values()) s += v;
  return s;
}

double FittedFunction::norm() const {
  double s = 0.0;
  if (family_.kind() == FamilyKind::kPolynomial) {
    for (double c : repr_) s += c * c;
  } else {
    for (double v : values()) s += v * v;
  }
  return std::sqrt(s);
}

FittedFunction FittedFunction::shifted(std::int64_t k) const {
  auto repr = repr_;
  if (family_.kind() == FamilyKind::kGaussian) repr[1] += static_cast<double>(k);
  return FittedFunction(family_, domain_.shifted(k), std::move(repr));
}

FittedFunction fit(const FamilyDescriptor& family, const TimeSeries& seg,
                   const FittedFunction* hint) {
  if (family.kind() == FamilyKind::kGaussian) return fit_gaussian(family, seg, hint);
  const int dim = static_cast<int>(std::min<std::int64_t>(family.dim(), seg.length()));
  const auto basis = build_basis(seg.domain(), dim);
  std::vector<double> coeffs(static_cast<std::size_t>(dim), 0.0);
  const auto values = seg.values();
  for (int j = 0; j < dim; ++j) {
    const auto row = basis.vector(j);
    double s = 0.0;
    for (std::size_t x = 0; x < values.size(); ++x) s += values[x] * row[x];
    coeffs[static_cast<std::size_t>(j)] = s;
  }
  return FittedFunction(family, seg.domain(), std::move(coeffs));
}

double evaluate(const FittedFunction& f, Position i) { return f.evaluate(i); }

std::vector<double> restricted_coeffs(const FittedFunction& f, const Domain& sub, int sub_dim) {
  if (!f.family().is_lsf()) {
    throw UnsupportedOperation("restriction of family " + f.family().id() +
                               " leaves the family");
  }
  if (!f.domain().contains(sub)) {
    throw DomainError(sub.str() + " not contained in " + f.domain().str());
  }
  return transform_coeffs(f.coeffs(), f.domain(), sub, sub_dim);
}

FittedFunction restrict_function(const FittedFunction& f, const Domain& sub) {
  const int dim = static_cast<int>(std::min<std::int64_t>(f.dim(), sub.length()));
  return FittedFunction(f.family(), sub, restricted_coeffs(f, sub, dim));
}

double diff_norm_on_subdomain(const FittedFunction& f_outer, const FittedFunction& f_inner,
                              const Domain& sub) {
  const int dim = static_cast<int>(
      std::min<std::int64_t>(std::max(f_outer.dim(), f_inner.dim()), sub.length()));
  const auto c1 = restricted_coeffs(f_outer, sub, dim);
  const auto c2 = restricted_coeffs(f_inner, sub, dim);
  double s = 0.0;
  for (std::size_t j = 0; j < c1.size(); ++j) s += (c1[j] - c2[j]) * (c1[j] - c2[j]);
  return std::sqrt(s);
}

}  // namespace tsapprox
