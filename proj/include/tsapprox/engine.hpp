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
#include <map>
#include <string>
#include <vector>

#include "tsapprox/ast.hpp"
#include "tsapprox/core.hpp"
#include "tsapprox/store.hpp"

namespace tsapprox {

// Ground truth over the raw series of the catalog.
double eval_exact(const ArPtr& ast, const Catalog& catalog);
TimeSeries eval_exact(const TsePtr& tse, const Catalog& catalog);

// Value and deterministic guarantee over the compressed series.
//
// Each Sum is expanded into monomials over shifted base series; a monomial
// of degree 0 is exact, degree 1 uses the range-sum bound, degree 2 the
// product bound (aligned or misaligned, chosen per range), and higher
// degrees piecewise measure propagation. Scalar operators then compose the
// guarantees interval-style.
ApproxScalar eval_approx(const ArPtr& ast, const Catalog& catalog);

// Domain of a series expression over the compressed (or raw) series.
Domain tse_domain(const TsePtr& tse, const Catalog& catalog, bool raw = false);

// A product of shifted base series.
struct Factor {
  std::string id;
  std::int64_t shift = 0;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

// Polynomial expansion of a series expression: factor multiset -> coefficient.
using Monomials = std::map<std::vector<Factor>, double>;
Monomials expand_monomials(const TsePtr& tse);

enum class StatKind { kMu, kSigma, kCorr, kCCorr, kACorr };

StatKind parse_stat_kind(const std::string& name);

// The expanded expression of a statistic over series identifiers; ids has
// one entry for mu, sigma and acorr and two for corr and ccorr.
ArPtr stat_expression(StatKind kind, const std::vector<std::string>& ids, std::int64_t m = 0);

}  // namespace tsapprox
