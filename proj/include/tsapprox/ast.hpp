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
#include <optional>
#include <string>
#include <variant>

#include "tsapprox/core.hpp"

namespace tsapprox {

// Time-series expressions.

struct TseNode;
using TsePtr = std::shared_ptr<const TseNode>;

struct TseRef {
  std::string id;
};
struct TseConstant {
  double value;
  Position a;
  Position b;
};
struct TseShift {
  TsePtr child;
  std::int64_t k;
};
struct TseBinary {
  PointOp op;
  TsePtr lhs;
  TsePtr rhs;
};

struct TseNode {
  std::variant<TseRef, TseConstant, TseShift, TseBinary> node;
};

TsePtr tse_ref(std::string id);
TsePtr tse_constant(double v, Position a, Position b);
TsePtr tse_shift(TsePtr child, std::int64_t k);
TsePtr tse_binary(PointOp op, TsePtr lhs, TsePtr rhs);

// Arithmetic expressions.

struct ArNode;
using ArPtr = std::shared_ptr<const ArNode>;

enum class ArOp { kAdd, kSub, kMul, kDiv };

struct ArLiteral {
  double value;
};
struct ArBinary {
  ArOp op;
  ArPtr lhs;
  ArPtr rhs;
};
struct ArNeg {
  ArPtr child;
};
struct ArSqrt {
  ArPtr child;
};
// Sum of tse over dom(tse), further restricted to [range] and dom(mask)
// when present. The mask contributes its domain only.
struct ArSum {
  TsePtr tse;
  std::optional<Domain> range;
  TsePtr mask;
};
// Number of positions in dom(tse), restricted to dom(mask) when present.
struct ArCount {
  TsePtr tse;
  TsePtr mask;
};

struct ArNode {
  std::variant<ArLiteral, ArBinary, ArNeg, ArSqrt, ArSum, ArCount> node;
};

ArPtr ar_literal(double v);
ArPtr ar_binary(ArOp op, ArPtr lhs, ArPtr rhs);
ArPtr ar_neg(ArPtr child);
ArPtr ar_sqrt(ArPtr child);
ArPtr ar_sum(TsePtr tse, std::optional<Domain> range = std::nullopt, TsePtr mask = nullptr);
ArPtr ar_count(TsePtr tse, TsePtr mask = nullptr);

// Concrete syntax that parses back to a structurally equal tree.
std::string to_string(const TsePtr& t);
std::string to_string(const ArPtr& a);

bool structurally_equal(const TsePtr& x, const TsePtr& y);
bool structurally_equal(const ArPtr& x, const ArPtr& y);

}  // namespace tsapprox
