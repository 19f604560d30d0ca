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

// Concrete syntax:
//
//   Ar   := NUMBER | Ar ('+'|'-'|'*'|'/') Ar | '-' Ar | 'sqrt' '(' Ar ')'
//         | '(' Ar ')' | Agg | Stat
//   Agg  := 'Sum' '(' TSE (',' INT ',' INT)? ('|' TSE)? ')'
//         | 'Count' '(' TSE ('|' TSE)? ')'
//   TSE  := IDENT | 'Constant' '(' NUMBER ',' INT ',' INT ')'
//         | 'Shift' '(' TSE ',' INT ')' | TSE ('+'|'-'|'*') TSE | '(' TSE ')'
//   Stat := 'Mu' '(' TSE ')' | 'Sigma' '(' TSE ')' | 'Corr' '(' TSE ',' TSE ')'
//         | 'CCorr' '(' TSE ',' TSE ',' INT ')' | 'ACorr' '(' TSE ',' INT ')'
//
// Unary minus binds tighter than '*' '/', which bind tighter than '+' '-';
// all binary operators are left-associative. The '|' mask form is what the
// statistics expand to; it restricts the summation range to dom(mask).

#pragma once

#include <cstdint>
#include <string_view>

#include "tsapprox/ast.hpp"

namespace tsapprox {

// Throws ParseError carrying the byte offset of the offending token.
ArPtr parse(std::string_view text);

// Statistics over the common domain D of the operands, expanded into
// sums so every term carries its own guarantee:
//   mu    = Sum(X | Y) / n
//   sigma = sqrt(Sum(X * X | Y) / n - mu * mu)
//   corr  = (Sum(X * Y) - n mu_x mu_y) / (n sigma_x sigma_y)
ArPtr expand_mu(const TsePtr& x);
ArPtr expand_sigma(const TsePtr& x);
ArPtr expand_corr(const TsePtr& x, const TsePtr& y);
ArPtr expand_ccorr(const TsePtr& x, const TsePtr& y, std::int64_t m);
ArPtr expand_acorr(const TsePtr& x, std::int64_t m);

}  // namespace tsapprox
