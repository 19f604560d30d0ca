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

#include "tsapprox/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

namespace tsapprox {
namespace {

enum class Tok { kNumber, kIdent, kPunct, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"Sum",   "Count", "sqrt",  "Mu",       "Sigma",
                                       "Corr",  "CCorr", "ACorr", "Constant", "Shift"};
  return k;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
      }
      out.push_back({Tok::kNumber, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::string_view("+-*/(),|").find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  ArPtr parse_all() {
    auto a = ar_expr();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return a;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().kind == Tok::kEnd ? msg + " (end of input)" : msg, peek().offset);
  }

  bool accept(const char* punct) {
    if (peek().kind == Tok::kPunct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const char* punct) {
    if (!accept(punct)) fail(std::string("expected '") + punct + "'");
  }

  bool at_keyword(const char* kw) const { return peek().kind == Tok::kIdent && peek().text == kw; }

  double number() {
    bool neg = false;
    if (accept("-")) {
      neg = true;
    } else {
      accept("+");
    }
    if (peek().kind != Tok::kNumber) fail("expected a number");
    const Token& t = next();
    char* end = nullptr;
    const double v = std::strtod(t.text.c_str(), &end);
    if (end != t.text.c_str() + t.text.size() || !std::isfinite(v)) {
      throw ParseError("malformed number '" + t.text + "'", t.offset);
    }
    return neg ? -v : v;
  }

  std::int64_t integer() {
    const bool neg = accept("-");
    if (peek().kind != Tok::kNumber) fail("expected an integer");
    const Token& t = next();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) {
      throw ParseError("expected an integer, got '" + t.text + "'", t.offset);
    }
    return neg ? -v : v;
  }

  // --- arithmetic ---

  ArPtr ar_expr() {
    auto lhs = ar_term();
    for (;;) {
      if (accept("+")) {
        lhs = ar_binary(ArOp::kAdd, lhs, ar_term());
      } else if (accept("-")) {
        lhs = ar_binary(ArOp::kSub, lhs, ar_term());
      } else {
        return lhs;
      }
    }
  }

  ArPtr ar_term() {
    auto lhs = ar_unary();
    for (;;) {
      if (accept("*")) {
        lhs = ar_binary(ArOp::kMul, lhs, ar_unary());
      } else if (accept("/")) {
        lhs = ar_binary(ArOp::kDiv, lhs, ar_unary());
      } else {
        return lhs;
      }
    }
  }

  ArPtr ar_unary() {
    if (accept("-")) {
      if (peek().kind == Tok::kNumber) return ar_literal(-number());
      return ar_neg(ar_unary());
    }
    if (accept("+")) return ar_unary();
    return ar_primary();
  }

  ArPtr ar_primary() {
    if (peek().kind == Tok::kNumber) return ar_literal(number());
    if (accept("(")) {
      auto a = ar_expr();
      expect(")");
      return a;
    }
    if (peek().kind != Tok::kIdent) fail("expected an expression");
    const std::string kw = peek().text;
    if (kw == "sqrt") {
      next();
      expect("(");
      auto a = ar_expr();
      expect(")");
      return ar_sqrt(a);
    }
    if (kw == "Sum") {
      next();
      expect("(");
      auto t = tse_expr();
      std::optional<Domain> range;
      if (accept(",")) {
        const std::size_t at = peek().offset;
        const auto lo = integer();
        expect(",");
        const auto hi = integer();
        if (lo > hi) throw ParseError("empty summation range", at);
        range = Domain(lo, hi);
      }
      TsePtr mask;
      if (accept("|")) mask = tse_expr();
      expect(")");
      return ar_sum(t, range, mask);
    }
    if (kw == "Count") {
      next();
      expect("(");
      auto t = tse_expr();
      TsePtr mask;
      if (accept("|")) mask = tse_expr();
      expect(")");
      return ar_count(t, mask);
    }
    if (kw == "Mu" || kw == "Sigma") {
      next();
      expect("(");
      auto t = tse_expr();
      expect(")");
      return kw == "Mu" ? expand_mu(t) : expand_sigma(t);
    }
    if (kw == "Corr" || kw == "CCorr") {
      next();
      expect("(");
      auto x = tse_expr();
      expect(",");
      auto y = tse_expr();
      std::int64_t m = 0;
      if (kw == "CCorr") {
        expect(",");
        m = integer();
      }
      expect(")");
      return kw == "Corr" ? expand_corr(x, y) : expand_ccorr(x, y, m);
    }
    if (kw == "ACorr") {
      next();
      expect("(");
      auto x = tse_expr();
      expect(",");
      const auto m = integer();
      expect(")");
      return expand_acorr(x, m);
    }
    fail("unknown function or bare series '" + kw + "' in arithmetic context");
  }

  // --- series ---

  TsePtr tse_expr() {
    auto lhs = tse_term();
    for (;;) {
      if (accept("+")) {
        lhs = tse_binary(PointOp::kAdd, lhs, tse_term());
      } else if (accept("-")) {
        lhs = tse_binary(PointOp::kSub, lhs, tse_term());
      } else {
        return lhs;
      }
    }
  }

  TsePtr tse_term() {
    auto lhs = tse_primary();
    while (accept("*")) lhs = tse_binary(PointOp::kMul, lhs, tse_primary());
    return lhs;
  }

  TsePtr tse_primary() {
    if (accept("(")) {
      auto t = tse_expr();
      expect(")");
      return t;
    }
    if (peek().kind != Tok::kIdent) fail("expected a series expression");
    const std::string id = peek().text;
    if (id == "Constant") {
      next();
      expect("(");
      const double v = number();
      expect(",");
      const std::size_t at = peek().offset;
      const auto a = integer();
      expect(",");
      const auto b = integer();
      if (a > b) throw ParseError("empty constant domain", at);
      expect(")");
      return tse_constant(v, a, b);
    }
    if (id == "Shift") {
      next();
      expect("(");
      auto t = tse_expr();
      expect(",");
      const auto k = integer();
      expect(")");
      return tse_shift(t, k);
    }
    if (keywords().count(id)) fail("'" + id + "' is not a series");
    next();
    return tse_ref(id);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

ArPtr div(ArPtr a, ArPtr b) { return ar_binary(ArOp::kDiv, std::move(a), std::move(b)); }
ArPtr mul(ArPtr a, ArPtr b) { return ar_binary(ArOp::kMul, std::move(a), std::move(b)); }
ArPtr sub(ArPtr a, ArPtr b) { return ar_binary(ArOp::kSub, std::move(a), std::move(b)); }
TsePtr times(const TsePtr& a, const TsePtr& b) { return tse_binary(PointOp::kMul, a, b); }

// Moments of x over dom(x) restricted to dom(mask).
ArPtr masked_mu(const TsePtr& x, const TsePtr& mask, const ArPtr& n) { return div(ar_sum(x, std::nullopt, mask), n); }

ArPtr masked_sigma(const TsePtr& x, const TsePtr& mask, const ArPtr& n, const ArPtr& mu) {
  return ar_sqrt(sub(div(ar_sum(times(x, x), std::nullopt, mask), n), mul(mu, mu)));
}

}  // namespace

ArPtr parse(std::string_view text) { return Parser(text).parse_all(); }

ArPtr expand_mu(const TsePtr& x) { return masked_mu(x, nullptr, ar_count(x)); }

ArPtr expand_sigma(const TsePtr& x) {
  const auto n = ar_count(x);
  return masked_sigma(x, nullptr, n, masked_mu(x, nullptr, n));
}

ArPtr expand_corr(const TsePtr& x, const TsePtr& y) {
  const auto n = ar_count(times(x, y));
  const auto mx = masked_mu(x, y, n);
  const auto my = masked_mu(y, x, n);
  const auto num = sub(ar_sum(times(x, y)), mul(mul(n, mx), my));
  const auto den = mul(mul(n, masked_sigma(x, y, n, mx)), masked_sigma(y, x, n, my));
  return div(num, den);
}

ArPtr expand_ccorr(const TsePtr& x, const TsePtr& y, std::int64_t m) {
  return expand_corr(x, tse_shift(y, m));
}

ArPtr expand_acorr(const TsePtr& x, std::int64_t m) { return expand_ccorr(x, x, m); }

}  // namespace tsapprox
