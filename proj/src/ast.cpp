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

#include "tsapprox/ast.hpp"

#include <cstdio>

namespace tsapprox {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

const char* op_text(PointOp op) {
  switch (op) {
    case PointOp::kAdd:
      return " + ";
    case PointOp::kSub:
      return " - ";
    case PointOp::kMul:
      return " * ";
  }
  return " ? ";
}

const char* op_text(ArOp op) {
  switch (op) {
    case ArOp::kAdd:
      return " + ";
    case ArOp::kSub:
      return " - ";
    case ArOp::kMul:
      return " * ";
    case ArOp::kDiv:
      return " / ";
  }
  return " ? ";
}

bool eq_opt(const TsePtr& x, const TsePtr& y) {
  if (!x || !y) return !x && !y;
  return structurally_equal(x, y);
}

}  // namespace

TsePtr tse_ref(std::string id) { return std::make_shared<TseNode>(TseNode{TseRef{std::move(id)}}); }
TsePtr tse_constant(double v, Position a, Position b) {
  (void)Domain(a, b);
  return std::make_shared<TseNode>(TseNode{TseConstant{v, a, b}});
}
TsePtr tse_shift(TsePtr child, std::int64_t k) {
  return std::make_shared<TseNode>(TseNode{TseShift{std::move(child), k}});
}
TsePtr tse_binary(PointOp op, TsePtr lhs, TsePtr rhs) {
  return std::make_shared<TseNode>(TseNode{TseBinary{op, std::move(lhs), std::move(rhs)}});
}

ArPtr ar_literal(double v) { return std::make_shared<ArNode>(ArNode{ArLiteral{v}}); }
ArPtr ar_binary(ArOp op, ArPtr lhs, ArPtr rhs) {
  return std::make_shared<ArNode>(ArNode{ArBinary{op, std::move(lhs), std::move(rhs)}});
}
ArPtr ar_neg(ArPtr child) { return std::make_shared<ArNode>(ArNode{ArNeg{std::move(child)}}); }
ArPtr ar_sqrt(ArPtr child) { return std::make_shared<ArNode>(ArNode{ArSqrt{std::move(child)}}); }
ArPtr ar_sum(TsePtr tse, std::optional<Domain> range, TsePtr mask) {
  return std::make_shared<ArNode>(ArNode{ArSum{std::move(tse), range, std::move(mask)}});
}
ArPtr ar_count(TsePtr tse, TsePtr mask) {
  return std::make_shared<ArNode>(ArNode{ArCount{std::move(tse), std::move(mask)}});
}

std::string to_string(const TsePtr& t) {
  return std::visit(
      Overload{
          [](const TseRef& n) { return n.id; },
          [](const TseConstant& n) {
            return "Constant(" + num(n.value) + ", " + std::to_string(n.a) + ", " + std::to_string(n.b) + ")";
          },
          [](const TseShift& n) { return "Shift(" + to_string(n.child) + ", " + std::to_string(n.k) + ")"; },
          [](const TseBinary& n) { return "(" + to_string(n.lhs) + op_text(n.op) + to_string(n.rhs) + ")"; },
      },
      t->node);
}

std::string to_string(const ArPtr& a) {
  return std::visit(
      Overload{
          [](const ArLiteral& n) { return num(n.value); },
          [](const ArBinary& n) { return "(" + to_string(n.lhs) + op_text(n.op) + to_string(n.rhs) + ")"; },
          [](const ArNeg& n) { return "-(" + to_string(n.child) + ")"; },
          [](const ArSqrt& n) { return "sqrt(" + to_string(n.child) + ")"; },
          [](const ArSum& n) {
            std::string s = "Sum(" + to_string(n.tse);
            if (n.range) s += ", " + std::to_string(n.range->a()) + ", " + std::to_string(n.range->b());
            if (n.mask) s += " | " + to_string(n.mask);
            return s + ")";
          },
          [](const ArCount& n) {
            std::string s = "Count(" + to_string(n.tse);
            if (n.mask) s += " | " + to_string(n.mask);
            return s + ")";
          },
      },
      a->node);
}

bool structurally_equal(const TsePtr& x, const TsePtr& y) {
  if (x->node.index() != y->node.index()) return false;
  return std::visit(
      Overload{
          [&](const TseRef& n) { return n.id == std::get<TseRef>(y->node).id; },
          [&](const TseConstant& n) {
            const auto& m = std::get<TseConstant>(y->node);
            return n.value == m.value && n.a == m.a && n.b == m.b;
          },
          [&](const TseShift& n) {
            const auto& m = std::get<TseShift>(y->node);
            return n.k == m.k && structurally_equal(n.child, m.child);
          },
          [&](const TseBinary& n) {
            const auto& m = std::get<TseBinary>(y->node);
            return n.op == m.op && structurally_equal(n.lhs, m.lhs) && structurally_equal(n.rhs, m.rhs);
          },
      },
      x->node);
}

bool structurally_equal(const ArPtr& x, const ArPtr& y) {
  if (x->node.index() != y->node.index()) return false;
  return std::visit(
      Overload{
          [&](const ArLiteral& n) { return n.value == std::get<ArLiteral>(y->node).value; },
          [&](const ArBinary& n) {
            const auto& m = std::get<ArBinary>(y->node);
            return n.op == m.op && structurally_equal(n.lhs, m.lhs) && structurally_equal(n.rhs, m.rhs);
          },
          [&](const ArNeg& n) { return structurally_equal(n.child, std::get<ArNeg>(y->node).child); },
          [&](const ArSqrt& n) { return structurally_equal(n.child, std::get<ArSqrt>(y->node).child); },
          [&](const ArSum& n) {
            const auto& m = std::get<ArSum>(y->node);
            return n.range == m.range && structurally_equal(n.tse, m.tse) && eq_opt(n.mask, m.mask);
          },
          [&](const ArCount& n) {
            const auto& m = std::get<ArCount>(y->node);
            return structurally_equal(n.tse, m.tse) && eq_opt(n.mask, m.mask);
          },
      },
      x->node);
}

}  // namespace tsapprox
