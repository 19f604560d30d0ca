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

#include "tsapprox/engine.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tsapprox/guarantees.hpp"
#include "tsapprox/parser.hpp"

namespace tsapprox {
namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

Domain summation_range(const ArSum& s, const Catalog& cat, bool raw) {
  std::optional<Domain> r = tse_domain(s.tse, cat, raw);
  if (s.range) r = intersect(*r, *s.range);
  if (r && s.mask) r = intersect(*r, tse_domain(s.mask, cat, raw));
  if (!r) throw DomainError("summation range of " + to_string(s.tse) + " is empty");
  return *r;
}

std::int64_t count_of(const ArCount& c, const Catalog& cat, bool raw) {
  std::optional<Domain> r = tse_domain(c.tse, cat, raw);
  if (c.mask) r = intersect(*r, tse_domain(c.mask, cat, raw));
  if (!r) throw DomainError("count range of " + to_string(c.tse) + " is empty");
  return r->length();
}

Monomials expand(const TsePtr& t, std::int64_t shift) {
  return std::visit(
      Overload{
          [&](const TseRef& n) { return Monomials{{{Factor{n.id, shift}}, 1.0}}; },
          [&](const TseConstant& n) { return Monomials{{{}, n.value}}; },
          [&](const TseShift& n) { return expand(n.child, shift + n.k); },
          [&](const TseBinary& n) {
            auto l = expand(n.lhs, shift);
            auto r = expand(n.rhs, shift);
            Monomials out;
            if (n.op == PointOp::kMul) {
              for (const auto& [fl, cl] : l) {
                for (const auto& [fr, cr] : r) {
                  std::vector<Factor> f = fl;
                  f.insert(f.end(), fr.begin(), fr.end());
                  std::sort(f.begin(), f.end());
                  out[f] += cl * cr;
                }
              }
            } else {
              out = std::move(l);
              const double sign = n.op == PointOp::kAdd ? 1.0 : -1.0;
              for (const auto& [fr, cr] : r) out[fr] += sign * cr;
            }
            std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
            return out;
          },
      },
      t->node);
}

ApproxScalar monomial_sum(const std::vector<Factor>& factors, const Domain& r, const Catalog& cat) {
  if (factors.empty()) return ApproxScalar::exact(static_cast<double>(r.length()));
  std::vector<SeriesView> views;
  for (const auto& f : factors) views.emplace_back(cat.compressed(f.id), f.shift);
  switch (views.size()) {
    case 1:
      return guarantee_sum_range(views[0], r);
    case 2:
      return product_sum(views[0], views[1], r);
    default:
      return generic_product_sum(views, r);
  }
}

ApproxScalar approx_sum(const ArSum& s, const Catalog& cat) {
  const Domain r = summation_range(s, cat, false);
  double value = 0.0, guarantee = 0.0;
  for (const auto& [factors, coef] : expand(s.tse, 0)) {
    const auto m = monomial_sum(factors, r, cat);
    value += coef * m.value;
    guarantee += std::abs(coef) * m.guarantee;
  }
  return {value, guarantee};
}

class ApproxEvaluator {
 public:
  explicit ApproxEvaluator(const Catalog& cat) : cat_(cat) {}

  ApproxScalar eval(const ArPtr& a) {
    if (auto it = memo_.find(a.get()); it != memo_.end()) return it->second;
    const ApproxScalar out = std::visit(
        Overload{
            [](const ArLiteral& n) { return ApproxScalar::exact(n.value); },
            [&](const ArBinary& n) {
              const auto l = eval(n.lhs);
              const auto r = eval(n.rhs);
              switch (n.op) {
                case ArOp::kAdd:
                  return propagate_scalar(ScalarOp::kAdd, l, r);
                case ArOp::kSub:
                  return propagate_scalar(ScalarOp::kSub, l, r);
                case ArOp::kMul:
                  return propagate_scalar(ScalarOp::kMul, l, r);
                case ArOp::kDiv:
                  return propagate_scalar(ScalarOp::kDiv, l, r);
              }
              throw ContractViolation("unknown operator");
            },
            [&](const ArNeg& n) { return propagate_neg(eval(n.child)); },
            [&](const ArSqrt& n) { return propagate_sqrt(eval(n.child)); },
            [&](const ArSum& n) { return approx_sum(n, cat_); },
            [&](const ArCount& n) { return ApproxScalar::exact(static_cast<double>(count_of(n, cat_, false))); },
        },
        a->node);
    memo_.emplace(a.get(), out);
    return out;
  }

 private:
  const Catalog& cat_;
  std::unordered_map<const ArNode*, ApproxScalar> memo_;
};

class ExactEvaluator {
 public:
  explicit ExactEvaluator(const Catalog& cat) : cat_(cat) {}

  double eval(const ArPtr& a) {
    if (auto it = memo_.find(a.get()); it != memo_.end()) return it->second;
    const double out = std::visit(
        Overload{
            [](const ArLiteral& n) { return n.value; },
            [&](const ArBinary& n) {
              const double l = eval(n.lhs);
              const double r = eval(n.rhs);
              switch (n.op) {
                case ArOp::kAdd:
                  return l + r;
                case ArOp::kSub:
                  return l - r;
                case ArOp::kMul:
                  return l * r;
                case ArOp::kDiv:
                  if (r == 0.0) throw EvalError("division by zero");
                  return l / r;
              }
              throw ContractViolation("unknown operator");
            },
            [&](const ArNeg& n) { return -eval(n.child); },
            [&](const ArSqrt& n) {
              const double v = eval(n.child);
              if (v < 0.0) throw EvalError("square root of a negative value " + std::to_string(v));
              return std::sqrt(v);
            },
            [&](const ArSum& n) {
              return exact_sum(eval_exact(n.tse, cat_), summation_range(n, cat_, true));
            },
            [&](const ArCount& n) { return static_cast<double>(count_of(n, cat_, true)); },
        },
        a->node);
    memo_.emplace(a.get(), out);
    return out;
  }

 private:
  const Catalog& cat_;
  std::unordered_map<const ArNode*, double> memo_;
};

}  // namespace

Domain tse_domain(const TsePtr& tse, const Catalog& cat, bool raw) {
  return std::visit(
      Overload{
          [&](const TseRef& n) { return raw ? cat.raw(n.id).domain() : cat.compressed(n.id).domain(); },
          [](const TseConstant& n) { return Domain(n.a, n.b); },
          [&](const TseShift& n) { return tse_domain(n.child, cat, raw).shifted(n.k); },
          [&](const TseBinary& n) {
            const Domain l = tse_domain(n.lhs, cat, raw);
            const Domain r = tse_domain(n.rhs, cat, raw);
            auto d = intersect(l, r);
            if (!d) {
              throw DomainError("operands of " + to_string(tse) + " do not overlap: " + l.str() + " and " +
                                r.str());
            }
            return *d;
          },
      },
      tse->node);
}

TimeSeries eval_exact(const TsePtr& tse, const Catalog& cat) {
  return std::visit(
      Overload{
          [&](const TseRef& n) { return cat.raw(n.id); },
          [](const TseConstant& n) { return constant_series(n.value, Domain(n.a, n.b)); },
          [&](const TseShift& n) { return shift(eval_exact(n.child, cat), n.k); },
          [&](const TseBinary& n) { return pointwise(n.op, eval_exact(n.lhs, cat), eval_exact(n.rhs, cat)); },
      },
      tse->node);
}

double eval_exact(const ArPtr& ast, const Catalog& catalog) { return ExactEvaluator(catalog).eval(ast); }

ApproxScalar eval_approx(const ArPtr& ast, const Catalog& catalog) {
  return ApproxEvaluator(catalog).eval(ast);
}

Monomials expand_monomials(const TsePtr& tse) { return expand(tse, 0); }

StatKind parse_stat_kind(const std::string& name) {
  if (name == "mu") return StatKind::kMu;
  if (name == "sigma") return StatKind::kSigma;
  if (name == "corr") return StatKind::kCorr;
  if (name == "ccorr") return StatKind::kCCorr;
  if (name == "acorr") return StatKind::kACorr;
  throw Error("usage", "unknown statistic '" + name + "' (mu, sigma, corr, ccorr, acorr)");
}

ArPtr stat_expression(StatKind kind, const std::vector<std::string>& ids, std::int64_t m) {
  const std::size_t want = (kind == StatKind::kCorr || kind == StatKind::kCCorr) ? 2 : 1;
  if (ids.size() != want) {
    throw Error("usage", "statistic expects " + std::to_string(want) + " series, got " + std::to_string(ids.size()));
  }
  const auto x = tse_ref(ids[0]);
  switch (kind) {
    case StatKind::kMu:
      return expand_mu(x);
    case StatKind::kSigma:
      return expand_sigma(x);
    case StatKind::kCorr:
      return expand_corr(x, tse_ref(ids[1]));
    case StatKind::kCCorr:
      return expand_ccorr(x, tse_ref(ids[1]), m);
    case StatKind::kACorr:
      return expand_acorr(x, m);
  }
  throw ContractViolation("unknown statistic");
}

}  // namespace tsapprox
