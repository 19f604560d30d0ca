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

// Command-line front end. Exit 0 on success, 1 on usage or syntax errors,
// 2 on data and guarantee errors; failures print one stderr line
// "error: <code>: <message>".

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsapprox/compress.hpp"
#include "tsapprox/engine.hpp"
#include "tsapprox/parser.hpp"
#include "tsapprox/sampling.hpp"
#include "tsapprox/store.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tsapprox;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Accumulates key=value pairs for one output record.
class Record {
 public:
  Record& add(const std::string& key, double v) {
    text_.push_back(key + "=" + fixed6(v));
    json_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, std::int64_t v) {
    text_.push_back(key + "=" + std::to_string(v));
    json_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, const std::string& v) {
    text_.push_back(key + "=" + v);
    json_[key] = v;
    return *this;
  }
  Record& add(const std::string& key, bool v) {
    text_.push_back(key + "=" + (v ? "true" : "false"));
    json_[key] = v;
    return *this;
  }

  std::string line() const {
    std::string out;
    for (const auto& t : text_) out += (out.empty() ? "" : " ") + t;
    return out;
  }
  const json& object() const { return json_; }

 private:
  std::vector<std::string> text_;
  json json_ = json::object();
};

void emit(const std::vector<Record>& records, bool as_json, const std::string& list_key = "") {
  if (as_json) {
    if (list_key.empty()) {
      std::cout << records.front().object().dump() << "\n";
    } else {
      json arr = json::array();
      for (const auto& r : records) arr.push_back(r.object());
      std::cout << json{{list_key, arr}}.dump() << "\n";
    }
    return;
  }
  for (const auto& r : records) std::cout << r.line() << "\n";
}

Catalog open_store(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("store", "store directory " + dir.string() + " does not exist");
  return load_store(dir);
}

std::set<std::string> referenced_series(const TsePtr& tse) {
  std::set<std::string> ids;
  for (const auto& [factors, coeff] : expand_monomials(tse)) {
    for (const auto& f : factors) ids.insert(f.id);
  }
  return ids;
}

bool has_raw_for(const ArPtr& ast, const Catalog& cat);

bool tse_has_raw(const TsePtr& t, const Catalog& cat) {
  if (!t) return true;
  for (const auto& id : referenced_series(t)) {
    if (!cat.has_raw(id)) return false;
  }
  return true;
}

bool has_raw_for(const ArPtr& ast, const Catalog& cat) {
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ArLiteral>) {
          return true;
        } else if constexpr (std::is_same_v<N, ArBinary>) {
          return has_raw_for(n.lhs, cat) && has_raw_for(n.rhs, cat);
        } else if constexpr (std::is_same_v<N, ArNeg> || std::is_same_v<N, ArSqrt>) {
          return has_raw_for(n.child, cat);
        } else {
          return tse_has_raw(n.tse, cat) && tse_has_raw(n.mask, cat);
        }
      },
      ast->node);
}

Record evaluate(const ArPtr& ast, const Catalog& cat, bool oracle) {
  const auto approx = eval_approx(ast, cat);
  Record r;
  r.add("value", approx.value).add("guarantee", approx.guarantee);
  if (oracle) {
    if (!has_raw_for(ast, cat)) throw Error("no_raw", "--oracle needs raw data for every referenced series");
    const double exact = eval_exact(ast, cat);
    r.add("exact", exact).add("true_error", std::abs(exact - approx.value));
  }
  return r;
}

int cmd_ingest(const fs::path& csv, const fs::path& store, bool as_json) {
  auto series = ingest_csv(csv);
  Catalog cat = fs::is_directory(store) ? load_store(store) : Catalog{};
  std::vector<Record> out;
  for (auto& s : series) {
    Record r;
    r.add("series", s.id)
        .add("a", static_cast<std::int64_t>(s.series.domain().a()))
        .add("b", static_cast<std::int64_t>(s.series.domain().b()))
        .add("points", s.series.length());
    out.push_back(r);
    cat.put_raw(s.id, std::move(s.series));
  }
  save_store(cat, store);
  emit(out, as_json, "series");
  return 0;
}

int cmd_compress(const std::string& id, bool all, const std::string& family, const std::string& seg,
                 const fs::path& store, bool as_json) {
  const auto fam = FamilyDescriptor::parse(family);
  const auto spec = SegSpec::parse(seg);
  Catalog cat = open_store(store);
  std::vector<std::string> ids;
  if (all) {
    for (const auto& [name, t] : cat.all_raw()) ids.push_back(name);
    if (ids.empty()) throw Error("no_raw", "store holds no raw series to compress");
  } else {
    ids.push_back(id);
  }
  std::vector<Record> out;
  for (const auto& name : ids) {
    auto cs = compress(cat.raw(name), fam, spec, name);
    Record r;
    r.add("series", name)
        .add("family", fam.id())
        .add("segments", static_cast<std::int64_t>(cs.size()))
        .add("stored", static_cast<std::int64_t>(cs.stored_numbers()))
        .add("ratio", cs.compression_ratio());
    out.push_back(r);
    cat.put_compressed(std::move(cs));
  }
  save_store(cat, store);
  emit(out, as_json, "series");
  return 0;
}

int cmd_info(const fs::path& store, bool as_json) {
  const Catalog cat = open_store(store);
  std::set<std::string> ids;
  for (const auto& [id, cs] : cat.all_compressed()) ids.insert(id);
  for (const auto& [id, t] : cat.all_raw()) ids.insert(id);
  std::vector<Record> out;
  for (const auto& id : ids) {
    Record r;
    r.add("series", id);
    if (cat.has_compressed(id)) {
      const auto& cs = cat.compressed(id);
      r.add("family", cs.family().id())
          .add("segments", static_cast<std::int64_t>(cs.size()))
          .add("points", cs.domain().length())
          .add("stored", static_cast<std::int64_t>(cs.stored_numbers()))
          .add("ratio", cs.compression_ratio());
    } else {
      r.add("family", std::string("none")).add("points", cat.raw(id).length());
    }
    r.add("raw", cat.has_raw(id));
    out.push_back(r);
  }
  emit(out, as_json, "series");
  return 0;
}

int cmd_compare_sampling(const std::string& expr, double beta, std::optional<double> epsilon,
                         std::uint64_t seed, const fs::path& store, bool as_json) {
  const auto ast = parse(expr);
  const auto* sum = std::get_if<ArSum>(&ast->node);
  if (!sum) throw Error("usage", "compare-sampling expects a single Sum(...) expression");
  const Catalog cat = open_store(store);

  const auto approx = eval_approx(ast, cat);
  Domain r = tse_domain(sum->tse, cat);
  if (sum->range) r = *intersect(r, *sum->range);
  if (sum->mask) r = *intersect(r, tse_domain(sum->mask, cat));

  // Value bounds come from the raw data when present, otherwise from the
  // reconstruction (informational only).
  const auto ids = referenced_series(sum->tse);
  const bool raw = std::all_of(ids.begin(), ids.end(), [&](const auto& id) { return cat.has_raw(id); });
  Catalog values;
  for (const auto& id : ids) values.put_raw(id, raw ? cat.raw(id) : cat.compressed(id).reconstruct());
  const TimeSeries x = eval_exact(sum->tse, values);
  double lo = x[r.a()], hi = x[r.a()];
  for (Position i = r.a(); i <= r.b(); ++i) {
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }

  std::int64_t storage = 0;
  for (const auto& id : ids) storage += static_cast<std::int64_t>(cat.compressed(id).stored_numbers());

  const double eps = epsilon.value_or(approx.guarantee);
  SampleSize m{r.length(), true};
  if (eps > 0.0 && hi > lo) m = required_sample_size(r.length(), eps, beta, lo, hi);
  if (hi == lo) m = {1, false};

  Record rec;
  rec.add("value", approx.value)
      .add("guarantee", approx.guarantee)
      .add("epsilon", eps)
      .add("beta", beta)
      .add("n", r.length())
      .add("storage", storage)
      .add("sample_size", m.m)
      .add("exhausted", m.exhausted)
      .add("bounds_source", std::string(raw ? "raw" : "compressed"));
  if (raw && ids.size() <= 2 && sum->mask == nullptr) {
    // Only plain products of at most two series have a sampled estimator.
    const auto mono = expand_monomials(sum->tse);
    if (mono.size() == 1 && mono.begin()->second == 1.0 && mono.begin()->first.size() == 2) {
      const auto& f = mono.begin()->first;
      const TimeSeries a = restrict(shift(cat.raw(f[0].id), f[0].shift), r);
      const TimeSeries b = restrict(shift(cat.raw(f[1].id), f[1].shift), r);
      rec.add("sampled_value", sampled_sum_product(a, b, m.m, seed));
    }
  }
  emit({rec}, as_json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic error guarantees for analytics over compressed time series"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "One JSON object per command on stdout");

  std::string store;
  std::string csv;
  auto* ingest = app.add_subcommand("ingest", "Load a series_id,t,value CSV into a store");
  ingest->add_option("csv", csv, "Input CSV")->required();
  ingest->add_option("--store", store, "Store directory")->required();

  std::string series_id, family, seg;
  bool all = false;
  auto* comp = app.add_subcommand("compress", "Compress raw series in a store");
  comp->add_option("series", series_id, "Series identifier");
  comp->add_flag("--all", all, "Compress every raw series");
  comp->add_option("--family", family, "p0, p1, p2 or g")->required();
  comp->add_option("--seg", seg, "fixed:L or sliding:tau")->required();
  comp->add_option("--store", store, "Store directory")->required();

  std::string expr;
  bool oracle = false;
  auto* query = app.add_subcommand("query", "Evaluate an expression with its guarantee");
  query->add_option("expr", expr, "Expression")->required();
  query->add_option("--store", store, "Store directory")->required();
  query->add_flag("--oracle", oracle, "Also evaluate over raw data");

  std::string kind;
  std::vector<std::string> refs;
  std::int64_t lag = 0;
  auto* stats = app.add_subcommand("stats", "Evaluate a statistic: mu, sigma, corr, ccorr, acorr");
  stats->add_option("kind", kind, "Statistic")->required();
  stats->add_option("series", refs, "Series identifiers")->required();
  stats->add_option("--lag", lag, "Lag for ccorr and acorr");
  stats->add_option("--store", store, "Store directory")->required();
  stats->add_flag("--oracle", oracle, "Also evaluate over raw data");

  auto* info = app.add_subcommand("info", "Describe the series in a store");
  info->add_option("--store", store, "Store directory")->required();

  double beta = 0.05;
  std::optional<double> epsilon;
  std::uint64_t seed = 1;
  auto* cmp = app.add_subcommand("compare-sampling", "Compare stored numbers with a sampling baseline");
  cmp->add_option("expr", expr, "A Sum(...) expression")->required();
  cmp->add_option("--beta", beta, "Failure probability")->required()->check(CLI::Range(0.0, 1.0));
  cmp->add_option("--epsilon", epsilon, "Target error (default: the deterministic guarantee)");
  cmp->add_option("--seed", seed, "Seed for the sampled estimate");
  cmp->add_option("--store", store, "Store directory")->required();

  for (auto* sub : {ingest, comp, query, stats, info, cmp}) sub->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*ingest) return cmd_ingest(csv, store, as_json);
    if (*comp) {
      if (all == !series_id.empty()) throw Error("usage", "give a series identifier or --all, not both");
      return cmd_compress(series_id, all, family, seg, store, as_json);
    }
    if (*query) {
      const auto ast = parse(expr);
      const Catalog cat = open_store(store);
      emit({evaluate(ast, cat, oracle)}, as_json);
      return 0;
    }
    if (*stats) {
      std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::tolower(c); });
      const auto ast = stat_expression(parse_stat_kind(kind), refs, lag);
      const Catalog cat = open_store(store);
      Record r = evaluate(ast, cat, oracle);
      r.add("expr", to_string(ast));
      emit({r}, as_json);
      return 0;
    }
    if (*info) return cmd_info(store, as_json);
    if (*cmp) return cmd_compare_sampling(expr, beta, epsilon, seed, store, as_json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    const bool usage = e.code() == "usage" || e.code() == "family" || e.code() == "segspec";
    return usage ? kUsage : kData;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
