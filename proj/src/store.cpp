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

#include "tsapprox/store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace tsapprox {
namespace {

using json = nlohmann::json;

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void Catalog::put_compressed(CompressedSeries s) {
  const std::string id = s.series_id();
  compressed_.insert_or_assign(id, std::move(s));
}

void Catalog::put_raw(const std::string& id, TimeSeries t) { raw_.insert_or_assign(id, std::move(t)); }

const CompressedSeries& Catalog::compressed(const std::string& id) const {
  auto it = compressed_.find(id);
  if (it == compressed_.end()) throw EvalError("series '" + id + "' is not compressed in the catalog");
  return it->second;
}

const TimeSeries& Catalog::raw(const std::string& id) const {
  auto it = raw_.find(id);
  if (it == raw_.end()) throw EvalError("raw data for series '" + id + "' is not available");
  return it->second;
}

std::vector<NamedSeries> parse_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw IngestError("empty input, expected header series_id,t,value", 1);
  ++lineno;
  {
    const auto h = split_fields(trim(line));
    if (h.size() != 3 || h[0] != "series_id" || h[1] != "t" || h[2] != "value") {
      throw IngestError("bad header '" + trim(line) + "', expected series_id,t,value", lineno);
    }
  }
  struct Acc {
    Position a = 0;
    Position next = 0;
    std::vector<double> values;
  };
  std::vector<std::string> order;
  std::map<std::string, Acc> acc;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 3) {
      throw IngestError("line " + std::to_string(lineno) + ": expected 3 fields", lineno);
    }
    Position t = 0;
    {
      auto [p, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), t);
      if (ec != std::errc() || p != f[1].data() + f[1].size()) {
        throw IngestError("line " + std::to_string(lineno) + ": non-integer position '" + f[1] + "'", lineno);
      }
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument(f[2]);
    } catch (const std::logic_error&) {
      throw IngestError("line " + std::to_string(lineno) + ": non-numeric value '" + f[2] + "'", lineno);
    }
    if (!std::isfinite(v)) {
      throw IngestError("line " + std::to_string(lineno) + ": non-finite value", lineno);
    }
    auto it = acc.find(f[0]);
    if (it == acc.end()) {
      order.push_back(f[0]);
      acc.emplace(f[0], Acc{t, t + 1, {v}});
      continue;
    }
    Acc& s = it->second;
    if (t < s.next) {
      throw IngestError("series " + f[0] + ": duplicate or out-of-order t=" + std::to_string(t) +
                            " (line " + std::to_string(lineno) + ")",
                        lineno);
    }
    if (t > s.next) {
      throw IngestError("series " + f[0] + ": gap at t=" + std::to_string(t) + ", expected t=" +
                            std::to_string(s.next) + " (line " + std::to_string(lineno) + ")",
                        lineno);
    }
    s.values.push_back(v);
    s.next = t + 1;
  }
  std::vector<NamedSeries> out;
  for (const auto& id : order) {
    auto& s = acc.at(id);
    out.push_back({id, TimeSeries(s.a, std::move(s.values))});
  }
  return out;
}

std::vector<NamedSeries> ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string(), 0);
  return parse_csv(in);
}

void write_csv(std::ostream& out, const std::vector<NamedSeries>& series) {
  out << "series_id,t,value\n";
  for (const auto& s : series) {
    const auto& d = s.series.domain();
    for (Position i = d.a(); i <= d.b(); ++i) out << s.id << ',' << i << ',' << fmt17(s.series[i]) << '\n';
  }
}

void save_compressed(std::ostream& out, const Catalog& catalog) {
  out << json{{"format_version", kStoreFormatVersion}}.dump() << '\n';
  for (const auto& [id, cs] : catalog.all_compressed()) {
    for (const auto& seg : cs.segments()) {
      json rec;
      rec["series_id"] = id;
      rec["a"] = seg.domain.a();
      rec["b"] = seg.domain.b();
      rec["family_id"] = cs.family().id();
      rec["dim"] = seg.fn.dim();
      rec["coeffs_or_params"] = std::vector<double>(seg.fn.coeffs().begin(), seg.fn.coeffs().end());
      rec["fes"] = seg.em.fes;
      rec["ses"] = seg.em.ses;
      rec["tes"] = seg.em.tes;
      out << rec.dump() << '\n';
    }
  }
}

Catalog load_compressed(std::istream& in) {
  std::string line;
  std::size_t record = 0;
  if (!std::getline(in, line)) throw LoadError("missing meta record", 0);
  try {
    const auto meta = json::parse(line);
    const int version = meta.at("format_version").get<int>();
    if (version != kStoreFormatVersion) {
      throw LoadError("unsupported format_version " + std::to_string(version), 0);
    }
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed meta record: ") + e.what(), 0);
  }

  std::vector<std::string> order;
  std::map<std::string, std::pair<FamilyDescriptor, std::vector<SegmentRep>>> groups;
  while (std::getline(in, line)) {
    ++record;
    if (trim(line).empty()) continue;
    try {
      const auto rec = json::parse(line);
      const auto id = rec.at("series_id").get<std::string>();
      const auto token = rec.at("family_id").get<std::string>();
      std::optional<FamilyDescriptor> family;
      try {
        family = FamilyDescriptor::parse(token);
      } catch (const Error&) {
        throw LoadError("record " + std::to_string(record) + ": unknown family token '" + token + "'", record);
      }
      const Domain d(rec.at("a").get<Position>(), rec.at("b").get<Position>());
      auto repr = rec.at("coeffs_or_params").get<std::vector<double>>();
      if (rec.at("dim").get<int>() != static_cast<int>(repr.size())) {
        throw LoadError("record " + std::to_string(record) + ": dim does not match coefficient count", record);
      }
      ErrorMeasures em{rec.at("fes").get<double>(), rec.at("ses").get<double>(), rec.at("tes").get<double>()};
      auto it = groups.find(id);
      if (it == groups.end()) {
        order.push_back(id);
        it = groups.emplace(id, std::make_pair(*family, std::vector<SegmentRep>{})).first;
      } else if (!(it->second.first == *family)) {
        throw LoadError("record " + std::to_string(record) + ": series " + id + " mixes families", record);
      }
      it->second.second.emplace_back(FittedFunction(*family, d, std::move(repr)), em);
    } catch (const json::exception& e) {
      throw LoadError("record " + std::to_string(record) + ": " + e.what(), record);
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      throw LoadError("record " + std::to_string(record) + ": " + e.what(), record);
    }
  }
  Catalog cat;
  for (const auto& id : order) {
    auto& [family, segs] = groups.at(id);
    std::sort(segs.begin(), segs.end(),
              [](const SegmentRep& x, const SegmentRep& y) { return x.domain.a() < y.domain.a(); });
    try {
      cat.put_compressed(CompressedSeries(id, family, std::move(segs)));
    } catch (const Error& e) {
      throw LoadError(std::string("series ") + id + ": " + e.what(), record);
    }
  }
  return cat;
}

void save(const Catalog& catalog, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path.string());
  save_compressed(out, catalog);
}

Catalog load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string(), 0);
  return load_compressed(in);
}

void save_store(const Catalog& catalog, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save(catalog, dir / "compressed.jsonl");
  if (!catalog.all_raw().empty()) {
    std::vector<NamedSeries> raw;
    for (const auto& [id, t] : catalog.all_raw()) raw.push_back({id, t});
    std::ofstream out(dir / "raw.csv");
    if (!out) throw Error("io", "cannot write " + (dir / "raw.csv").string());
    write_csv(out, raw);
  }
}

Catalog load_store(const std::filesystem::path& dir) {
  Catalog cat;
  if (std::filesystem::exists(dir / "compressed.jsonl")) cat = load(dir / "compressed.jsonl");
  if (std::filesystem::exists(dir / "raw.csv")) {
    for (auto& s : ingest_csv(dir / "raw.csv")) cat.put_raw(s.id, std::move(s.series));
  }
  return cat;
}

}  // namespace tsapprox
