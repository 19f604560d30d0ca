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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tsapprox/compress.hpp"
#include "tsapprox/core.hpp"

namespace tsapprox {

inline constexpr int kStoreFormatVersion = 1;

struct NamedSeries {
  std::string id;
  TimeSeries series;
};

// Compressed series by identifier, plus optional raw data used as the
// exact oracle.
class Catalog {
 public:
  void put_compressed(CompressedSeries s);
  void put_raw(const std::string& id, TimeSeries t);

  const CompressedSeries& compressed(const std::string& id) const;
  const TimeSeries& raw(const std::string& id) const;
  bool has_compressed(const std::string& id) const { return compressed_.count(id) != 0; }
  bool has_raw(const std::string& id) const { return raw_.count(id) != 0; }

  const std::map<std::string, CompressedSeries>& all_compressed() const { return compressed_; }
  const std::map<std::string, TimeSeries>& all_raw() const { return raw_; }

  bool empty() const { return compressed_.empty() && raw_.empty(); }

 private:
  std::map<std::string, CompressedSeries> compressed_;
  std::map<std::string, TimeSeries> raw_;
};

// Rows "series_id,t,value" after a header line; t must advance by exactly
// one per series.
std::vector<NamedSeries> ingest_csv(const std::filesystem::path& path);
std::vector<NamedSeries> parse_csv(std::istream& in);
void write_csv(std::ostream& out, const std::vector<NamedSeries>& series);

// Line-delimited JSON: a meta record then one record per segment.
void save(const Catalog& catalog, const std::filesystem::path& path);
Catalog load(const std::filesystem::path& path);
void save_compressed(std::ostream& out, const Catalog& catalog);
Catalog load_compressed(std::istream& in);

// A store directory holds compressed.jsonl and, when raw data was
// ingested, raw.csv.
void save_store(const Catalog& catalog, const std::filesystem::path& dir);
Catalog load_store(const std::filesystem::path& dir);

}  // namespace tsapprox
