// Copyright 2026 The otto-ion Authors
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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "otto/experiment.hpp"

namespace otto {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("schema mismatch: no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("schema mismatch: '" + path + "' is empty");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size())
      throw std::runtime_error("schema mismatch: row width differs from header in '" + path + "'");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return path.substr(0, dot);
  return path;
}

std::string write_pair(const Table& t, const std::string& path, const std::string& x,
                       const std::string& y) {
  const std::size_t cx = t.column(x), cy = t.column(y), cs = t.column("status");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "# " << x << ' ' << y << '\n';
  for (const auto& row : t.rows) {
    if (row[cs] != "ok" || row[cx] == "nan" || row[cy] == "nan") continue;
    out << row[cx] << ' ' << row[cy] << '\n';
  }
  return path;
}

}  // namespace

std::vector<std::string> emit_plotdata(const std::string& csv_path) {
  const Table t = read_table(csv_path);
  const std::string stem = stem_of(csv_path);
  const std::string& first = t.header.front();
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string x;
  if (first == "t1" && t.header.size() > 1 && t.header[1] == "Q_H") {
    x = "t1";
    pairs = {{"Q_H", "_qh.dat"}, {"eta", "_eta.dat"}, {"w_net", "_work.dat"}};
  } else if (first == "tau") {
    x = "tau";
    pairs = {{"eta_ir", "_eta_ir.dat"}, {"W_ir_entropy", "_wir.dat"}, {"w_net", "_work.dat"}};
  } else if (first == "cycle_index") {
    x = "eta_avg_pairwise";
    pairs = {{"power", "_power.dat"}};
  } else {
    throw std::runtime_error("schema mismatch: unrecognized header in '" + csv_path + "'");
  }
  std::vector<std::string> written;
  for (const auto& [y, suffix] : pairs) written.push_back(write_pair(t, stem + suffix, x, y));
  return written;
}

}  // namespace otto
