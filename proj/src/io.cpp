// Copyright 2026 The zeno-lab Authors
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

#include "zeno/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace zeno::io {

json matrix_to_json(const CMat& m) {
  require(m.rows() == m.cols(), "matrix_to_json: matrix must be square");
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return json{{"dim", m.rows()}, {"entries", entries}};
}

CMat matrix_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("entries"))
    throw std::invalid_argument("matrix json: missing 'dim' or 'entries'");
  const int d = j.at("dim").get<int>();
  require(d >= 1, "matrix json: dim must be >= 1");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<size_t>(d) * d)
    throw std::invalid_argument("matrix json: 'entries' must hold d*d [re, im] pairs");
  CMat m(d, d);
  size_t idx = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c, ++idx) {
      const auto& e = entries.at(idx);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix json: entries must be [re, im] pairs");
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

json kraus_to_json(const KrausSet& k) {
  json ops = json::array();
  for (const auto& op : k.operators()) ops.push_back(matrix_to_json(op).at("entries"));
  return json{{"dim", k.dim()}, {"operators", ops}};
}

KrausSet kraus_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("operators"))
    throw std::invalid_argument("kraus json: missing 'dim' or 'operators'");
  const int d = j.at("dim").get<int>();
  std::vector<CMat> ops;
  for (const auto& entries : j.at("operators"))
    ops.push_back(matrix_from_json(json{{"dim", d}, {"entries", entries}}));
  return KrausSet(d, std::move(ops));
}

json gkls_to_json(const GklsGenerator& g) {
  json jumps = json::array();
  for (const auto& l : g.jumps()) jumps.push_back(matrix_to_json(l));
  return json{{"hamiltonian", matrix_to_json(g.hamiltonian())}, {"jumps", jumps}};
}

GklsGenerator gkls_from_json(const json& j) {
  if (!j.contains("hamiltonian"))
    throw std::invalid_argument("gkls json: missing 'hamiltonian'");
  CMat h = matrix_from_json(j.at("hamiltonian"));
  std::vector<CMat> jumps;
  if (j.contains("jumps"))
    for (const auto& jl : j.at("jumps")) jumps.push_back(matrix_from_json(jl));
  return GklsGenerator(std::move(h), std::move(jumps));
}

json spectral_report_json(const SpectralDecomposition& dec) {
  json clusters = json::array();
  for (const auto& c : dec.clusters) {
    clusters.push_back(json{{"eigenvalue", {c.eigenvalue.real(), c.eigenvalue.imag()}},
                            {"multiplicity", c.multiplicity},
                            {"peripheral", c.is_peripheral},
                            {"nilpotent_norm", c.nilpotent_norm},
                            {"used_contour", c.used_contour}});
  }
  return json{{"size", dec.size},
              {"clusters", clusters},
              {"mu0", dec.mu0},
              {"warnings", dec.warnings}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  require(!header.empty(), "CsvWriter: empty header");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  require(cells.size() == columns_, "CsvWriter: column count mismatch");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::add_row_numeric(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(cells);
}

void CsvWriter::write(const std::string& path) const { write_file(path, buffer_); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace zeno::io
