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

#ifndef ZENO_IO_HPP_
#define ZENO_IO_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "zeno/matrix.hpp"
#include "zeno/spectral.hpp"
#include "zeno/superop.hpp"

namespace zeno::io {

using json = nlohmann::json;

// Operator schema: {"dim": d, "entries": [[re, im], ...]} with d*d entries
// in row-major order.  Values round-trip bit-exactly for binary64.
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

// Kraus set schema: {"dim": d, "operators": [<entries array>, ...]}.
json kraus_to_json(const KrausSet& k);
KrausSet kraus_from_json(const json& j);

// GKLS schema: {"hamiltonian": <matrix>, "jumps": [<matrix>, ...]}.
json gkls_to_json(const GklsGenerator& g);
GklsGenerator gkls_from_json(const json& j);

/// Decomposition report: eigenvalues, multiplicities, peripheral flags,
/// nilpotent norms, mu0, warnings.
json spectral_report_json(const SpectralDecomposition& dec);

/// 17-significant-digit decimal rendering (binary64 round-trip safe).
std::string format_double(double v);

/// CSV with '.' decimal separator and LF line endings; numeric cells are
/// rendered with format_double.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  void add_row_numeric(const std::vector<double>& values);
  const std::string& str() const { return buffer_; }
  void write(const std::string& path) const;

 private:
  std::string buffer_;
  size_t columns_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace zeno::io

#endif  // ZENO_IO_HPP_
