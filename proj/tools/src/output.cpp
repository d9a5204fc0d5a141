// Copyright 2026 The fluxsweet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "fluxsweet/version.hpp"

namespace fluxsweet::cli {

OutputStream::OutputStream(const std::string& path) : os_(&std::cout) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
  if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
  os_ = file_.get();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::string& command, const nlohmann::json& params,
                     const std::vector<std::string>& columns)
    : os_(os), n_columns_(columns.size()) {
  os_ << "# fluxsweet " << FLUXSWEET_VERSION << '\n'
      << "# command: " << command << '\n'
      << "# units: frequency GHz, time ns, flux Phi0\n"
      << "# params: " << params.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n' << std::flush;
}

void CsvWriter::row(std::initializer_list<double> values) {
  if (values.size() != n_columns_) throw std::logic_error("CsvWriter: column count mismatch");
  bool first = true;
  for (double v : values) {
    os_ << (first ? "" : ",") << format_number(v);
    first = false;
  }
  os_ << '\n' << std::flush;
}

void CsvWriter::comment(const std::string& text) { os_ << "# " << text << '\n' << std::flush; }

void write_summary(std::ostream& os, const std::string& command, const nlohmann::json& params,
                   const nlohmann::json& results) {
  nlohmann::json doc{{"version", FLUXSWEET_VERSION},
                     {"command", command},
                     {"units", "frequency GHz, time ns, flux Phi0"},
                     {"params", params},
                     {"results", results}};
  os << doc.dump(2) << '\n';
}

}  // namespace fluxsweet::cli
