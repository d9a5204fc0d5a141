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

#pragma once

#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace fluxsweet::cli {

/// Stdout when path is empty or "-", otherwise a truncated file.
class OutputStream {
 public:
  explicit OutputStream(const std::string& path);
  std::ostream& get() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

/// CSV with a commented header: code version, command, units, the full
/// parameter echo on one line, then the column names. Rows are flushed as
/// they are written so interrupted sweeps keep what they produced.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::string& command, const nlohmann::json& params,
            const std::vector<std::string>& columns);

  void row(std::initializer_list<double> values);
  void comment(const std::string& text);

 private:
  std::ostream& os_;
  std::size_t n_columns_;
};

std::string format_number(double v);

/// Writes a JSON document with the same version/command/params envelope.
void write_summary(std::ostream& os, const std::string& command, const nlohmann::json& params,
                   const nlohmann::json& results);

}  // namespace fluxsweet::cli
