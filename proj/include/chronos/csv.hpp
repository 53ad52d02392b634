// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHRONOS_CSV_HPP
#define CHRONOS_CSV_HPP

#include <filesystem>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace chronos {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Writes a single-header CSV with a fixed column order. Paths ending in
/// ".gz" are gzip-compressed. Throws Error if the file cannot be opened.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::initializer_list<double> values);
  void row(std::span<const double> values);

 private:
  void write_line(const std::string& line);

  struct Sink;
  std::unique_ptr<Sink> sink_;
  std::size_t n_columns_;
};

/// Reads a numeric CSV (optionally gzip-compressed) whose header must equal
/// `expected_header`. Throws ParseError naming the file and line.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  const std::vector<std::string>& expected_header);

}  // namespace chronos

#endif  // CHRONOS_CSV_HPP
