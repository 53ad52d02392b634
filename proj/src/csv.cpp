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

#include "chronos/csv.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

bool has_gz_extension(const std::filesystem::path& p) { return p.extension() == ".gz"; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  if (has_gz_extension(path)) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw ParseError(path.string(), "cannot open file");
    std::string current;
    char buf[4096];
    int n = 0;
    while ((n = gzread(f, buf, sizeof buf)) > 0) {
      for (int i = 0; i < n; ++i) {
        if (buf[i] == '\n') {
          lines.push_back(std::move(current));
          current.clear();
        } else {
          current.push_back(buf[i]);
        }
      }
    }
    gzclose(f);
    if (!current.empty()) lines.push_back(std::move(current));
    return lines;
  }
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvWriter::Sink {
  std::ofstream plain;
  gzFile gz = nullptr;
};

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : sink_(std::make_unique<Sink>()), n_columns_(columns.size()) {
  if (has_gz_extension(path)) {
    sink_->gz = gzopen(path.c_str(), "wb");
    if (!sink_->gz) throw Error("cannot open " + path.string() + " for writing");
  } else {
    sink_->plain.open(path, std::ios::binary | std::ios::trunc);
    if (!sink_->plain) throw Error("cannot open " + path.string() + " for writing");
  }
  std::string header;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) header += ',';
    header += columns[i];
  }
  write_line(header);
}

CsvWriter::~CsvWriter() {
  if (sink_ && sink_->gz) gzclose(sink_->gz);
}

void CsvWriter::write_line(const std::string& line) {
  if (sink_->gz) {
    gzwrite(sink_->gz, line.data(), static_cast<unsigned>(line.size()));
    gzputc(sink_->gz, '\n');
  } else {
    sink_->plain << line << '\n';
  }
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::span<const double>(values.begin(), values.size()));
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != n_columns_) throw Error("CSV row width does not match the header");
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_double(values[i]);
  }
  write_line(line);
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  const std::vector<std::string>& expected_header) {
  const auto lines = read_lines(path);
  if (lines.empty() || split_commas(lines.front()) != expected_header) {
    std::string want;
    for (std::size_t i = 0; i < expected_header.size(); ++i) want += (i ? "," : "") + expected_header[i];
    throw ParseError(path.string() + ":1", "header line must be \"" + want + "\"");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (trim(lines[ln]).empty()) continue;
    const auto fields = split_commas(lines[ln]);
    const std::string where = path.string() + ":" + std::to_string(ln + 1);
    if (fields.size() != expected_header.size()) throw ParseError(where, "wrong number of columns");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size() || errno == ERANGE) {
        throw ParseError(where, "not a number: \"" + f + "\"");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace chronos
