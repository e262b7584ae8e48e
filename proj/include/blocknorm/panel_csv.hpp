// Copyright 2026 The blocknorm Authors.
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

/// \file
/// Reading numeric panels from CSV text. Comma separated, one time point
/// per line. The first line is a header iff none of its cells parse as a
/// number. Blank lines are ignored.

#ifndef BLOCKNORM_PANEL_CSV_HPP
#define BLOCKNORM_PANEL_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "blocknorm/error.hpp"
#include "blocknorm/series.hpp"

namespace blocknorm {

namespace detail {

inline std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::optional<double> ParseNumber(std::string_view cell) {
  cell = Trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.push_back(line.substr(pos, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

}  // namespace detail

struct CsvPanel {
  PanelSeries panel;
  /// Column names from the header line, empty when there was none.
  std::vector<std::string> header;
};

inline CsvPanel read_panel_csv(std::istream& in) {
  std::vector<double> data;
  std::vector<std::string> header;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool first = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::Trim(line).empty()) continue;
    const auto cells = detail::SplitCells(line);
    if (first) {
      first = false;
      bool any_number = false;
      for (auto c : cells) any_number = any_number || detail::ParseNumber(c).has_value();
      if (!any_number) {
        for (auto c : cells) header.emplace_back(detail::Trim(c));
        cols = cells.size();
        continue;
      }
    }
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols) {
      throw ParseError("expected " + std::to_string(cols) + " columns, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = detail::ParseNumber(cells[c]);
      if (!v) {
        throw ParseError("non-numeric cell '" +
                             std::string(detail::Trim(cells[c])) + "'",
                         line_no, c + 1);
      }
      data.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("input contains no numeric rows");
  return {PanelSeries(rows, cols, std::move(data)), std::move(header)};
}

inline CsvPanel read_panel_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_panel_csv(in);
}

/// All numeric cells of a CSV document in reading order (a header line is
/// skipped). Used for vectors such as a hypothesized mean.
inline std::vector<double> read_vector_csv(std::istream& in) {
  const CsvPanel p = read_panel_csv(in);
  return p.panel.data();
}

}  // namespace blocknorm

#endif  // BLOCKNORM_PANEL_CSV_HPP
