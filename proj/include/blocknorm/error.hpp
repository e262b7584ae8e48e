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

#ifndef BLOCKNORM_ERROR_HPP
#define BLOCKNORM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace blocknorm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (non-finite x,
/// probability outside (0,1), df < 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid block sizes, process parameters or simulation settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Length or dimension mismatch between arguments.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The self-normalizing denominator of a statistic is exactly zero.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data; carries the 1-based row and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::size_t col = 0)
      : Error(Format(what, row, col)), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  static std::string Format(const std::string& what, std::size_t row,
                            std::size_t col) {
    std::string out = what;
    if (row != 0) out += " (row " + std::to_string(row);
    if (row != 0 && col != 0) out += ", column " + std::to_string(col);
    if (row != 0) out += ")";
    return out;
  }

  std::size_t row_;
  std::size_t col_;
};

/// Too many degenerate replications in a Monte Carlo run.
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace blocknorm

#endif  // BLOCKNORM_ERROR_HPP
