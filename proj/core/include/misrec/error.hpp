// Copyright 2026 The misrec Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace misrec {

// Base of every error the library raises on purpose. The CLI maps the
// concrete subclasses to process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration values (exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or unusable input data (exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public DataError {
 public:
  using DataError::DataError;
};

// Raised by recommenders that cannot be trained on the given data.
class FitError : public DataError {
 public:
  using DataError::DataError;
};

class AggregationError : public DataError {
 public:
  using DataError::DataError;
};

// Non-finite or singular intermediate results (exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Violated preconditions on arguments (programming errors).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace misrec
