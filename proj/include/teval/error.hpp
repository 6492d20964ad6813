// Copyright 2026 The tandem-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEVAL_ERROR_HPP
#define TEVAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teval {

// Coarse error classes. The CLI maps these onto exit codes.
enum class ErrorCategory {
  kParse,
  kDuplicateId,
  kJoin,
  kEmptyTable,
  kEmptyClass,
  kDomain,
  kShape,
  kDegenerateCosine,
  kDivergence,
  kDegenerateConfig,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// Malformed input; carries the 1-based line number (0 when not line-bound).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message,
             ErrorCategory category = ErrorCategory::kParse)
      : Error(category, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public ParseError {
 public:
  DuplicateIdError(std::size_t line, const std::string& id)
      : ParseError(line, "duplicate trial id '" + id + "'",
                   ErrorCategory::kDuplicateId),
        id_(id) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class DegenerateConfigError : public Error {
 public:
  explicit DegenerateConfigError(const std::string& message)
      : Error(ErrorCategory::kDegenerateConfig, message) {}
};

inline const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParse: return "parse-error";
    case ErrorCategory::kDuplicateId: return "duplicate-id";
    case ErrorCategory::kJoin: return "join-error";
    case ErrorCategory::kEmptyTable: return "empty-table";
    case ErrorCategory::kEmptyClass: return "empty-class";
    case ErrorCategory::kDomain: return "domain-error";
    case ErrorCategory::kShape: return "shape-error";
    case ErrorCategory::kDegenerateCosine: return "degenerate-cosine";
    case ErrorCategory::kDivergence: return "divergence";
    case ErrorCategory::kDegenerateConfig: return "degenerate-configuration";
    case ErrorCategory::kIo: return "io-error";
  }
  return "error";
}

}  // namespace teval

#endif  // TEVAL_ERROR_HPP
