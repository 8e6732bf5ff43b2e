// Copyright 2026 The greduce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
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

namespace greduce {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A trace whose decisions cannot be assembled into a well-nested tree.
struct MalformedTrace : Error {
  using Error::Error;
};

/// A removal labeling referencing a node that is not a removable unit.
struct InvalidLabel : Error {
  using Error::Error;
};

/// Syntactically broken trace/labeling document. Carries the byte offset
/// of the first offending position when known.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (byte " + std::to_string(offset) + ")"),
        byte_offset(offset) {}
  std::size_t byte_offset;
};

/// Structurally valid document that violates the schema (bad version,
/// unknown role, value outside its domain, ...).
struct SchemaError : Error {
  using Error::Error;
};

/// A generator callable failed (threw) during an execution.
struct GeneratorError : Error {
  using Error::Error;
};

/// A combinator was invoked on a context whose execution already returned.
struct ContextFinished : Error {
  using Error::Error;
};

/// Powerset search requested above the enumeration ceiling.
struct OracleTooLarge : Error {
  using Error::Error;
};

struct UnknownCase : Error {
  using Error::Error;
};

/// The original input does not satisfy the property to be preserved.
struct PropertyNotExhibited : Error {
  using Error::Error;
};

/// Session deadline reached; searches catch this and return best-so-far.
struct TimeoutExceeded : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace greduce
