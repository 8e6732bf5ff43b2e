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

#include <string>
#include <vector>

#include "greduce/trace.hpp"

namespace greduce {

inline constexpr const char* kTraceFormatVersion = "greduce-trace/1";
inline constexpr const char* kLabelingFormatVersion = "greduce-labeling/1";

/// Canonical byte form of a trace: JSON with sorted keys and no
/// insignificant whitespace, so serialize(deserialize(serialize(t))) is
/// byte-identical to serialize(t) and digests are stable.
std::string serialize_trace(const Trace& trace);

/// Parses a trace document. Throws ParseError (with a byte offset) on
/// malformed JSON and SchemaError on version/shape violations.
Trace deserialize_trace(const std::string& bytes);

/// Labeling documents store 0-based positions into the document-ordered
/// removable-unit sequence of a tree, which is stable across runs.
std::string serialize_labeling_positions(const std::vector<int>& positions);
std::vector<int> deserialize_labeling_positions(const std::string& bytes);

/// Hex SHA-256 of a byte string. Used for canonical trace bytes and
/// report digests.
std::string sha256_hex(const std::string& bytes);

/// Fast 128-bit content hash for generated-input digests and candidate
/// dedup keys. Fixed algorithm ("greduce-hash/1", see README) so digests
/// are portable: two splitmix64 lanes absorb the bytes in 8-byte
/// little-endian chunks, then the length.
std::string input_digest_hex(const std::string& bytes);

}  // namespace greduce
