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

#include "greduce/trace_io.hpp"

#include <openssl/evp.h>

#include <cstring>

#include <json.hpp>

namespace greduce {

namespace {

// nlohmann::json with the default std::map object container: keys come out
// sorted, and dump() emits no insignificant whitespace. That pair of
// properties is what makes the encoding canonical.
using Json = nlohmann::json;

Json scalar_to_json(const Scalar& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<std::string>(v);
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  throw SchemaError("value must be a bool, integer or string");
}

Json domain_to_json(const ChoiceDomain& d) {
  Json j;
  if (const auto* r = std::get_if<IntRange>(&d.kind)) {
    j["kind"] = "int_range";
    j["lo"] = r->lo;
    j["hi"] = r->hi;
  } else if (const auto* o = std::get_if<OneOf>(&d.kind)) {
    j["kind"] = "one_of";
    Json opts = Json::array();
    for (const Scalar& s : *o->options) opts.push_back(scalar_to_json(s));
    j["options"] = std::move(opts);
  } else {
    j["kind"] = "bool";
  }
  return j;
}

ChoiceDomain domain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("domain must be an object with a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "int_range") {
    if (!j.contains("lo") || !j.contains("hi") ||
        !j["lo"].is_number_integer() || !j["hi"].is_number_integer())
      throw SchemaError("int_range domain needs integer \"lo\" and \"hi\"");
    IntRange r{j["lo"].get<std::int64_t>(), j["hi"].get<std::int64_t>()};
    if (r.lo >= r.hi) throw SchemaError("int_range requires lo < hi");
    return ChoiceDomain{r};
  }
  if (kind == "one_of") {
    if (!j.contains("options") || !j["options"].is_array() ||
        j["options"].empty())
      throw SchemaError("one_of domain needs a non-empty \"options\" array");
    ScalarList options;
    for (const Json& e : j["options"]) options.push_back(scalar_from_json(e));
    return one_of(std::move(options));
  }
  if (kind == "bool") return bool_domain();
  throw SchemaError("unknown domain kind \"" + kind + "\"");
}

Json path_to_json(const ExecutionPath& p) {
  Json j = Json::array();
  for (const PathFrame& f : p.frames) j.push_back(Json::array({f.site, f.occurrence}));
  return j;
}

ExecutionPath path_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("path must be an array");
  ExecutionPath p;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_number_integer())
      throw SchemaError("path frames must be [site, occurrence] pairs");
    int occ = e[1].get<int>();
    if (occ < 0) throw SchemaError("path occurrence must be non-negative");
    p.frames.push_back(PathFrame{e[0].get<std::string>(), occ});
  }
  return p;
}

const char* role_name(Role r) {
  switch (r) {
    case Role::Plain: return "plain";
    case Role::LoopInit: return "loop_init";
    case Role::SelectInit: return "select_init";
  }
  return "plain";
}

Role role_from_name(const std::string& s) {
  if (s == "plain") return Role::Plain;
  if (s == "loop_init") return Role::LoopInit;
  if (s == "select_init") return Role::SelectInit;
  throw SchemaError("unknown role \"" + s + "\"");
}

}  // namespace

std::string serialize_trace(const Trace& trace) {
  Json j;
  j["version"] = kTraceFormatVersion;
  j["generator_id"] = trace.generator_id;
  j["seed"] = trace.seed;
  j["output_digest"] = trace.output_digest;
  Json ds = Json::array();
  for (const Decision& d : trace.decisions) {
    Json dj;
    dj["index"] = d.index;
    dj["site"] = d.site;
    dj["role"] = role_name(d.role);
    dj["domain"] = domain_to_json(d.domain);
    dj["value"] = scalar_to_json(d.value);
    dj["path"] = path_to_json(d.path);
    ds.push_back(std::move(dj));
  }
  j["decisions"] = std::move(ds);
  return j.dump();
}

Trace deserialize_trace(const std::string& bytes) {
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!j.is_object()) throw SchemaError("trace document must be an object");
  if (!j.contains("version") || !j["version"].is_string() ||
      j["version"].get<std::string>() != kTraceFormatVersion)
    throw SchemaError("unsupported trace version");
  for (const char* key : {"generator_id", "output_digest"}) {
    if (!j.contains(key) || !j[key].is_string())
      throw SchemaError(std::string("missing string field \"") + key + "\"");
  }
  if (!j.contains("seed") || !j["seed"].is_number())
    throw SchemaError("missing numeric field \"seed\"");
  if (!j.contains("decisions") || !j["decisions"].is_array())
    throw SchemaError("missing \"decisions\" array");

  Trace t;
  t.generator_id = j["generator_id"].get<std::string>();
  t.seed = j["seed"].get<std::uint64_t>();
  t.output_digest = j["output_digest"].get<std::string>();
  std::int64_t expect_index = 0;
  for (const Json& dj : j["decisions"]) {
    if (!dj.is_object()) throw SchemaError("decision entries must be objects");
    for (const char* key : {"index", "site", "role", "domain", "value", "path"}) {
      if (!dj.contains(key))
        throw SchemaError(std::string("decision missing field \"") + key + "\"");
    }
    Decision d;
    if (!dj["index"].is_number_integer())
      throw SchemaError("decision index must be an integer");
    d.index = dj["index"].get<std::int64_t>();
    if (d.index != expect_index++)
      throw SchemaError("decision indices must be 0..n-1 in order");
    if (!dj["site"].is_string()) throw SchemaError("site must be a string");
    d.site = dj["site"].get<std::string>();
    if (!dj["role"].is_string()) throw SchemaError("role must be a string");
    d.role = role_from_name(dj["role"].get<std::string>());
    d.domain = domain_from_json(dj["domain"]);
    d.value = scalar_from_json(dj["value"]);
    if (!d.domain.contains(d.value))
      throw SchemaError("decision " + std::to_string(d.index) +
                        " carries a value outside its domain");
    d.path = path_from_json(dj["path"]);
    if (d.path.frames.empty())
      throw SchemaError("decision " + std::to_string(d.index) +
                        " carries an empty path");
    t.decisions.push_back(std::move(d));
  }
  return t;
}

std::string serialize_labeling_positions(const std::vector<int>& positions) {
  Json j;
  j["version"] = kLabelingFormatVersion;
  j["removed_units"] = positions;
  return j.dump();
}

std::vector<int> deserialize_labeling_positions(const std::string& bytes) {
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("version") ||
      j["version"] != kLabelingFormatVersion)
    throw SchemaError("unsupported labeling version");
  if (!j.contains("removed_units") || !j["removed_units"].is_array())
    throw SchemaError("missing \"removed_units\" array");
  std::vector<int> out;
  for (const Json& e : j["removed_units"]) {
    if (!e.is_number_integer() || e.get<int>() < 0)
      throw SchemaError("removed_units entries must be non-negative integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::string input_digest_hex(const std::string& bytes) {
  // greduce-hash/1: two splitmix64-mixed lanes absorbing 8-byte
  // little-endian chunks (zero-padded tail), then the length.
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  std::uint64_t a = 0x9E3779B97F4A7C15ull;
  std::uint64_t b = 0xD1B54A32D192ED03ull;
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    std::uint64_t chunk;
    std::memcpy(&chunk, bytes.data() + i, 8);
    a = mix(a ^ chunk);
    b = mix(b + chunk);
  }
  std::uint64_t tail = 0;
  if (i < n) std::memcpy(&tail, bytes.data() + i, n - i);
  a = mix(a ^ tail);
  b = mix(b + tail);
  a = mix(a ^ static_cast<std::uint64_t>(n));
  b = mix(b + static_cast<std::uint64_t>(n));

  static const char* hex = "0123456789abcdef";
  std::string out(32, '0');
  for (size_t k = 0; k < 16; ++k) {
    std::uint64_t word = k < 8 ? a : b;
    unsigned byte = static_cast<unsigned>((word >> (8 * (k % 8))) & 0xff);
    out[2 * k] = hex[byte >> 4];
    out[2 * k + 1] = hex[byte & 0xf];
  }
  return out;
}

namespace {
// One fetched digest implementation and context per thread; re-fetching
// through the default provider on every call costs more than the hash.
struct DigestState {
  EVP_MD* md = EVP_MD_fetch(nullptr, "SHA2-256", nullptr);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~DigestState() {
    EVP_MD_CTX_free(ctx);
    EVP_MD_free(md);
  }
};
}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  thread_local DigestState state;
  EVP_DigestInit_ex(state.ctx, state.md, nullptr);
  EVP_DigestUpdate(state.ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(state.ctx, digest, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace greduce
