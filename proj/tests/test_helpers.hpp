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

#include <cstdint>
#include <set>
#include <vector>

#include "greduce/gen.hpp"
#include "greduce/trace.hpp"

namespace greduce::testing {

/// In-order decision walk of a tree, re-derived from the node structure
/// alone. Used as the independent side of tree/sequence duality checks.
inline void collect_in_order(const TraceTree& tree, NodeId id,
                             std::vector<std::int64_t>& out) {
  const Node& n = tree.node(id);
  switch (n.kind) {
    case NodeKind::Leaf:
      out.push_back(n.decision);
      return;
    case NodeKind::Loop:
    case NodeKind::Selection:
      out.push_back(n.decision);
      break;
    default:
      break;
  }
  for (NodeId c : n.children) collect_in_order(tree, c, out);
}

inline std::vector<std::int64_t> in_order_decisions(const TraceTree& tree) {
  std::vector<std::int64_t> out;
  collect_in_order(tree, 0, out);
  return out;
}

/// Independent closure oracle: a decision is removed iff some labeled
/// unit's path is a prefix of the decision's path. Unlike the production
/// closure this never consults the precomputed ancestor chains.
inline std::set<std::int64_t> closure_by_path_prefix(
    const TraceTree& tree, const RemovalLabeling& labeling) {
  std::set<std::int64_t> out;
  for (const Decision& d : tree.trace.decisions) {
    for (NodeId u : labeling.removed) {
      const ExecutionPath& up = tree.node(u).path;
      if (up.frames.size() <= d.path.frames.size() &&
          std::equal(up.frames.begin(), up.frames.end(), d.path.frames.begin())) {
        out.insert(d.index);
        break;
      }
    }
  }
  return out;
}

inline std::int64_t scalar_int(const Scalar& s) {
  return std::get<std::int64_t>(s);
}

}  // namespace greduce::testing
