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

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "greduce/error.hpp"

namespace greduce {

/// Stable label for one choice-issuing location in a generator. Two
/// decisions issued from the same generator location carry equal ids.
/// Labels starting with '<' are reserved for the engine's structural
/// frame markers.
using Site = std::string;

/// One scalar choice value: a bool, an integer, or a string.
using Scalar = std::variant<bool, std::int64_t, std::string>;

std::string scalar_to_string(const Scalar& v);

// ---------------------------------------------------------------------------
// Choice domains

struct IntRange {
  std::int64_t lo = 0;  // inclusive
  std::int64_t hi = 0;  // exclusive
  bool operator==(const IntRange&) const = default;
};

using ScalarList = std::vector<Scalar>;
/// Option lists are immutable once handed to the engine; sharing them
/// keeps recorded decisions from deep-copying the list per draw.
using SharedScalars = std::shared_ptr<const ScalarList>;

SharedScalars share_scalars(ScalarList options);

struct OneOf {
  SharedScalars options;  // non-null, non-empty; membership is by value

  bool operator==(const OneOf& o) const {
    return options == o.options || *options == *o.options;
  }
};

struct BoolDomain {
  bool operator==(const BoolDomain&) const = default;
};

struct ChoiceDomain {
  std::variant<IntRange, OneOf, BoolDomain> kind;

  bool operator==(const ChoiceDomain&) const = default;

  /// True iff v is a legal outcome of this domain.
  bool contains(const Scalar& v) const;
};

ChoiceDomain int_range(std::int64_t lo, std::int64_t hi);
ChoiceDomain one_of(ScalarList options);
ChoiceDomain one_of(SharedScalars options);
ChoiceDomain bool_domain();

// ---------------------------------------------------------------------------
// Execution paths

/// One step of an execution path. `occurrence` is the 1-based ordinal of
/// this entry among all entries (decision points and construct entries)
/// of its parent frame, so the paths of one execution are totally ordered.
struct PathFrame {
  Site site;
  int occurrence = 0;
  bool operator==(const PathFrame&) const = default;
};

/// Frames from the root to a decision point or structural node. A
/// decision's path strictly extends the path of its enclosing structural
/// node. Inline capacity covers the nesting depth of typical generators,
/// keeping per-decision recording allocation-free.
using PathFrames = boost::container::small_vector<PathFrame, 4>;

struct ExecutionPath {
  PathFrames frames;
  bool operator==(const ExecutionPath&) const = default;

  ExecutionPath child(Site site, int occurrence) const;
};

enum class PathOrder { Before, Equal, After, Divergent };

/// Document order between two paths. Paths of one execution compare
/// Before/After/Equal; Divergent arises only between branches of different
/// executions, where the same entry slot was taken by different sites.
PathOrder path_compare(const ExecutionPath& a, const ExecutionPath& b);

// Reserved frame markers used under loop and selection entries.
inline constexpr const char* kInitMarker = "<init>";
inline constexpr const char* kIterMarker = "<iter>";
inline constexpr const char* kBlockMarker = "<block>";

// ---------------------------------------------------------------------------
// Decisions and traces

enum class Role { Plain, LoopInit, SelectInit };

/// One recorded random choice.
struct Decision {
  std::int64_t index = 0;  // 0-based position in the trace
  Site site;
  ChoiceDomain domain;
  Scalar value;
  ExecutionPath path;
  Role role = Role::Plain;

  bool operator==(const Decision&) const = default;
};

/// The decision sequence of one generator execution, in execution order.
struct Trace {
  std::string generator_id;
  std::uint64_t seed = 0;
  std::string output_digest;  // hash of the generated input serialization
  std::vector<Decision> decisions;

  bool operator==(const Trace&) const = default;
};

// ---------------------------------------------------------------------------
// Trace trees

enum class NodeKind { Root, Loop, Iteration, Selection, Block, Leaf };

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct Node {
  NodeKind kind = NodeKind::Root;
  NodeId id = kNoNode;
  NodeId parent = kNoNode;
  /// Decision backing this node: the init decision for Loop/Selection,
  /// the leaf decision for Leaf, -1 otherwise.
  std::int64_t decision = -1;
  /// 1-based position among the iterations of the owning loop.
  int ordinal = 0;
  ExecutionPath path;  // structural path; empty for the root
  std::vector<NodeId> children;  // document order
};

/// Hierarchical view of a trace: loops, iterations, selections, blocks and
/// leaf decisions. Owns a copy of the source trace; nodes reference
/// decisions by index.
struct TraceTree {
  Trace trace;
  std::vector<Node> nodes;  // nodes[0] is the root

  const Node& root() const { return nodes[0]; }
  const Node& node(NodeId id) const { return nodes[static_cast<size_t>(id)]; }

  /// Innermost removable unit (Iteration or Block) enclosing a decision,
  /// or kNoNode.
  NodeId innermost_unit(std::int64_t decision_index) const;

  /// Removable-unit ancestors of a decision, innermost first.
  const std::vector<NodeId>& unit_chain(std::int64_t decision_index) const;

  /// Node that owns a decision: its Leaf, or the Loop/Selection it
  /// initializes.
  NodeId owner_node(std::int64_t decision_index) const;

  /// Depth of a removable unit counted over removable nodes only
  /// (a top-level iteration/block has level 1).
  int unit_level(NodeId unit) const;

  /// Last decision index inside a node's subtree (inclusive), or
  /// one before the node's first decision if the subtree is empty.
  std::int64_t subtree_last_decision(NodeId id) const;

 private:
  friend TraceTree build_trace_tree(const Trace& trace);
  std::vector<std::vector<NodeId>> unit_chains_;  // per decision
  std::vector<NodeId> owner_;                     // per decision
};

/// Set of removable units (Iteration/Block nodes) marked removed. Removal
/// of a node implies removal of everything beneath it; only the explicit
/// set is stored.
struct RemovalLabeling {
  std::set<NodeId> removed;

  bool operator==(const RemovalLabeling&) const = default;
  bool contains(NodeId id) const { return removed.count(id) != 0; }
};

/// A reduced trace: the tree plus a removal labeling.
struct ReducedTrace {
  const TraceTree* tree = nullptr;
  RemovalLabeling labeling;
};

// ---------------------------------------------------------------------------
// Operations

/// Assembles the hierarchical tree of a trace. Throws MalformedTrace when
/// the decisions' paths and roles are not consistent with a well-nested
/// execution (e.g. a loop init of value n but an iteration frame beyond n).
TraceTree build_trace_tree(const Trace& trace);

/// All Iteration and Block nodes of the tree, in document order.
std::vector<NodeId> removable_units(const TraceTree& tree);

/// Indices of every decision removed by the labeling, i.e. decisions under
/// any labeled node, transitively. Throws InvalidLabel when the labeling
/// references a node that is not an Iteration/Block of this tree.
std::set<std::int64_t> removal_closure(const TraceTree& tree,
                                       const RemovalLabeling& labeling);

/// True when `unit` or one of its removable ancestors is labeled.
bool unit_removed(const TraceTree& tree, const RemovalLabeling& labeling,
                  NodeId unit);

/// Validates labeling refs (InvalidLabel on a non-unit reference).
void validate_labeling(const TraceTree& tree, const RemovalLabeling& labeling);

}  // namespace greduce
