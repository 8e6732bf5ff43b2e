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

#include "greduce/trace.hpp"

#include <algorithm>
#include <unordered_map>

namespace greduce {

std::string scalar_to_string(const Scalar& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<std::int64_t>(v))
    return std::to_string(std::get<std::int64_t>(v));
  return std::get<std::string>(v);
}

SharedScalars share_scalars(ScalarList options) {
  return std::make_shared<const ScalarList>(std::move(options));
}

bool ChoiceDomain::contains(const Scalar& v) const {
  if (const auto* r = std::get_if<IntRange>(&kind)) {
    const auto* i = std::get_if<std::int64_t>(&v);
    return i != nullptr && r->lo <= *i && *i < r->hi;
  }
  if (const auto* o = std::get_if<OneOf>(&kind)) {
    return std::find(o->options->begin(), o->options->end(), v) !=
           o->options->end();
  }
  return std::holds_alternative<bool>(v);
}

ChoiceDomain int_range(std::int64_t lo, std::int64_t hi) {
  return ChoiceDomain{IntRange{lo, hi}};
}

ChoiceDomain one_of(ScalarList options) {
  return ChoiceDomain{OneOf{share_scalars(std::move(options))}};
}

ChoiceDomain one_of(SharedScalars options) {
  return ChoiceDomain{OneOf{std::move(options)}};
}

ChoiceDomain bool_domain() { return ChoiceDomain{BoolDomain{}}; }

ExecutionPath ExecutionPath::child(Site site, int occurrence) const {
  ExecutionPath out;
  out.frames.reserve(frames.size() + 1);
  out.frames = frames;
  out.frames.push_back(PathFrame{std::move(site), occurrence});
  return out;
}

PathOrder path_compare(const ExecutionPath& a, const ExecutionPath& b) {
  const size_t n = std::min(a.frames.size(), b.frames.size());
  for (size_t i = 0; i < n; ++i) {
    const PathFrame& fa = a.frames[i];
    const PathFrame& fb = b.frames[i];
    if (fa.occurrence != fb.occurrence)
      return fa.occurrence < fb.occurrence ? PathOrder::Before
                                           : PathOrder::After;
    if (fa.site != fb.site) return PathOrder::Divergent;
  }
  if (a.frames.size() == b.frames.size()) return PathOrder::Equal;
  // A strict prefix is an ancestor; pre-order puts it first.
  return a.frames.size() < b.frames.size() ? PathOrder::Before
                                           : PathOrder::After;
}

// ---------------------------------------------------------------------------
// Tree construction

namespace {

struct Builder {
  const Trace& trace;
  TraceTree tree;
  // For each structural node: next expected entry ordinal and a lookup of
  // structural children by frame.
  std::vector<int> next_entry;
  std::vector<std::unordered_map<std::string, NodeId>> frame_index;

  explicit Builder(const Trace& t) : trace(t) {}

  static std::string frame_key(const PathFrame& f) {
    return f.site + "#" + std::to_string(f.occurrence);
  }

  NodeId add_node(NodeKind kind, NodeId parent, ExecutionPath path) {
    NodeId id = static_cast<NodeId>(tree.nodes.size());
    Node n;
    n.kind = kind;
    n.id = id;
    n.parent = parent;
    n.path = std::move(path);
    tree.nodes.push_back(std::move(n));
    next_entry.push_back(1);
    frame_index.emplace_back();
    if (parent != kNoNode) {
      tree.nodes[static_cast<size_t>(parent)].children.push_back(id);
      if (kind != NodeKind::Leaf) {
        frame_index[static_cast<size_t>(parent)]
                   [frame_key(tree.nodes[static_cast<size_t>(id)].path.frames.back())] = id;
      }
    }
    return id;
  }

  [[noreturn]] void fail(const Decision& d, const std::string& why) {
    throw MalformedTrace("decision " + std::to_string(d.index) + ": " + why);
  }

  // Walks the first `prefix_len` frames of a decision path. Those frames
  // must all have been created by prior decisions.
  NodeId navigate(const Decision& d, size_t prefix_len) {
    NodeId cur = 0;
    for (size_t i = 0; i < prefix_len; ++i) {
      const auto& fi = frame_index[static_cast<size_t>(cur)];
      auto it = fi.find(frame_key(d.path.frames[i]));
      if (it == fi.end()) fail(d, "path frame not entered by any prior decision");
      cur = it->second;
    }
    return cur;
  }

  void consume_entry(NodeId at, const Decision& d, const PathFrame& f) {
    int expect = next_entry[static_cast<size_t>(at)]++;
    if (f.occurrence != expect)
      fail(d, "entry ordinal " + std::to_string(f.occurrence) +
                  " where " + std::to_string(expect) + " was expected");
  }

  void add_plain(const Decision& d, NodeId parent) {
    const PathFrame& last = d.path.frames.back();
    if (!last.site.empty() && last.site[0] == '<')
      fail(d, "plain decision at a reserved frame marker");
    if (last.site != d.site) fail(d, "path tip does not carry the decision site");
    const Node& pn = tree.nodes[static_cast<size_t>(parent)];
    if (pn.kind == NodeKind::Loop || pn.kind == NodeKind::Selection)
      fail(d, "plain decision directly under a loop or selection");
    consume_entry(parent, d, last);
    NodeId leaf = add_node(NodeKind::Leaf, parent, d.path);
    tree.nodes[static_cast<size_t>(leaf)].decision = d.index;
  }

  void add_loop(const Decision& d, NodeId parent) {
    if (d.path.frames.size() < 2) fail(d, "loop init without a loop frame");
    const PathFrame& init = d.path.frames.back();
    const PathFrame& loop = d.path.frames[d.path.frames.size() - 2];
    if (init.site != kInitMarker || init.occurrence != 1)
      fail(d, "loop init must sit at the loop's first entry");
    if (loop.site != d.site) fail(d, "loop frame does not carry the init site");
    const auto* range = std::get_if<IntRange>(&d.domain.kind);
    if (range == nullptr || range->lo != 0)
      fail(d, "loop init domain must be an integer range starting at 0");
    const auto* n = std::get_if<std::int64_t>(&d.value);
    if (n == nullptr || *n < 0 || *n >= range->hi)
      fail(d, "loop init value outside its domain");

    // The parent must hold the loop frame as its next entry; the prefix
    // walk could not have created it because only inits introduce loops.
    NodeId grand = parent;
    ExecutionPath loop_path = d.path;
    loop_path.frames.pop_back();
    consume_entry(grand, d, loop);
    NodeId loop_id = add_node(NodeKind::Loop, grand, loop_path);
    tree.nodes[static_cast<size_t>(loop_id)].decision = d.index;
    next_entry[static_cast<size_t>(loop_id)] = 2;  // entry 1 is the init
    for (std::int64_t k = 1; k <= *n; ++k) {
      NodeId it = add_node(NodeKind::Iteration, loop_id,
                           loop_path.child(kIterMarker, static_cast<int>(k) + 1));
      tree.nodes[static_cast<size_t>(it)].ordinal = static_cast<int>(k);
    }
  }

  void add_selection(const Decision& d, NodeId parent) {
    if (d.path.frames.size() < 2) fail(d, "selection init without a frame");
    const PathFrame& init = d.path.frames.back();
    const PathFrame& sel = d.path.frames[d.path.frames.size() - 2];
    if (init.site != kInitMarker || init.occurrence != 1)
      fail(d, "selection init must sit at the selection's first entry");
    if (sel.site != d.site) fail(d, "selection frame does not carry the init site");
    if (!std::holds_alternative<BoolDomain>(d.domain.kind))
      fail(d, "selection init domain must be boolean");
    const auto* b = std::get_if<bool>(&d.value);
    if (b == nullptr) fail(d, "selection init value must be boolean");

    ExecutionPath sel_path = d.path;
    sel_path.frames.pop_back();
    consume_entry(parent, d, sel);
    NodeId sel_id = add_node(NodeKind::Selection, parent, sel_path);
    tree.nodes[static_cast<size_t>(sel_id)].decision = d.index;
    next_entry[static_cast<size_t>(sel_id)] = 2;
    if (*b) add_node(NodeKind::Block, sel_id, sel_path.child(kBlockMarker, 2));
  }

  TraceTree build() {
    tree.trace = trace;
    add_node(NodeKind::Root, kNoNode, ExecutionPath{});
    const Decision* prev = nullptr;
    for (const Decision& d : trace.decisions) {
      if (d.path.frames.empty()) fail(d, "empty path");
      if (!d.domain.contains(d.value)) fail(d, "value outside its domain");
      if (prev != nullptr &&
          path_compare(prev->path, d.path) != PathOrder::Before)
        fail(d, "paths do not strictly increase in document order");
      // Plain decisions are leaves of an existing frame; inits arrive
      // before the construct frame they introduce exists.
      size_t prefix = d.path.frames.size() - 1;
      if (d.role != Role::Plain) {
        if (d.path.frames.size() < 2) fail(d, "init decision without a construct frame");
        prefix = d.path.frames.size() - 2;
      }
      NodeId parent = navigate(d, prefix);
      switch (d.role) {
        case Role::Plain: add_plain(d, parent); break;
        case Role::LoopInit: add_loop(d, parent); break;
        case Role::SelectInit: add_selection(d, parent); break;
      }
      prev = &d;
    }
    return std::move(tree);
  }
};

}  // namespace

TraceTree build_trace_tree(const Trace& trace) {
  for (size_t i = 0; i < trace.decisions.size(); ++i) {
    if (trace.decisions[i].index != static_cast<std::int64_t>(i))
      throw MalformedTrace("decision indices are not 0..n-1 in order");
  }
  Builder b(trace);
  TraceTree tree = b.build();

  // Decision-to-node indexes used by closures and the alignment engine.
  const size_t n = tree.trace.decisions.size();
  tree.owner_.assign(n, kNoNode);
  tree.unit_chains_.assign(n, {});
  for (const Node& node : tree.nodes) {
    if (node.decision >= 0)
      tree.owner_[static_cast<size_t>(node.decision)] = node.id;
  }
  for (size_t i = 0; i < n; ++i) {
    std::vector<NodeId>& chain = tree.unit_chains_[i];
    for (NodeId cur = tree.owner_[i]; cur != kNoNode;
         cur = tree.nodes[static_cast<size_t>(cur)].parent) {
      NodeKind k = tree.nodes[static_cast<size_t>(cur)].kind;
      if (k == NodeKind::Iteration || k == NodeKind::Block)
        chain.push_back(cur);
    }
  }
  return tree;
}

NodeId TraceTree::innermost_unit(std::int64_t decision_index) const {
  const auto& chain = unit_chain(decision_index);
  return chain.empty() ? kNoNode : chain.front();
}

const std::vector<NodeId>& TraceTree::unit_chain(
    std::int64_t decision_index) const {
  return unit_chains_[static_cast<size_t>(decision_index)];
}

NodeId TraceTree::owner_node(std::int64_t decision_index) const {
  return owner_[static_cast<size_t>(decision_index)];
}

int TraceTree::unit_level(NodeId unit) const {
  int level = 0;
  for (NodeId cur = unit; cur != kNoNode;
       cur = nodes[static_cast<size_t>(cur)].parent) {
    NodeKind k = nodes[static_cast<size_t>(cur)].kind;
    if (k == NodeKind::Iteration || k == NodeKind::Block) ++level;
  }
  return level;
}

std::int64_t TraceTree::subtree_last_decision(NodeId id) const {
  const Node& n = node(id);
  std::int64_t last = n.decision;  // -1 for iterations/blocks/root
  for (NodeId c : n.children) last = std::max(last, subtree_last_decision(c));
  return last;
}

std::vector<NodeId> removable_units(const TraceTree& tree) {
  std::vector<NodeId> out;
  // Node ids are assigned during an in-order build, but iterations of a
  // loop are created eagerly at the init; walk the tree to get document
  // order.
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    const Node& n = tree.node(cur);
    if (n.kind == NodeKind::Iteration || n.kind == NodeKind::Block)
      out.push_back(cur);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

void validate_labeling(const TraceTree& tree, const RemovalLabeling& labeling) {
  for (NodeId id : labeling.removed) {
    if (id < 0 || static_cast<size_t>(id) >= tree.nodes.size())
      throw InvalidLabel("labeled node " + std::to_string(id) +
                         " is not part of this tree");
    NodeKind k = tree.node(id).kind;
    if (k != NodeKind::Iteration && k != NodeKind::Block)
      throw InvalidLabel("labeled node " + std::to_string(id) +
                         " is not an iteration or block");
  }
}

std::set<std::int64_t> removal_closure(const TraceTree& tree,
                                       const RemovalLabeling& labeling) {
  validate_labeling(tree, labeling);
  std::set<std::int64_t> out;
  for (size_t i = 0; i < tree.trace.decisions.size(); ++i) {
    for (NodeId u : tree.unit_chain(static_cast<std::int64_t>(i))) {
      if (labeling.contains(u)) {
        out.insert(static_cast<std::int64_t>(i));
        break;
      }
    }
  }
  return out;
}

bool unit_removed(const TraceTree& tree, const RemovalLabeling& labeling,
                  NodeId unit) {
  for (NodeId cur = unit; cur != kNoNode;
       cur = tree.node(cur).parent) {
    NodeKind k = tree.node(cur).kind;
    if ((k == NodeKind::Iteration || k == NodeKind::Block) &&
        labeling.contains(cur))
      return true;
  }
  return false;
}

}  // namespace greduce
