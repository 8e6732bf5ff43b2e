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

#include "greduce/gen.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "greduce/prng.hpp"
#include "greduce/trace_io.hpp"

namespace greduce {

std::string size_to_string(const SizeMeasure& s) {
  if (s.kind == SizeMeasure::Kind::Scalar) return std::to_string(s.a);
  return "(" + std::to_string(s.a) + ", " + std::to_string(s.b) + ")";
}

const char* strategy_name(AlignmentStrategy s) {
  switch (s) {
    case AlignmentStrategy::Halt: return "halt";
    case AlignmentStrategy::Bypass: return "bypass";
    case AlignmentStrategy::Realign: return "realign";
  }
  return "halt";
}

int ReexecOutcome::prog_mismatches() const {
  return static_cast<int>(std::count_if(events.begin(), events.end(), [](const auto& e) {
    return e.kind == MisalignmentKind::ProgMismatch;
  }));
}

int ReexecOutcome::dec_mismatches() const {
  return static_cast<int>(std::count_if(events.begin(), events.end(), [](const auto& e) {
    return e.kind == MisalignmentKind::DecMismatch;
  }));
}

void GenContext::check_site(const Site& site) {
  if (site.empty()) throw GeneratorError("empty site label");
  if (site[0] == '<')
    throw GeneratorError("site label \"" + site +
                         "\" uses the reserved '<' prefix");
}

namespace {

constexpr int kSigInt = 0, kSigFrom = 1, kSigRepeat = 2, kSigMaybe = 3;

// ---------------------------------------------------------------------------
// Recording

class RecordContext final : public GenContext {
 public:
  explicit RecordContext(std::uint64_t seed) : prng_(seed) {
    stack_.push_back(Frame{ExecutionPath{}, 1, {}, true});
    decisions_.reserve(16);
  }

  std::int64_t choose_int(const Site& site, std::int64_t lo,
                          std::int64_t hi) override {
    pre(site, kSigInt);
    if (lo >= hi) throw GeneratorError("choose_int requires lo < hi");
    Frame& f = stack_.back();
    std::int64_t v =
        lo + static_cast<std::int64_t>(prng_.below(static_cast<std::uint64_t>(hi - lo)));
    Decision& d = append(site, f, Role::Plain);
    d.domain.kind = IntRange{lo, hi};
    d.value = v;
    return v;
  }

  Scalar choose_from(const Site& site, const SharedScalars& options) override {
    pre(site, kSigFrom);
    if (options == nullptr || options->empty())
      throw GeneratorError("choose_from requires options");
    Frame& f = stack_.back();
    Scalar v = (*options)[prng_.below(options->size())];
    Decision& d = append(site, f, Role::Plain);
    d.domain.kind = OneOf{options};
    d.value = v;
    return v;
  }

  int repeat(const Site& site, std::int64_t max,
             const std::function<void(GenContext&, int)>& body) override {
    pre(site, kSigRepeat);
    if (max < 1) throw GeneratorError("repeat requires max >= 1");
    Frame& f = stack_.back();
    ExecutionPath loop_path = f.path.child(site, f.next_entry++);
    int n = static_cast<int>(prng_.below(static_cast<std::uint64_t>(max)));
    {
      Decision& d = append_at(site, loop_path, kInitMarker, 1, Role::LoopInit);
      d.domain.kind = IntRange{0, max};
      d.value = static_cast<std::int64_t>(n);
    }
    if (n == 0) return 0;
    // One reused frame: iterations run the same body, so the duplicate-site
    // screen only needs the first pass.
    stack_.push_back(Frame{loop_path.child(kIterMarker, 2), 1, {}, true});
    for (int i = 1; i <= n; ++i) {
      Frame& iter = stack_.back();
      iter.path.frames.back().occurrence = i + 1;
      iter.next_entry = 1;
      iter.check_sites = i == 1;
      body(*this, i);
    }
    stack_.pop_back();
    return n;
  }

  bool maybe(const Site& site,
             const std::function<void(GenContext&)>& body) override {
    pre(site, kSigMaybe);
    Frame& f = stack_.back();
    ExecutionPath sel_path = f.path.child(site, f.next_entry++);
    bool b = prng_.coin();
    {
      Decision& d = append_at(site, sel_path, kInitMarker, 1, Role::SelectInit);
      d.domain.kind = BoolDomain{};
      d.value = b;
    }
    if (b) {
      stack_.push_back(Frame{sel_path.child(kBlockMarker, 2), 1, {}, true});
      body(*this);
      stack_.pop_back();
    }
    return b;
  }

  std::vector<Decision> take_decisions() {
    finished_ = true;
    return std::move(decisions_);
  }

 private:
  struct Frame {
    ExecutionPath path;
    int next_entry = 1;
    // Same site used by two different combinators within one frame is a
    // generator-authoring mistake; screened while recording.
    boost::container::small_vector<std::pair<Site, int>, 4> sigs;
    bool check_sites = true;
  };

  void pre(const Site& site, int sig) {
    check_site(site);
    if (finished_) throw ContextFinished("combinator called after the generator returned");
    Frame& f = stack_.back();
    if (!f.check_sites) return;
    for (const auto& [s, k] : f.sigs) {
      if (s == site) {
        if (k != sig)
          throw GeneratorError("site \"" + site +
                               "\" is shared by two different combinators "
                               "within one frame");
        return;
      }
    }
    f.sigs.emplace_back(site, sig);
  }

  // Appends a decision in place: one frames copy, no path moves.
  Decision& append(const Site& site, Frame& f, Role role) {
    Decision& d = decisions_.emplace_back();
    d.index = static_cast<std::int64_t>(decisions_.size()) - 1;
    d.site = site;
    d.role = role;
    d.path.frames = f.path.frames;
    d.path.frames.emplace_back(PathFrame{site, f.next_entry++});
    return d;
  }

  Decision& append_at(const Site& site, const ExecutionPath& base,
                      const char* marker, int occurrence, Role role) {
    Decision& d = decisions_.emplace_back();
    d.index = static_cast<std::int64_t>(decisions_.size()) - 1;
    d.site = site;
    d.role = role;
    d.path.frames = base.frames;
    d.path.frames.emplace_back(PathFrame{marker, occurrence});
    return d;
  }

  SplitMix64 prng_;
  std::vector<Decision> decisions_;
  std::deque<Frame> stack_;
  bool finished_ = false;
};

// ---------------------------------------------------------------------------
// Bare execution (no recording; overhead baseline)

class BareContext final : public GenContext {
 public:
  explicit BareContext(std::uint64_t seed) : prng_(seed) {}

  std::int64_t choose_int(const Site& site, std::int64_t lo,
                          std::int64_t hi) override {
    check_site(site);
    if (lo >= hi) throw GeneratorError("choose_int requires lo < hi");
    return lo + static_cast<std::int64_t>(
                    prng_.below(static_cast<std::uint64_t>(hi - lo)));
  }

  Scalar choose_from(const Site& site, const SharedScalars& options) override {
    check_site(site);
    if (options == nullptr || options->empty())
      throw GeneratorError("choose_from requires options");
    return (*options)[prng_.below(options->size())];
  }

  int repeat(const Site& site, std::int64_t max,
             const std::function<void(GenContext&, int)>& body) override {
    check_site(site);
    if (max < 1) throw GeneratorError("repeat requires max >= 1");
    int n = static_cast<int>(prng_.below(static_cast<std::uint64_t>(max)));
    for (int i = 1; i <= n; ++i) body(*this, i);
    return n;
  }

  bool maybe(const Site& site,
             const std::function<void(GenContext&)>& body) override {
    check_site(site);
    bool b = prng_.coin();
    if (b) body(*this);
    return b;
  }

 private:
  SplitMix64 prng_;
};

// ---------------------------------------------------------------------------
// Trace-aligned re-execution

// Unwind tokens. Deliberately not derived from std::exception so that
// generator-side handlers for ordinary errors do not swallow them.
struct HaltUnwind {};
struct BypassUnwind {
  NodeId unit;
};

class AlignContext final : public GenContext {
 public:
  AlignContext(const TraceTree& tree, RemovalLabeling requested,
               AlignmentStrategy strategy, std::uint64_t realign_seed, int cap)
      : tree_(tree),
        effective_(std::move(requested)),
        strategy_(strategy),
        realign_(realign_seed),
        cap_(cap) {
    stack_.push_back(Frame{0, ExecutionPath{}, 1, 0});
  }

  std::int64_t choose_int(const Site& site, std::int64_t lo,
                          std::int64_t hi) override {
    pre(site);
    if (lo >= hi) throw GeneratorError("choose_int requires lo < hi");
    Frame& f = stack_.back();
    int entry = f.next_entry++;
    ExecutionPath live = f.live_path.child(site, entry);
    std::int64_t v;
    if (f.rec == kNoNode) {
      v = fresh_int(lo, hi);
    } else {
      ChoiceDomain dom = int_range(lo, hi);
      Match m = match(rec_path(f).child(site, entry), Role::Plain, site, &dom);
      v = m.fresh ? fresh_int(lo, hi)
                  : std::get<std::int64_t>(decision(m.index).value);
    }
    fresh_.push_back(
        Decision{0, site, int_range(lo, hi), v, std::move(live), Role::Plain});
    return v;
  }

  Scalar choose_from(const Site& site, const SharedScalars& options) override {
    pre(site);
    if (options == nullptr || options->empty())
      throw GeneratorError("choose_from requires options");
    Frame& f = stack_.back();
    int entry = f.next_entry++;
    ExecutionPath live = f.live_path.child(site, entry);
    Scalar v;
    ChoiceDomain dom = one_of(options);
    if (f.rec == kNoNode) {
      v = (*options)[realign_.below(options->size())];
    } else {
      Match m = match(rec_path(f).child(site, entry), Role::Plain, site, &dom);
      v = m.fresh ? (*options)[realign_.below(options->size())]
                  : decision(m.index).value;
      assert(dom.contains(v));
    }
    fresh_.push_back(
        Decision{0, site, std::move(dom), v, std::move(live), Role::Plain});
    return v;
  }

  int repeat(const Site& site, std::int64_t max,
             const std::function<void(GenContext&, int)>& body) override {
    pre(site);
    if (max < 1) throw GeneratorError("repeat requires max >= 1");
    Frame& f = stack_.back();
    int entry = f.next_entry++;
    ExecutionPath loop_live = f.live_path.child(site, entry);

    if (f.rec == kNoNode) return free_loop(site, max, body, loop_live);

    ExecutionPath init_rec = rec_path(f).child(site, entry).child(kInitMarker, 1);
    Match m = match(init_rec, Role::LoopInit, site, nullptr);
    if (m.fresh) return free_loop(site, max, body, loop_live);

    const NodeId loop_node = tree_.owner_node(m.index);
    const size_t init_pos = fresh_.size();
    fresh_.push_back(Decision{0, site, int_range(0, max),
                              static_cast<std::int64_t>(0),
                              loop_live.child(kInitMarker, 1), Role::LoopInit});

    size_t scan = 0;
    int live_i = 0;
    for (;;) {
      NodeId iter = next_kept_iteration(loop_node, scan);
      if (iter == kNoNode) break;
      if (static_cast<std::int64_t>(live_i) + 1 >= max) {
        // The live loop is out of capacity: running this kept iteration
        // would push the executed count outside [0, max).
        if (!over_capacity(init_rec, iter)) break;
        continue;  // iteration bypassed; look at the next one
      }
      ++live_i;
      stack_.push_back(Frame{iter, loop_live.child(kIterMarker, live_i + 1), 1,
                             fresh_.size()});
      try {
        body(*this, live_i);
      } catch (BypassUnwind& u) {
        if (u.unit == iter) {
          // The recorded counterpart of the running iteration was struck;
          // abandon the live iteration and move to the next kept one.
          fresh_.resize(stack_.back().fresh_mark);
          stack_.pop_back();
          --live_i;
          continue;
        }
        stack_.pop_back();
        throw;
      }
      stack_.pop_back();
    }
    fresh_[init_pos].value = static_cast<std::int64_t>(live_i);
    return live_i;
  }

  bool maybe(const Site& site,
             const std::function<void(GenContext&)>& body) override {
    pre(site);
    Frame& f = stack_.back();
    int entry = f.next_entry++;
    ExecutionPath sel_live = f.live_path.child(site, entry);

    if (f.rec == kNoNode) return free_maybe(site, body, sel_live);

    ExecutionPath init_rec = rec_path(f).child(site, entry).child(kInitMarker, 1);
    Match m = match(init_rec, Role::SelectInit, site, nullptr);
    if (m.fresh) return free_maybe(site, body, sel_live);

    const NodeId sel_node = tree_.owner_node(m.index);
    const bool recorded = std::get<bool>(decision(m.index).value);
    const Node& sn = tree_.node(sel_node);
    const NodeId block = sn.children.empty() ? kNoNode : sn.children[0];
    if (!recorded || block == kNoNode || removed(block)) {
      // Either the recording skipped the block, or the block is labeled
      // removed: the re-execution serves false.
      push_select(site, false, sel_live);
      return false;
    }
    const size_t init_pos = fresh_.size();
    push_select(site, true, sel_live);
    stack_.push_back(Frame{block, sel_live.child(kBlockMarker, 2), 1, fresh_.size()});
    try {
      body(*this);
    } catch (BypassUnwind& u) {
      if (u.unit == block) {
        // Struck mid-block: drop the block's fresh decisions and flip the
        // selection to false.
        stack_.pop_back();
        fresh_.resize(init_pos);
        push_select(site, false, sel_live);
        return false;
      }
      stack_.pop_back();
      throw;
    }
    stack_.pop_back();
    return true;
  }

  ReexecOutcome finish(GeneratedInput input) {
    finished_ = true;
    ReexecOutcome out;
    out.status = ReexecOutcome::Status::Completed;
    out.input = std::move(input);
    out.effective_labeling = effective_;
    out.events = std::move(events_);
    Trace t;
    t.generator_id = tree_.trace.generator_id;
    t.seed = 0;
    t.output_digest = input_digest_hex(out.input.text);
    t.decisions = std::move(fresh_);
    for (size_t i = 0; i < t.decisions.size(); ++i)
      t.decisions[i].index = static_cast<std::int64_t>(i);
    out.trace = std::move(t);
    return out;
  }

  ReexecOutcome halted() {
    finished_ = true;
    ReexecOutcome out;
    out.status = ReexecOutcome::Status::Halted;
    out.effective_labeling = effective_;
    out.events = std::move(events_);
    return out;
  }

 private:
  struct Frame {
    NodeId rec;  // recorded counterpart; kNoNode while re-aligned free
    ExecutionPath live_path;
    int next_entry = 1;
    size_t fresh_mark = 0;
  };

  struct Match {
    bool fresh = false;
    std::int64_t index = -1;
  };

  const Decision& decision(std::int64_t i) const {
    return tree_.trace.decisions[static_cast<size_t>(i)];
  }

  const ExecutionPath& rec_path(const Frame& f) const {
    return tree_.node(f.rec).path;
  }

  void pre(const Site& site) {
    check_site(site);
    if (finished_) throw ContextFinished("combinator called after the generator returned");
  }

  bool removed(NodeId unit) const {
    return unit_removed(tree_, effective_, unit);
  }

  bool decision_removed(size_t i) const {
    for (NodeId u : tree_.unit_chain(static_cast<std::int64_t>(i)))
      if (effective_.contains(u)) return true;
    return false;
  }

  std::int64_t peek_kept() {
    const size_t n = tree_.trace.decisions.size();
    while (cursor_ < n && decision_removed(cursor_)) ++cursor_;
    return cursor_ < n ? static_cast<std::int64_t>(cursor_) : -1;
  }

  std::int64_t fresh_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    realign_.below(static_cast<std::uint64_t>(hi - lo)));
  }

  void push_select(const Site& site, bool value, const ExecutionPath& sel_live) {
    fresh_.push_back(Decision{0, site, bool_domain(), value,
                              sel_live.child(kInitMarker, 1), Role::SelectInit});
  }

  NodeId next_kept_iteration(NodeId loop_node, size_t& scan) {
    const Node& ln = tree_.node(loop_node);
    while (scan < ln.children.size()) {
      NodeId cand = ln.children[scan++];
      if (!removed(cand)) return cand;
    }
    return kNoNode;
  }

  bool unit_on_live_ancestry(NodeId unit) const {
    for (NodeId cur = stack_.back().rec; cur != kNoNode;
         cur = tree_.node(cur).parent) {
      if (cur == unit) return true;
    }
    return false;
  }

  void log(const ExecutionPath& at, MisalignmentKind kind,
           MisalignmentEvent::Action action, NodeId unit = kNoNode) {
    events_.push_back(MisalignmentEvent{at, kind, action, unit});
  }

  // Core request-to-cursor matching. Returns the matched kept decision
  // (cursor advanced past it) or a fresh-value instruction under Realign.
  // Throws HaltUnwind / BypassUnwind per the strategy.
  Match match(const ExecutionPath& expect, Role want_role, const Site& site,
              const ChoiceDomain* live_domain) {
    for (;;) {
      if (strategy_ == AlignmentStrategy::Realign) {
        // After divergence, recorded decisions the re-execution ran past
        // are abandoned.
        for (;;) {
          std::int64_t c = peek_kept();
          if (c < 0) break;
          if (path_compare(decision(c).path, expect) == PathOrder::Before)
            cursor_ = static_cast<size_t>(c) + 1;
          else
            break;
        }
      }
      const std::int64_t c = peek_kept();
      bool prog_match = false;
      bool dec_ok = true;
      if (c >= 0) {
        const Decision& d = decision(c);
        prog_match = d.role == want_role && d.site == site &&
                     path_compare(d.path, expect) == PathOrder::Equal;
        if (prog_match && live_domain != nullptr)
          dec_ok = live_domain->contains(d.value);
      }
      if (prog_match && dec_ok) {
        cursor_ = static_cast<size_t>(c) + 1;
        return Match{false, c};
      }
      const MisalignmentKind kind = prog_match ? MisalignmentKind::DecMismatch
                                               : MisalignmentKind::ProgMismatch;
      switch (strategy_) {
        case AlignmentStrategy::Halt:
          log(expect, kind, MisalignmentEvent::Action::Halted);
          throw HaltUnwind{};
        case AlignmentStrategy::Realign:
          log(expect, kind, MisalignmentEvent::Action::RealignedFreshValue);
          return Match{true, -1};
        case AlignmentStrategy::Bypass: {
          NodeId unit = c >= 0 ? tree_.innermost_unit(c) : kNoNode;
          if (unit == kNoNode || ++cascade_ > cap_) {
            log(expect, kind, MisalignmentEvent::Action::Halted);
            throw HaltUnwind{};
          }
          effective_.removed.insert(unit);
          log(expect, kind, MisalignmentEvent::Action::BypassedUnit, unit);
          if (unit_on_live_ancestry(unit)) throw BypassUnwind{unit};
          continue;  // re-test the same request past the struck unit
        }
      }
    }
  }

  // A kept iteration exists but the live loop cannot run it without
  // overflowing its count domain. Returns true when the caller should
  // keep scanning (the iteration was struck), false to end the loop.
  bool over_capacity(const ExecutionPath& init_rec, NodeId iter) {
    switch (strategy_) {
      case AlignmentStrategy::Halt:
        log(init_rec, MisalignmentKind::DecMismatch,
            MisalignmentEvent::Action::Halted);
        throw HaltUnwind{};
      case AlignmentStrategy::Realign:
        log(init_rec, MisalignmentKind::DecMismatch,
            MisalignmentEvent::Action::RealignedFreshValue);
        return false;  // end the loop; stragglers are skipped later
      case AlignmentStrategy::Bypass: {
        if (++cascade_ > cap_) {
          log(init_rec, MisalignmentKind::DecMismatch,
              MisalignmentEvent::Action::Halted);
          throw HaltUnwind{};
        }
        effective_.removed.insert(iter);
        log(init_rec, MisalignmentKind::DecMismatch,
            MisalignmentEvent::Action::BypassedUnit, iter);
        return true;
      }
    }
    return false;
  }

  int free_loop(const Site& site, std::int64_t max,
                const std::function<void(GenContext&, int)>& body,
                const ExecutionPath& loop_live) {
    int n = static_cast<int>(realign_.below(static_cast<std::uint64_t>(max)));
    fresh_.push_back(Decision{0, site, int_range(0, max),
                              static_cast<std::int64_t>(n),
                              loop_live.child(kInitMarker, 1), Role::LoopInit});
    for (int i = 1; i <= n; ++i) {
      stack_.push_back(
          Frame{kNoNode, loop_live.child(kIterMarker, i + 1), 1, fresh_.size()});
      body(*this, i);
      stack_.pop_back();
    }
    return n;
  }

  bool free_maybe(const Site& site,
                  const std::function<void(GenContext&)>& body,
                  const ExecutionPath& sel_live) {
    bool b = realign_.coin();
    push_select(site, b, sel_live);
    if (b) {
      stack_.push_back(
          Frame{kNoNode, sel_live.child(kBlockMarker, 2), 1, fresh_.size()});
      body(*this);
      stack_.pop_back();
    }
    return b;
  }

  const TraceTree& tree_;
  RemovalLabeling effective_;
  AlignmentStrategy strategy_;
  SplitMix64 realign_;
  int cap_;
  int cascade_ = 0;
  size_t cursor_ = 0;
  std::vector<Decision> fresh_;
  std::vector<MisalignmentEvent> events_;
  std::deque<Frame> stack_;
  bool finished_ = false;
};

}  // namespace

std::pair<Trace, GeneratedInput> record_execution(const GeneratorFn& gen,
                                                  const std::string& generator_id,
                                                  std::uint64_t seed) {
  RecordContext ctx(seed);
  GeneratedInput input;
  try {
    input = gen(ctx);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw GeneratorError(std::string("generator failed: ") + e.what());
  }
  Trace t;
  t.generator_id = generator_id;
  t.seed = seed;
  t.output_digest = input_digest_hex(input.text);
  t.decisions = ctx.take_decisions();
  return {std::move(t), std::move(input)};
}

GeneratedInput bare_execution(const GeneratorFn& gen, std::uint64_t seed) {
  BareContext ctx(seed);
  return gen(ctx);
}

ReexecOutcome aligned_reexecution(const GeneratorFn& gen,
                                  const ReducedTrace& reduced,
                                  AlignmentStrategy strategy,
                                  std::uint64_t realign_seed,
                                  int max_bypass_cascade) {
  if (reduced.tree == nullptr) throw Error("aligned_reexecution: missing tree");
  validate_labeling(*reduced.tree, reduced.labeling);
  AlignContext ctx(*reduced.tree, reduced.labeling, strategy, realign_seed,
                   max_bypass_cascade);
  try {
    GeneratedInput input = gen(ctx);
    return ctx.finish(std::move(input));
  } catch (HaltUnwind&) {
    return ctx.halted();
  } catch (BypassUnwind&) {
    throw Error("internal: bypass unwind escaped its owning construct");
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw GeneratorError(std::string("generator failed: ") + e.what());
  }
}

}  // namespace greduce
