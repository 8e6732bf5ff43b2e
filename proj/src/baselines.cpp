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

#include "greduce/baselines.hpp"

#include <algorithm>
#include <chrono>

#include "greduce/error.hpp"
#include "greduce/prng.hpp"
#include "greduce/trace_io.hpp"

namespace greduce {

TokenView TokenView::chars(const std::string& bytes) {
  TokenView v;
  v.tokens.reserve(bytes.size());
  for (char c : bytes) v.tokens.emplace_back(1, c);
  return v;
}

TokenView TokenView::lines(const std::string& bytes) {
  TokenView v;
  v.joiner = "\n";
  size_t start = 0;
  while (start <= bytes.size()) {
    size_t nl = bytes.find('\n', start);
    if (nl == std::string::npos) {
      if (start < bytes.size()) v.tokens.push_back(bytes.substr(start));
      break;
    }
    v.tokens.push_back(bytes.substr(start, nl - start));
    start = nl + 1;
  }
  return v;
}

std::string TokenView::assemble(const std::vector<size_t>& kept) const {
  std::string out;
  bool first = true;
  for (size_t i : kept) {
    if (!first) out += joiner;
    out += tokens[i];
    first = false;
  }
  if (!kept.empty() && joiner == "\n") out += "\n";
  return out;
}

namespace {

struct Deadline {
  bool set = false;
  std::chrono::steady_clock::time_point at;

  explicit Deadline(double seconds) {
    if (seconds > 0) {
      set = true;
      at = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(seconds));
    }
  }
  bool exceeded() const {
    return set && std::chrono::steady_clock::now() > at;
  }
};

// Generic Zeller–Hildebrandt ddmin over index sequences. `test` returns
// whether the kept subsequence still exhibits the property; TimeoutExceeded
// aborts with the current sequence.
std::vector<size_t> ddmin_indices(
    std::vector<size_t> seq,
    const std::function<bool(const std::vector<size_t>&)>& test,
    const Deadline& deadline) {
  auto attempt = [&](const std::vector<size_t>& keep) {
    if (deadline.exceeded()) throw TimeoutExceeded("baseline deadline reached");
    return test(keep);
  };
  if (seq.empty()) return seq;
  if (seq.size() == 1) {
    if (attempt({})) seq.clear();
    return seq;
  }
  size_t n = 2;
  while (seq.size() >= 2) {
    const size_t sz = seq.size();
    const size_t base = sz / n, rem = sz % n;
    std::vector<std::vector<size_t>> chunks;
    size_t pos = 0;
    for (size_t i = 0; i < n && pos < sz; ++i) {
      size_t len = base + (i < rem ? 1 : 0);
      if (len == 0) continue;
      chunks.emplace_back(seq.begin() + static_cast<std::ptrdiff_t>(pos),
                          seq.begin() + static_cast<std::ptrdiff_t>(pos + len));
      pos += len;
    }
    bool reduced = false;
    for (const auto& chunk : chunks) {
      if (attempt(chunk)) {
        seq = chunk;
        n = 2;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      for (size_t i = 0; i < chunks.size(); ++i) {
        std::vector<size_t> complement;
        for (size_t j = 0; j < chunks.size(); ++j) {
          if (j == i) continue;
          complement.insert(complement.end(), chunks[j].begin(),
                            chunks[j].end());
        }
        if (complement.empty()) continue;
        if (attempt(complement)) {
          seq = complement;
          n = std::max<size_t>(n - 1, 2);
          reduced = true;
          break;
        }
      }
    }
    if (!reduced) {
      if (n >= seq.size()) break;
      n = std::min(seq.size(), 2 * n);
    }
    if (seq.size() == 1) {
      if (attempt({})) seq.clear();
      break;
    }
  }
  return seq;
}

// Replays a flat value list through the generator: each draw consumes the
// next value, falling back to a deterministic fresh draw when the value is
// invalid for the live domain or the list ran dry.
class ReplayContext final : public GenContext {
 public:
  ReplayContext(const std::vector<Scalar>& values, std::uint64_t fresh_seed)
      : values_(values), fresh_(fresh_seed) {}

  std::int64_t choose_int(const Site& site, std::int64_t lo,
                          std::int64_t hi) override {
    check_site(site);
    if (lo >= hi) throw GeneratorError("choose_int requires lo < hi");
    ChoiceDomain dom = int_range(lo, hi);
    Scalar v;
    if (take(dom, v)) return std::get<std::int64_t>(v);
    return lo + static_cast<std::int64_t>(
                    fresh_.below(static_cast<std::uint64_t>(hi - lo)));
  }

  Scalar choose_from(const Site& site, const SharedScalars& options) override {
    check_site(site);
    if (options == nullptr || options->empty())
      throw GeneratorError("choose_from requires options");
    ChoiceDomain dom = one_of(options);
    Scalar v;
    if (take(dom, v)) return v;
    return (*options)[fresh_.below(options->size())];
  }

  int repeat(const Site& site, std::int64_t max,
             const std::function<void(GenContext&, int)>& body) override {
    check_site(site);
    if (max < 1) throw GeneratorError("repeat requires max >= 1");
    ChoiceDomain dom = int_range(0, max);
    Scalar v;
    std::int64_t n;
    if (take(dom, v))
      n = std::get<std::int64_t>(v);
    else
      n = static_cast<std::int64_t>(fresh_.below(static_cast<std::uint64_t>(max)));
    for (int i = 1; i <= static_cast<int>(n); ++i) body(*this, i);
    return static_cast<int>(n);
  }

  bool maybe(const Site& site,
             const std::function<void(GenContext&)>& body) override {
    check_site(site);
    ChoiceDomain dom = bool_domain();
    Scalar v;
    bool b = take(dom, v) ? std::get<bool>(v) : fresh_.coin();
    if (b) body(*this);
    return b;
  }

 private:
  // Consumes the next value regardless; reports whether it was usable.
  bool take(const ChoiceDomain& dom, Scalar& out) {
    while (pos_ < values_.size()) {
      Scalar v = values_[pos_++];
      if (dom.contains(v)) {
        out = std::move(v);
        return true;
      }
      return false;  // consumed but invalid: substitute a fresh draw
    }
    return false;
  }

  const std::vector<Scalar>& values_;
  size_t pos_ = 0;
  SplitMix64 fresh_;
};

}  // namespace

BaselineResult raw_ddmin(const std::string& bytes, const TokenView& tokens,
                         const RawDdminParams& params) {
  if (!params.property(bytes))
    throw PropertyNotExhibited("the original bytes do not exhibit the property");
  Deadline deadline(params.timeout_seconds);

  std::vector<size_t> all(tokens.tokens.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::int64_t tests = 0, attempted = 0, valid = 0;
  std::vector<size_t> best_kept = all;  // last accepted reduction step
  auto test = [&](const std::vector<size_t>& keep) {
    std::string candidate = tokens.assemble(keep);
    ++tests;
    ++attempted;
    if (params.validity && params.validity(candidate)) ++valid;
    bool holds = params.property(candidate);
    if (holds) best_kept = keep;
    return holds;
  };

  const auto t0 = std::chrono::steady_clock::now();
  bool timed_out = false;
  try {
    ddmin_indices(all, test, deadline);
  } catch (const TimeoutExceeded&) {
    timed_out = true;
  }
  const std::vector<size_t>& kept = best_kept;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  BaselineResult out;
  out.reduced_bytes = tokens.assemble(kept);
  ReductionReport& r = out.metrics;
  r.search = "raw_ddmin";
  r.strategy = "-";
  r.size_original = SizeMeasure::scalar(static_cast<std::int64_t>(bytes.size()));
  r.size_final =
      SizeMeasure::scalar(static_cast<std::int64_t>(out.reduced_bytes.size()));
  const double orig = static_cast<double>(r.size_original.total());
  r.quality = orig > 0 ? static_cast<double>(r.size_final.total()) / orig : 1.0;
  r.wall_time = wall;
  r.property_tests = tests;
  r.speed = wall > 0 ? (orig - static_cast<double>(r.size_final.total())) / wall
                     : 0.0;
  r.validity_rate =
      attempted > 0 ? static_cast<double>(valid) / static_cast<double>(attempted)
                    : 1.0;
  r.timed_out = timed_out;
  r.result_digest = sha256_hex(out.reduced_bytes);
  return out;
}

ChoiceSequence ChoiceSequence::from_trace(const Trace& trace) {
  ChoiceSequence seq;
  seq.values.reserve(trace.decisions.size());
  for (const Decision& d : trace.decisions) seq.values.push_back(d.value);
  return seq;
}

BaselineResult choice_delete_shrink(const GeneratorFn& gen,
                                    const Trace& trace,
                                    const ChoiceShrinkParams& params) {
  ChoiceSequence seq = ChoiceSequence::from_trace(trace);
  Deadline deadline(params.timeout_seconds);

  std::int64_t tests = 0;
  GeneratedInput best;
  auto run = [&](const std::vector<size_t>& keep,
                 GeneratedInput& result) -> bool {
    std::vector<Scalar> values;
    values.reserve(keep.size());
    for (size_t i : keep) values.push_back(seq.values[i]);
    ReplayContext ctx(values, params.fresh_seed);
    result = gen(ctx);
    ++tests;
    return params.property(result);
  };

  std::vector<size_t> all(seq.values.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  SizeMeasure size_original;
  {
    GeneratedInput original;
    if (!run(all, original))
      throw PropertyNotExhibited("the replayed original does not exhibit the property");
    size_original = original.size;
    best = std::move(original);
  }

  const auto t0 = std::chrono::steady_clock::now();
  bool timed_out = false;
  auto test = [&](const std::vector<size_t>& keep) {
    GeneratedInput candidate;
    bool holds = run(keep, candidate);
    if (holds) best = std::move(candidate);
    return holds;
  };
  try {
    ddmin_indices(all, test, deadline);
  } catch (const TimeoutExceeded&) {
    timed_out = true;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  BaselineResult out;
  out.reduced_input = best;
  out.reduced_bytes = best.text;
  ReductionReport& r = out.metrics;
  r.search = "choice_delete";
  r.strategy = "-";
  r.size_original = size_original;
  r.size_final = best.size;
  const double orig = static_cast<double>(size_original.total());
  r.quality = orig > 0 ? static_cast<double>(best.size.total()) / orig : 1.0;
  r.wall_time = wall;
  r.property_tests = tests;
  r.speed = wall > 0 ? (orig - static_cast<double>(best.size.total())) / wall
                     : 0.0;
  r.validity_rate = 1.0;  // every candidate comes out of the generator
  r.timed_out = timed_out;
  r.result_digest = sha256_hex(best.text);
  return out;
}

}  // namespace greduce
