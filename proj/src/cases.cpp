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

#include "greduce/cases.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <sstream>

#include "greduce/error.hpp"
#include "greduce/prng.hpp"
#include "greduce/trace.hpp"

namespace greduce {

namespace {

// Fixture seeds. Each was located once by scanning seeds until the
// recorded execution had the wanted shape; they are pinned so every run
// reduces the same subject.
constexpr std::uint64_t kPasswordFixtureSeed = 482835;  // yields "abc\nabc\n"
constexpr std::uint64_t kDigraphFixtureSeed = 19;   // has a reachable self-loop
constexpr std::uint64_t kExprFixtureSeed = 311;     // trips the evaluator fault
constexpr std::uint64_t kNestedFixtureSeed = 35;    // contains the digit 7
constexpr std::uint64_t kNonMonoFixtureSeed = 0;    // takes the pop branch

std::int64_t as_int(const Scalar& s) { return std::get<std::int64_t>(s); }
std::string as_str(const Scalar& s) { return std::get<std::string>(s); }

bool password_valid(const GeneratedInput& in);
bool digraph_valid(const GeneratedInput& in);
bool expr_valid(const GeneratedInput& in);
bool nested_valid(const GeneratedInput& in);

// Generators check their own output against the input specification
// before handing it out, mirroring how their real-world counterparts bake
// the specification into generation.
void ensure_valid(bool ok) {
  if (!ok) throw std::logic_error("generated input violates its specification");
}

// ---------------------------------------------------------------------------
// password: two identical lowercase lines

// The full lowercase alphabet, interned once.
const SharedScalars& ascii_lowercase() {
  static const SharedScalars letters = [] {
    ScalarList l;
    for (char c = 'a'; c <= 'z'; ++c) l.emplace_back(std::string(1, c));
    return share_scalars(std::move(l));
  }();
  return letters;
}

GeneratedInput gen_password(GenContext& ctx) {
  std::string w;
  ctx.repeat("length", 20, [&](GenContext& c, int) {
    w += as_str(c.choose_from("letter", ascii_lowercase()));
  });
  w += '\n';
  std::ostringstream out;
  out << w << w;  // the form submits the password twice
  std::string text = out.str();
  auto size = SizeMeasure::scalar(static_cast<std::int64_t>(text.size()));
  GeneratedInput input{std::move(text), size};
  ensure_valid(password_valid(input));
  return input;
}

bool password_valid(const GeneratedInput& in) {
  const std::string& t = in.text;
  if (t.empty() || t.size() % 2 != 0) return false;
  const std::size_t h = t.size() / 2;
  if (t.compare(0, h, t, h, h) != 0) return false;
  for (std::size_t i = 0; i + 1 < h; ++i)
    if (t[i] < 'a' || t[i] > 'z') return false;
  return t[h - 1] == '\n';
}

// The backend bug: accepted passwords containing a 'c'.
bool password_property(const GeneratedInput& in) {
  const std::string& t = in.text;
  if (t.empty() || t.back() != '\n') return false;
  const std::size_t h = t.size() / 2;
  if (t.size() % 2 != 0 || t.compare(0, h, t, h, h) != 0) return false;
  return t.find('c') != std::string::npos;
}

// ---------------------------------------------------------------------------
// digraph: directed graph built as nodes, per-node optional attribute,
// then edges whose endpoints are drawn from the live node list.

// In-memory multigraph builder standing in for a graph library: node and
// edge insertion keeps adjacency and checks endpoint existence.
struct GraphBuilder {
  std::vector<std::vector<std::int64_t>> adjacency;
  std::vector<std::pair<std::int64_t, std::int64_t>> attrs;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;

  std::int64_t add_node() {
    adjacency.emplace_back();
    return static_cast<std::int64_t>(adjacency.size()) - 1;
  }
  void set_attr(std::int64_t id, std::int64_t weight) {
    attrs.emplace_back(id, weight);
  }
  void add_edge(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 || a >= static_cast<std::int64_t>(adjacency.size()) ||
        b >= static_cast<std::int64_t>(adjacency.size()))
      throw std::logic_error("edge endpoint does not exist");
    adjacency[static_cast<size_t>(a)].push_back(b);
    edges.emplace_back(a, b);
  }
};

GeneratedInput gen_digraph(GenContext& ctx) {
  GraphBuilder g;
  g.add_node();
  g.add_node();
  g.add_node();

  ctx.repeat("extra_nodes", 28, [&](GenContext& c, int) {
    const std::int64_t id = g.add_node();
    c.maybe("attr", [&](GenContext& c2) {
      g.set_attr(id, c2.choose_int("weight", 1, 100));
    });
  });

  ScalarList live;
  live.reserve(g.adjacency.size());
  for (std::int64_t id = 0; id < static_cast<std::int64_t>(g.adjacency.size()); ++id)
    live.emplace_back(id);
  SharedScalars nodes = share_scalars(std::move(live));

  ctx.repeat("edges", static_cast<std::int64_t>(4 * g.adjacency.size()),
             [&](GenContext& c, int) {
               std::int64_t a = as_int(c.choose_from("src", nodes));
               std::int64_t b = as_int(c.choose_from("dst", nodes));
               g.add_edge(a, b);
             });

  std::ostringstream out;
  out << "digraph " << g.adjacency.size() << "\n";
  for (const auto& [id, w] : g.attrs) out << "attr " << id << " " << w << "\n";
  for (const auto& [a, b] : g.edges) out << "edge " << a << " " << b << "\n";
  auto size =
      SizeMeasure::nodes_edges(static_cast<std::int64_t>(g.adjacency.size()),
                               static_cast<std::int64_t>(g.edges.size()));
  GeneratedInput input{out.str(), size};
  ensure_valid(digraph_valid(input));
  return input;
}

struct ParsedDigraph {
  std::int64_t nodes = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> attrs;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
};

std::optional<ParsedDigraph> parse_digraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ParsedDigraph g;
  bool saw_header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) return std::nullopt;
    if (kw == "digraph") {
      if (saw_header || !(ls >> g.nodes)) return std::nullopt;
      saw_header = true;
    } else if (kw == "attr") {
      std::int64_t id, w;
      if (!saw_header || !(ls >> id >> w)) return std::nullopt;
      g.attrs.emplace_back(id, w);
    } else if (kw == "edge") {
      std::int64_t a, b;
      if (!saw_header || !(ls >> a >> b)) return std::nullopt;
      g.edges.emplace_back(a, b);
    } else {
      return std::nullopt;
    }
    std::string rest;
    if (ls >> rest) return std::nullopt;
  }
  if (!saw_header) return std::nullopt;
  return g;
}

bool digraph_valid(const GeneratedInput& in) {
  auto g = parse_digraph(in.text);
  if (!g) return false;
  if (g->nodes < 3 || g->nodes > 30) return false;
  if (static_cast<std::int64_t>(g->edges.size()) > 4 * g->nodes) return false;
  auto in_range = [&](std::int64_t v) { return v >= 0 && v < g->nodes; };
  for (const auto& [id, w] : g->attrs)
    if (!in_range(id) || w < 1 || w > 99) return false;
  for (const auto& [a, b] : g->edges)
    if (!in_range(a) || !in_range(b)) return false;
  return true;
}

// The graph bug: a self-loop on a node reachable from node 0.
bool digraph_property(const GeneratedInput& in) {
  auto g = parse_digraph(in.text);
  if (!g || g->nodes <= 0) return false;
  std::vector<std::vector<std::int64_t>> adj(static_cast<size_t>(g->nodes));
  std::set<std::int64_t> loops;
  for (const auto& [a, b] : g->edges) {
    if (a < 0 || a >= g->nodes || b < 0 || b >= g->nodes) return false;
    adj[static_cast<size_t>(a)].push_back(b);
    if (a == b) loops.insert(a);
  }
  if (loops.empty()) return false;
  std::vector<bool> seen(static_cast<size_t>(g->nodes), false);
  std::queue<std::int64_t> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    std::int64_t v = q.front();
    q.pop();
    if (loops.count(v)) return true;
    for (std::int64_t w : adj[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        q.push(w);
      }
    }
  }
  return false;
}

SizeMeasure digraph_size(const GeneratedInput& in) {
  auto g = parse_digraph(in.text);
  if (!g) return SizeMeasure::nodes_edges(0, 0);
  return SizeMeasure::nodes_edges(g->nodes,
                                  static_cast<std::int64_t>(g->edges.size()));
}

// ---------------------------------------------------------------------------
// expr: tiny expression language with let bindings; references are drawn
// from previously declared names.

struct AstNode {
  enum class Kind { Num, Var, Neg, Bin } kind = Kind::Num;
  std::int64_t num = 0;
  std::string var;
  char op = '+';
  std::unique_ptr<AstNode> lhs, rhs;
};

void print_ast(std::ostream& out, const AstNode& n) {
  switch (n.kind) {
    case AstNode::Kind::Num: out << n.num; break;
    case AstNode::Kind::Var: out << n.var; break;
    case AstNode::Kind::Neg:
      out << "-(";
      print_ast(out, *n.lhs);
      out << ")";
      break;
    case AstNode::Kind::Bin:
      out << "(";
      print_ast(out, *n.lhs);
      out << " " << n.op << " ";
      print_ast(out, *n.rhs);
      out << ")";
      break;
  }
}

// Kind menus, keyed by whether names exist and whether the depth cap
// forces a leaf. Option order is part of the recorded format.
const SharedScalars& expr_kinds(bool have_vars, bool leaf_only) {
  static const SharedScalars leaf = share_scalars({Scalar{std::string("num")}});
  static const SharedScalars leaf_var = share_scalars(
      {Scalar{std::string("num")}, Scalar{std::string("var")}});
  static const SharedScalars full =
      share_scalars({Scalar{std::string("num")}, Scalar{std::string("neg")},
                     Scalar{std::string("bin")}});
  static const SharedScalars full_var = share_scalars(
      {Scalar{std::string("num")}, Scalar{std::string("var")},
       Scalar{std::string("neg")}, Scalar{std::string("bin")}});
  if (leaf_only) return have_vars ? leaf_var : leaf;
  return have_vars ? full_var : full;
}

std::unique_ptr<AstNode> gen_expr_node(GenContext& c,
                                       const SharedScalars& names, int depth) {
  const bool have_vars = names != nullptr && !names->empty();
  const std::string kind =
      as_str(c.choose_from("kind", expr_kinds(have_vars, depth >= 3)));
  auto node = std::make_unique<AstNode>();
  if (kind == "num") {
    node->kind = AstNode::Kind::Num;
    node->num = c.choose_int("num", 0, 100);
  } else if (kind == "var") {
    node->kind = AstNode::Kind::Var;
    node->var = as_str(c.choose_from("var", names));
  } else if (kind == "neg") {
    node->kind = AstNode::Kind::Neg;
    node->lhs = gen_expr_node(c, names, depth + 1);
  } else {
    static const SharedScalars ops = share_scalars(
        {Scalar{std::string("+")}, Scalar{std::string("-")},
         Scalar{std::string("*")}, Scalar{std::string("/")}});
    node->kind = AstNode::Kind::Bin;
    node->op = as_str(c.choose_from("op", ops))[0];
    node->lhs = gen_expr_node(c, names, depth + 1);
    node->rhs = gen_expr_node(c, names, depth + 1);
  }
  return node;
}

GeneratedInput gen_expr(GenContext& ctx) {
  ScalarList names;
  SharedScalars shared_names;
  std::ostringstream out;
  ctx.repeat("lets", 6, [&](GenContext& c, int) {
    std::string name = "v" + std::to_string(names.size());
    auto e = gen_expr_node(c, shared_names, 0);
    out << "let " << name << " = ";
    print_ast(out, *e);
    out << ";\n";
    names.emplace_back(std::move(name));
    shared_names = share_scalars(names);
  });
  auto result = gen_expr_node(ctx, shared_names, 0);
  out << "return ";
  print_ast(out, *result);
  out << ";\n";
  std::string text = out.str();
  auto size = SizeMeasure::scalar(static_cast<std::int64_t>(text.size()));
  GeneratedInput input{std::move(text), size};
  ensure_valid(expr_valid(input));
  return input;
}

// Wrap-around arithmetic keeps the evaluator total.
std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_neg(std::int64_t a) {
  return static_cast<std::int64_t>(0 - static_cast<std::uint64_t>(a));
}
std::int64_t safe_div(std::int64_t a, std::int64_t b) {
  if (b == 0) return 0;  // quotient by zero is defined as 0 here
  if (a == INT64_MIN && b == -1) return a;
  return a / b;
}

struct EvalCrash {
  std::string message;
};

class ExprEvaluator {
 public:
  // fault_enabled wires in the injected bug; well-formedness checks run
  // with it off so a crash cannot mask a malformed program.
  ExprEvaluator(const std::string& text, bool fault_enabled)
      : text_(text), fault_enabled_(fault_enabled) {}

  // Runs the program; returns false on a syntax or scoping error.
  bool run() {
    pos_ = 0;
    env_.clear();
    while (pos_ < text_.size()) {
      if (match_kw("let ")) {
        std::string name = parse_name();
        if (name.empty() || !match_kw(" = ")) return false;
        auto v = parse_expr(0);
        if (!v || !match_kw(";\n")) return false;
        if (env_.count(name)) return false;  // redefinition
        env_[name] = *v;
      } else if (match_kw("return ")) {
        auto v = parse_expr(0);
        if (!v || !match_kw(";\n")) return false;
        return pos_ == text_.size();
      } else {
        return false;
      }
    }
    return false;  // no return statement
  }

 private:
  bool match_kw(const char* kw) {
    std::size_t n = std::char_traits<char>::length(kw);
    if (text_.compare(pos_, n, kw) != 0) return false;
    pos_ += n;
    return true;
  }

  std::string parse_name() {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] != 'v') return "";
    ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::optional<std::int64_t> parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    // Reject runs that cannot fit an int64; deletion-based reducers can
    // splice digit runs together.
    if (pos_ == start || pos_ - start > 18) return std::nullopt;
    return std::stoll(text_.substr(start, pos_ - start));
  }

  // neg_depth counts enclosing negations on the evaluation path; the
  // injected fault fires when a quotient is evaluated under two of them.
  std::optional<std::int64_t> parse_expr(int neg_depth) {
    if (++depth_ > 256) return std::nullopt;  // arbitrary text, bounded stack
    struct Guard {
      int& d;
      ~Guard() { --d; }
    } guard{depth_};
    if (pos_ >= text_.size()) return std::nullopt;
    char c = text_[pos_];
    if (c == '-') {
      if (!match_kw("-(")) return std::nullopt;
      auto v = parse_expr(neg_depth + 1);
      if (!v || !match_kw(")")) return std::nullopt;
      return wrap_neg(*v);
    }
    if (c == '(') {
      ++pos_;
      auto l = parse_expr(neg_depth);
      if (!l || pos_ + 2 >= text_.size() || text_[pos_] != ' ')
        return std::nullopt;
      char op = text_[pos_ + 1];
      if (text_[pos_ + 2] != ' ') return std::nullopt;
      pos_ += 3;
      auto r = parse_expr(neg_depth);
      if (!r || !match_kw(")")) return std::nullopt;
      switch (op) {
        case '+': return wrap_add(*l, *r);
        case '-': return wrap_sub(*l, *r);
        case '*': return wrap_mul(*l, *r);
        case '/':
          if (fault_enabled_ && neg_depth >= 2) {
            throw EvalCrash{"evaluator fault: double-negated quotient (lhs=" +
                            std::to_string(*l) + ", rhs=" + std::to_string(*r) +
                            ")"};
          }
          return safe_div(*l, *r);
        default: return std::nullopt;
      }
    }
    if (c == 'v') {
      std::string name = parse_name();
      auto it = env_.find(name);
      if (it == env_.end()) return std::nullopt;  // use before definition
      return it->second;
    }
    return parse_number();
  }

  const std::string& text_;
  bool fault_enabled_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::map<std::string, std::int64_t> env_;
};

bool expr_valid(const GeneratedInput& in) {
  return ExprEvaluator(in.text, /*fault_enabled=*/false).run();
}

std::optional<std::string> expr_crash_message_impl(const std::string& text) {
  try {
    ExprEvaluator(text, /*fault_enabled=*/true).run();
    return std::nullopt;
  } catch (const EvalCrash& c) {
    return c.message;
  }
}

// ---------------------------------------------------------------------------
// nested: bracketed blocks with an optional letter and a digit run,
// exercising loop-in-loop and selection-in-loop structure.

GeneratedInput gen_nested(GenContext& ctx) {
  static const SharedScalars letters = share_scalars(
      {Scalar{std::string("x")}, Scalar{std::string("y")}});
  std::ostringstream out;
  ctx.repeat("A", 4, [&](GenContext& c, int) {
    std::string section;
    c.maybe("B", [&](GenContext& c2) {
      section += as_str(c2.choose_from("b", letters));
    });
    c.repeat("C", 4, [&](GenContext& c2, int) {
      section += static_cast<char>('0' + c2.choose_int("c", 0, 10));
    });
    out << "[" << section << "]";
  });
  std::string text = out.str();
  auto size = SizeMeasure::scalar(static_cast<std::int64_t>(text.size()));
  GeneratedInput input{std::move(text), size};
  ensure_valid(nested_valid(input));
  return input;
}

bool nested_valid(const GeneratedInput& in) {
  const std::string& t = in.text;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] != '[') return false;
    ++i;
    if (i < t.size() && (t[i] == 'x' || t[i] == 'y')) ++i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i >= t.size() || t[i] != ']') return false;
    ++i;
  }
  return true;
}

bool nested_property(const GeneratedInput& in) {
  return in.text.find('7') != std::string::npos;
}

// ---------------------------------------------------------------------------
// nonmono: a deliberately non-monotone demo. The selection's block removes
// an element, so striking the block grows the output.

GeneratedInput gen_nonmono(GenContext& ctx) {
  std::vector<int> xs{1, 2};
  ctx.maybe("pop", [&](GenContext&) { xs.pop_back(); });
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out << ", ";
    out << xs[i];
  }
  out << "]";
  auto size = SizeMeasure::scalar(static_cast<std::int64_t>(xs.size()));
  return GeneratedInput{out.str(), size};
}

std::vector<CaseSpec> make_registry() {
  std::vector<CaseSpec> cases;

  {
    CaseSpec c;
    c.name = "password";
    c.generator = gen_password;
    c.fixture_seed = kPasswordFixtureSeed;
    c.property = password_property;
    c.validity = password_valid;
    c.size_fn = [](const GeneratedInput& in) { return in.size; };
    c.dependency_bearing = false;
    cases.push_back(std::move(c));
  }
  {
    CaseSpec c;
    c.name = "digraph";
    c.generator = gen_digraph;
    c.fixture_seed = kDigraphFixtureSeed;
    c.property = digraph_property;
    c.validity = digraph_valid;
    c.size_fn = digraph_size;
    c.dependency_bearing = true;
    cases.push_back(std::move(c));
  }
  {
    CaseSpec c;
    c.name = "expr";
    c.generator = gen_expr;
    c.fixture_seed = kExprFixtureSeed;
    // The expected message is whatever the fixture input crashes with;
    // reduced inputs must keep it (or stay at least 0.8-similar).
    auto fixture = record_execution(gen_expr, "expr", kExprFixtureSeed);
    auto expected = expr_crash_message_impl(fixture.second.text);
    SimilaritySpec spec{expected.value_or(""), 0.8};
    auto oracle = crash_oracle(spec);
    c.property = [oracle](const GeneratedInput& in) {
      auto msg = expr_crash_message_impl(in.text);
      return msg.has_value() && oracle(*msg);
    };
    c.validity = expr_valid;
    c.size_fn = [](const GeneratedInput& in) { return in.size; };
    c.dependency_bearing = true;
    cases.push_back(std::move(c));
  }
  {
    CaseSpec c;
    c.name = "nested";
    c.generator = gen_nested;
    c.fixture_seed = kNestedFixtureSeed;
    c.property = nested_property;
    c.validity = nested_valid;
    c.size_fn = [](const GeneratedInput& in) { return in.size; };
    c.dependency_bearing = false;
    cases.push_back(std::move(c));
  }
  {
    CaseSpec c;
    c.name = "nonmono";
    c.generator = gen_nonmono;
    c.fixture_seed = kNonMonoFixtureSeed;
    c.property = [](const GeneratedInput& in) { return !in.text.empty(); };
    c.validity = [](const GeneratedInput& in) {
      return in.text == "[1]" || in.text == "[1, 2]";
    };
    c.size_fn = [](const GeneratedInput& in) { return in.size; };
    c.dependency_bearing = false;
    c.monotone = false;
    c.reduction_case = false;
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace

const std::vector<CaseSpec>& case_registry() {
  static const std::vector<CaseSpec> registry = make_registry();
  return registry;
}

const CaseSpec& find_case(const std::string& name) {
  for (const CaseSpec& c : case_registry())
    if (c.name == name) return c;
  throw UnknownCase("unknown case \"" + name + "\"");
}

std::optional<std::string> expr_crash_message(const std::string& program) {
  return expr_crash_message_impl(program);
}

MonotonicityReport monotonicity_probe(const CaseSpec& spec, int trials,
                                      std::uint64_t probe_seed) {
  auto [trace, input] = record_execution(spec.generator, spec.name,
                                         spec.fixture_seed);
  (void)input;
  TraceTree tree = build_trace_tree(trace);
  std::vector<NodeId> units = removable_units(tree);
  SplitMix64 rng(probe_seed);
  MonotonicityReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    RemovalLabeling l2, l1;
    for (NodeId u : units)
      if (rng.coin()) l2.removed.insert(u);
    for (NodeId u : l2.removed)
      if (rng.coin()) l1.removed.insert(u);
    auto o1 = aligned_reexecution(spec.generator, ReducedTrace{&tree, l1},
                                  AlignmentStrategy::Halt, probe_seed);
    auto o2 = aligned_reexecution(spec.generator, ReducedTrace{&tree, l2},
                                  AlignmentStrategy::Halt, probe_seed);
    if (!o1.completed() || !o2.completed()) continue;
    ++report.completed_pairs;
    if (spec.size_fn(o2.input).total() > spec.size_fn(o1.input).total())
      ++report.violations;
  }
  return report;
}

}  // namespace greduce
