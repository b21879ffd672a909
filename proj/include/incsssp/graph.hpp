#pragma once

// Core graph types shared by every shortest-path structure in this library:
// a dynamic directed graph that only ever gains edges / loses weight, plus
// the line-oriented update-script format the CLI and tests speak.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace incsssp {

using VertexId = int32_t;
using Weight = int64_t;
using Dist = int64_t;

inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

// Largest multiple of y that is <= x. y must be positive; x may be negative.
inline int64_t floor_multiple(int64_t x, int64_t y) {
  if (y <= 0) throw std::invalid_argument("floor_multiple: y must be positive");
  int64_t q = x / y;
  if (x % y != 0 && x < 0) --q;
  return q * y;
}

inline Weight ceil_div(Weight a, Weight b) { return (a + b - 1) / b; }

enum class InsertOutcome { New, Relaxed, NoOp };

struct InsertResult {
  InsertOutcome outcome = InsertOutcome::NoOp;
  Weight old_weight = 0;  // meaningful for Relaxed only
  int32_t edge_id = -1;   // dense id, stable across relaxations
};

struct OutEdge {
  VertexId head;
  Weight w;
  int32_t edge_id;
};

struct InEdge {
  VertexId tail;
  Weight w;
  int32_t edge_id;
};

struct EdgeRecord {
  VertexId tail;
  VertexId head;
  Weight w;
  int32_t out_pos;  // index into out_adj[tail]
  int32_t in_pos;   // index into in_adj[head]
};

// Directed graph under edge insertions and weight decreases. Parallel edges
// collapse onto one record (keyed by endpoint pair); a re-insert with a
// weight >= the stored one is a no-op.
class DynGraph {
 public:
  DynGraph(int32_t n, VertexId source) : n_(n), source_(source), out_(n), in_(n) {
    if (n <= 0) throw std::invalid_argument("DynGraph: n must be positive");
    if (source < 0 || source >= n) throw std::invalid_argument("DynGraph: source out of range");
  }

  int32_t n() const { return n_; }
  VertexId source() const { return source_; }
  int64_t m() const { return static_cast<int64_t>(edges_.size()); }

  const std::vector<OutEdge>& out(VertexId u) const { return out_[u]; }
  const std::vector<InEdge>& in(VertexId v) const { return in_[v]; }
  const EdgeRecord& edge(int32_t id) const { return edges_[id]; }

  InsertResult insert_or_relax(VertexId u, VertexId v, Weight w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("insert_or_relax: self-loops are not allowed");
    if (w < 1) throw std::invalid_argument("insert_or_relax: weight must be >= 1");
    uint64_t key = pair_key(u, v);
    auto it = index_.find(key);
    if (it == index_.end()) {
      int32_t id = static_cast<int32_t>(edges_.size());
      edges_.push_back(EdgeRecord{u, v, w, static_cast<int32_t>(out_[u].size()),
                                  static_cast<int32_t>(in_[v].size())});
      out_[u].push_back(OutEdge{v, w, id});
      in_[v].push_back(InEdge{u, w, id});
      index_.emplace(key, id);
      return InsertResult{InsertOutcome::New, 0, id};
    }
    int32_t id = it->second;
    EdgeRecord& rec = edges_[id];
    if (w >= rec.w) return InsertResult{InsertOutcome::NoOp, rec.w, id};
    Weight old = rec.w;
    rec.w = w;
    out_[rec.tail][rec.out_pos].w = w;
    in_[rec.head][rec.in_pos].w = w;
    return InsertResult{InsertOutcome::Relaxed, old, id};
  }

  std::optional<Weight> weight_of(VertexId u, VertexId v) const {
    auto it = index_.find(pair_key(u, v));
    if (it == index_.end()) return std::nullopt;
    return edges_[it->second].w;
  }

  std::optional<int32_t> edge_id(VertexId u, VertexId v) const {
    auto it = index_.find(pair_key(u, v));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void check_vertex(VertexId x) const {
    if (x < 0 || x >= n_) throw std::out_of_range("DynGraph: vertex id out of range");
  }
  uint64_t pair_key(VertexId u, VertexId v) const {
    return static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32 | static_cast<uint32_t>(v);
  }

  int32_t n_;
  VertexId source_;
  std::vector<std::vector<OutEdge>> out_;
  std::vector<std::vector<InEdge>> in_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<uint64_t, int32_t> index_;
};

// ---------------------------------------------------------------------------
// Update scripts.
//
// Line-oriented UTF-8 text. '#' starts a comment (rest of line ignored),
// blank lines ignored. The first directive must be `n <count>`. Directives:
//   n <count>            vertex count (required, exactly once, first)
//   s <vertex>           source (optional, default 0, before any i/q/p)
//   i <u> <v> [<w>]      insert edge / decrease weight (w default 1)
//   q <t>                distance query
//   p <t>                path query
//
// Answer sidecars hold one line per query, in event order:
//   d <t> <value|inf>
//   P <t> <k> <v0> ... <vk>

struct UpdateEvent {
  enum class Kind { Insert, DistQuery, PathQuery };
  Kind kind;
  VertexId u = -1;  // Insert tail
  VertexId v = -1;  // Insert head
  Weight w = 1;     // Insert weight
  VertexId t = -1;  // query target
};

struct QueryAnswer {
  bool is_path = false;
  VertexId t = -1;
  Dist dist = kInfDist;            // distance answers; kInfDist encodes "inf"
  std::vector<VertexId> path;      // path answers
};

struct UpdateScript {
  int32_t n = 0;
  VertexId source = 0;
  std::vector<UpdateEvent> events;
  std::vector<QueryAnswer> expected;  // empty when no sidecar was attached

  int64_t insert_count() const {
    int64_t c = 0;
    for (const auto& e : events)
      if (e.kind == UpdateEvent::Kind::Insert) ++c;
    return c;
  }
  int64_t query_count() const { return static_cast<int64_t>(events.size()) - insert_count(); }
  Weight max_weight() const {
    Weight w = 1;
    for (const auto& e : events)
      if (e.kind == UpdateEvent::Kind::Insert) w = std::max(w, e.w);
    return w;
  }
};

class ScriptParseError : public std::runtime_error {
 public:
  ScriptParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

struct LineScanner {
  std::string_view s;
  size_t pos = 0;
  int line;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  std::string_view token() {
    skip_ws();
    if (pos >= s.size()) throw ScriptParseError(line, "unexpected end of line");
    size_t start = pos;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
    return s.substr(start, pos - start);
  }
  int64_t integer(const char* what, int64_t lo, int64_t hi) {
    std::string_view t = token();
    int64_t val = 0;
    bool neg = false;
    size_t i = 0;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) {
      neg = t[i] == '-';
      ++i;
    }
    if (i >= t.size()) throw ScriptParseError(line, std::string(what) + ": not an integer");
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9')
        throw ScriptParseError(line, std::string(what) + ": not an integer: '" + std::string(t) + "'");
      if (val > (std::numeric_limits<int64_t>::max() - 9) / 10)
        throw ScriptParseError(line, std::string(what) + ": integer overflow");
      val = val * 10 + (t[i] - '0');
    }
    if (neg) val = -val;
    if (val < lo || val > hi)
      throw ScriptParseError(line, std::string(what) + ": value " + std::to_string(val) +
                                       " out of range [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
    return val;
  }
};

inline std::string_view strip_comment(std::string_view line) {
  size_t h = line.find('#');
  if (h != std::string_view::npos) line = line.substr(0, h);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.remove_suffix(1);
  return line;
}

}  // namespace detail

inline UpdateScript parse_script(std::string_view text) {
  UpdateScript script;
  bool have_n = false;
  bool source_locked = false;  // set once the first i/q/p appears
  bool source_seen = false;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view raw =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    std::string_view body = detail::strip_comment(raw);
    detail::LineScanner sc{body, 0, line_no};
    if (sc.at_end()) continue;
    std::string_view op = sc.token();

    if (!have_n) {
      if (op != "n") throw ScriptParseError(line_no, "first directive must be 'n <count>'");
      script.n = static_cast<int32_t>(sc.integer("n", 1, 1 << 26));
      have_n = true;
      if (!sc.at_end()) throw ScriptParseError(line_no, "trailing tokens after 'n'");
      continue;
    }

    if (op == "n") throw ScriptParseError(line_no, "duplicate 'n' directive");
    if (op == "s") {
      if (source_locked) throw ScriptParseError(line_no, "'s' must precede all events");
      if (source_seen) throw ScriptParseError(line_no, "duplicate 's' directive");
      script.source = static_cast<VertexId>(sc.integer("s", 0, script.n - 1));
      source_seen = true;
      if (!sc.at_end()) throw ScriptParseError(line_no, "trailing tokens after 's'");
      continue;
    }

    UpdateEvent ev;
    if (op == "i") {
      ev.kind = UpdateEvent::Kind::Insert;
      ev.u = static_cast<VertexId>(sc.integer("u", 0, script.n - 1));
      ev.v = static_cast<VertexId>(sc.integer("v", 0, script.n - 1));
      if (ev.u == ev.v) throw ScriptParseError(line_no, "self-loop insert");
      ev.w = sc.at_end() ? 1 : sc.integer("w", 1, std::numeric_limits<int64_t>::max() / 4);
    } else if (op == "q" || op == "p") {
      ev.kind = op == "q" ? UpdateEvent::Kind::DistQuery : UpdateEvent::Kind::PathQuery;
      ev.t = static_cast<VertexId>(sc.integer("t", 0, script.n - 1));
    } else {
      throw ScriptParseError(line_no, "unknown directive '" + std::string(op) + "'");
    }
    if (!sc.at_end()) throw ScriptParseError(line_no, "trailing tokens");
    source_locked = true;
    script.events.push_back(ev);
  }
  if (!have_n) throw ScriptParseError(line_no, "missing 'n' directive");
  return script;
}

inline std::string serialize_script(const UpdateScript& script) {
  std::string out;
  out += "n " + std::to_string(script.n) + "\n";
  if (script.source != 0) out += "s " + std::to_string(script.source) + "\n";
  for (const auto& e : script.events) {
    switch (e.kind) {
      case UpdateEvent::Kind::Insert:
        out += "i " + std::to_string(e.u) + " " + std::to_string(e.v);
        if (e.w != 1) out += " " + std::to_string(e.w);
        out += "\n";
        break;
      case UpdateEvent::Kind::DistQuery:
        out += "q " + std::to_string(e.t) + "\n";
        break;
      case UpdateEvent::Kind::PathQuery:
        out += "p " + std::to_string(e.t) + "\n";
        break;
    }
  }
  return out;
}

inline std::string format_answer(const QueryAnswer& a) {
  if (!a.is_path) {
    return "d " + std::to_string(a.t) + " " +
           (a.dist == kInfDist ? std::string("inf") : std::to_string(a.dist));
  }
  std::string out = "P " + std::to_string(a.t) + " " +
                    std::to_string(a.path.empty() ? 0 : a.path.size() - 1);
  for (VertexId v : a.path) out += " " + std::to_string(v);
  return out;
}

inline std::vector<QueryAnswer> parse_answers(std::string_view text) {
  std::vector<QueryAnswer> answers;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view raw =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    std::string_view body = detail::strip_comment(raw);
    detail::LineScanner sc{body, 0, line_no};
    if (sc.at_end()) continue;
    std::string_view op = sc.token();
    QueryAnswer a;
    if (op == "d") {
      a.is_path = false;
      a.t = static_cast<VertexId>(sc.integer("t", 0, std::numeric_limits<int32_t>::max()));
      sc.skip_ws();
      std::string_view val = sc.token();
      if (val == "inf") {
        a.dist = kInfDist;
      } else {
        detail::LineScanner vs{val, 0, line_no};
        a.dist = vs.integer("value", 0, std::numeric_limits<int64_t>::max() / 2);
      }
    } else if (op == "P") {
      a.is_path = true;
      a.t = static_cast<VertexId>(sc.integer("t", 0, std::numeric_limits<int32_t>::max()));
      int64_t k = sc.integer("k", 0, 1 << 26);
      for (int64_t i = 0; i <= k; ++i)
        a.path.push_back(
            static_cast<VertexId>(sc.integer("v", 0, std::numeric_limits<int32_t>::max())));
    } else {
      throw ScriptParseError(line_no, "unknown answer directive '" + std::string(op) + "'");
    }
    if (!sc.at_end()) throw ScriptParseError(line_no, "trailing tokens");
    answers.push_back(std::move(a));
  }
  return answers;
}

inline std::string serialize_answers(const std::vector<QueryAnswer>& answers) {
  std::string out;
  for (const auto& a : answers) out += format_answer(a) + "\n";
  return out;
}

}  // namespace incsssp
