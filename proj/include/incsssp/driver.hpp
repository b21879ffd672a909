#pragma once

// Script execution, lockstep verification, and bench plumbing shared by the
// command-line tool and the test suite. Everything here is deterministic for
// a fixed (script, algorithm, options) triple; only wall-clock readings vary
// between runs.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "incsssp/engine.hpp"
#include "incsssp/es_tree.hpp"
#include "incsssp/graph.hpp"
#include "incsssp/oracle.hpp"
#include "incsssp/audit.hpp"
#include "incsssp/warmup.hpp"

namespace incsssp {

enum class Algo { Lazy, Es, Warmup, Oracle };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Lazy: return "lazy";
    case Algo::Es: return "es";
    case Algo::Warmup: return "warmup";
    case Algo::Oracle: return "oracle";
  }
  return "?";
}

inline std::optional<Algo> parse_algo(std::string_view s) {
  if (s == "lazy") return Algo::Lazy;
  if (s == "es") return Algo::Es;
  if (s == "warmup") return Algo::Warmup;
  if (s == "oracle") return Algo::Oracle;
  return std::nullopt;
}

struct RunOptions {
  double eps = 0.25;
  // Multiplier on the lazy trees' default heaviness-threshold bases
  // (LazyTreeParams::default_base); < 1 makes heaviness reachable on small
  // instances.
  std::optional<double> test_constants;
};

struct RunResult {
  std::vector<QueryAnswer> answers;
  int64_t m_final = 0;  // distinct edges present when the script ends
  uint64_t decrements = 0;
  uint64_t workset_inserts = 0;
  uint64_t iscan_total = 0;
  std::vector<uint64_t> per_i_scans;  // lazy only: i-scans by level
};

namespace detail {

// Exact answers straight from Dijkstra on the current graph.
inline QueryAnswer oracle_answer(const DynGraph& g, const UpdateEvent& e) {
  OracleResult r = dijkstra(g, g.source());
  QueryAnswer a;
  a.t = e.t;
  if (e.kind == UpdateEvent::Kind::DistQuery) {
    a.dist = r.dist[static_cast<size_t>(e.t)];
    return a;
  }
  a.is_path = true;
  a.dist = r.dist[static_cast<size_t>(e.t)];
  if (a.dist == kInfDist) return a;
  std::vector<VertexId> rev{e.t};
  for (VertexId cur = e.t; cur != g.source();) {
    cur = r.parent[static_cast<size_t>(cur)];
    rev.push_back(cur);
  }
  a.path.assign(rev.rbegin(), rev.rend());
  return a;
}

inline Dist path_weight(const DynGraph& g, const std::vector<VertexId>& path) {
  Dist total = 0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    std::optional<Weight> w = g.weight_of(path[i], path[i + 1]);
    if (!w) return kInfDist;
    total += *w;
  }
  return total;
}

}  // namespace detail

// Replays `script` against the chosen algorithm and collects query answers
// plus the work counters that feed the bench CSV. `warmup` accepts only
// unit-weight scripts without path queries.
inline RunResult run_script(const UpdateScript& script, Algo algo, const RunOptions& opt = {}) {
  RunResult out;
  switch (algo) {
    case Algo::Lazy: {
      EngineOptions eo;
      eo.eps = opt.eps;
      eo.max_weight = script.max_weight();
      eo.test_constant_multiplier = opt.test_constants;
      SsspEngine eng(script.n, script.source, eo);
      for (const auto& e : script.events) {
        if (e.kind == UpdateEvent::Kind::Insert) {
          eng.insert(e.u, e.v, e.w);
          continue;
        }
        QueryAnswer a;
        a.t = e.t;
        if (e.kind == UpdateEvent::Kind::DistQuery) {
          a.dist = eng.dist(e.t);
        } else {
          a.is_path = true;
          a.path = eng.path_to(e.t);
          a.dist = detail::path_weight(eng.graph(), a.path);
          if (a.path.empty()) a.dist = kInfDist;
        }
        out.answers.push_back(std::move(a));
      }
      out.m_final = eng.graph().m();
      EngineStats st = eng.stats();
      out.decrements = st.decrements;
      out.workset_inserts = st.workset_inserts;
      out.iscan_total = st.iscan_total;
      out.per_i_scans = st.per_i;
      return out;
    }
    case Algo::Es: {
      DynGraph g(script.n, script.source);
      // Depth covering every finite distance, so the baseline stays exact.
      int64_t depth = std::max<int64_t>(
          1, static_cast<int64_t>(script.n - 1) * script.max_weight());
      EsTree tree(&g, script.source, depth);
      for (const auto& e : script.events) {
        if (e.kind == UpdateEvent::Kind::Insert) {
          auto r = g.insert_or_relax(e.u, e.v, e.w);
          if (r.outcome != InsertOutcome::NoOp) tree.on_insert(e.u, e.v, e.w);
          continue;
        }
        QueryAnswer a;
        a.t = e.t;
        a.dist = tree.dist(e.t);
        if (e.kind == UpdateEvent::Kind::PathQuery) {
          a.is_path = true;
          a.path = tree.path_to(e.t);
        }
        out.answers.push_back(std::move(a));
      }
      out.m_final = g.m();
      out.decrements = tree.relaxations();
      return out;
    }
    case Algo::Warmup: {
      if (script.max_weight() > 1)
        throw std::invalid_argument("warmup requires a unit-weight script");
      WarmupTree tree(script.n, script.source, opt.eps);
      for (const auto& e : script.events) {
        if (e.kind == UpdateEvent::Kind::Insert) {
          tree.insert_edge(e.u, e.v);
          continue;
        }
        if (e.kind == UpdateEvent::Kind::PathQuery)
          throw std::invalid_argument("warmup does not answer path queries");
        QueryAnswer a;
        a.t = e.t;
        a.dist = tree.dist(e.t);
        out.answers.push_back(std::move(a));
      }
      out.m_final = tree.graph().m();
      out.decrements = tree.decrements();
      out.iscan_total = tree.scans();
      return out;
    }
    case Algo::Oracle: {
      DynGraph g(script.n, script.source);
      for (const auto& e : script.events) {
        if (e.kind == UpdateEvent::Kind::Insert) {
          g.insert_or_relax(e.u, e.v, e.w);
          continue;
        }
        out.answers.push_back(detail::oracle_answer(g, e));
      }
      out.m_final = g.m();
      return out;
    }
  }
  throw std::logic_error("unknown algorithm");
}

// ---------------------------------------------------------------------------
// Lockstep verification.

struct VerifyOptions {
  double eps = 0.25;
  // Full all-vertex comparison runs on every check_every-th event (and on
  // every query event regardless). 1 = check after each event.
  int64_t check_every = 1;
  std::optional<double> test_constants;  // multiplier, as in RunOptions
};

struct VerifyReport {
  bool ok = true;
  int64_t events = 0;   // events replayed
  int64_t checks = 0;   // vertex comparisons performed
  int64_t queries = 0;  // query events seen
  std::string message;  // empty when ok; first violation otherwise
};

namespace detail {

// The stretch tolerance used by lockstep verification; exact algorithms are
// verified with eps = 0.
inline bool estimate_ok(Dist exact, Dist est, double eps) {
  if (exact == kInfDist) return est == kInfDist;
  if (est == kInfDist) return false;
  if (est < exact) return false;
  return static_cast<double>(est) <= (1.0 + eps) * static_cast<double>(exact) + 1e-9;
}

inline std::string invariant_dump(const SsspEngine& eng, const DynGraph& g) {
  std::string dump;
  for (int b = 0; b < eng.band_count(); ++b) {
    OracleResult scaled = dijkstra_scaled(g, g.source(), eng.band_desc(b).alpha);
    AuditReport rep = audit_lazy_tree(eng.band(b), g, scaled, nullptr);
    for (const auto& v : rep.violations)
      dump += "  band " + std::to_string(b) + " " + v + "\n";
  }
  if (dump.empty()) dump = "  (all per-band invariants hold)\n";
  return dump;
}

}  // namespace detail

// Replays the script on the chosen algorithm while running Dijkstra on a
// shadow copy of the graph, and stops at the first violation: an estimate
// outside [d, (1+eps)d], a query answer that disagrees with the sidecar, or
// a recorded sidecar entry that disagrees with the exact distance. The
// report's message carries the event index, the vertex, both values, and —
// for the lazy engine — a per-band invariant dump.
inline VerifyReport verify_script(const UpdateScript& script, Algo algo,
                                  const VerifyOptions& opt = {}) {
  VerifyReport rep;
  const double eps = (algo == Algo::Lazy || algo == Algo::Warmup) ? opt.eps : 0.0;

  EngineOptions eo;
  eo.eps = opt.eps;
  eo.max_weight = script.max_weight();
  eo.test_constant_multiplier = opt.test_constants;

  std::unique_ptr<SsspEngine> lazy;
  std::unique_ptr<DynGraph> es_graph;
  std::unique_ptr<EsTree> es;
  std::unique_ptr<WarmupTree> warm;
  DynGraph shadow(script.n, script.source);

  switch (algo) {
    case Algo::Lazy:
      lazy = std::make_unique<SsspEngine>(script.n, script.source, eo);
      break;
    case Algo::Es: {
      es_graph = std::make_unique<DynGraph>(script.n, script.source);
      int64_t depth = std::max<int64_t>(
          1, static_cast<int64_t>(script.n - 1) * script.max_weight());
      es = std::make_unique<EsTree>(es_graph.get(), script.source, depth);
      break;
    }
    case Algo::Warmup:
      if (script.max_weight() > 1) {
        rep.ok = false;
        rep.message = "warmup requires a unit-weight script";
        return rep;
      }
      warm = std::make_unique<WarmupTree>(script.n, script.source, opt.eps);
      break;
    case Algo::Oracle:
      break;  // shadow graph doubles as the subject
  }

  auto estimate = [&](VertexId t) -> Dist {
    switch (algo) {
      case Algo::Lazy: return lazy->dist(t);
      case Algo::Es: return es->dist(t);
      case Algo::Warmup: return warm->dist(t);
      case Algo::Oracle: return dijkstra(shadow, script.source).dist[static_cast<size_t>(t)];
    }
    return kInfDist;
  };

  auto fail = [&](int64_t event, const std::string& what) {
    rep.ok = false;
    std::string msg = "event " + std::to_string(event) + ": " + what + "\n";
    if (algo == Algo::Lazy) msg += detail::invariant_dump(*lazy, shadow);
    rep.message = std::move(msg);
  };

  size_t next_expected = 0;
  for (size_t idx = 0; idx < script.events.size(); ++idx) {
    const UpdateEvent& e = script.events[idx];
    bool is_query = e.kind != UpdateEvent::Kind::Insert;
    if (!is_query) {
      shadow.insert_or_relax(e.u, e.v, e.w);
      switch (algo) {
        case Algo::Lazy: lazy->insert(e.u, e.v, e.w); break;
        case Algo::Es: {
          auto r = es_graph->insert_or_relax(e.u, e.v, e.w);
          if (r.outcome != InsertOutcome::NoOp) es->on_insert(e.u, e.v, e.w);
          break;
        }
        case Algo::Warmup: warm->insert_edge(e.u, e.v); break;
        case Algo::Oracle: break;
      }
    }
    ++rep.events;

    bool full_check = is_query || opt.check_every <= 1 ||
                      static_cast<int64_t>(idx) % opt.check_every == 0;
    if (!full_check) continue;

    OracleResult exact = dijkstra(shadow, script.source);
    for (VertexId t = 0; t < script.n; ++t) {
      Dist est = estimate(t);
      Dist d = exact.dist[static_cast<size_t>(t)];
      ++rep.checks;
      if (!detail::estimate_ok(d, est, eps)) {
        fail(static_cast<int64_t>(idx),
             "vertex " + std::to_string(t) + ": estimate " +
                 (est == kInfDist ? std::string("inf") : std::to_string(est)) + " vs exact " +
                 (d == kInfDist ? std::string("inf") : std::to_string(d)) + " (eps " +
                 std::to_string(eps) + ")");
        return rep;
      }
    }

    if (is_query) {
      ++rep.queries;
      if (next_expected < script.expected.size()) {
        const QueryAnswer& want = script.expected[next_expected++];
        Dist d = exact.dist[static_cast<size_t>(e.t)];
        if (want.t != e.t) {
          fail(static_cast<int64_t>(idx),
               "sidecar answers query for vertex " + std::to_string(want.t) +
                   " but the script queries vertex " + std::to_string(e.t));
          return rep;
        }
        // The sidecar records exact answers; check it against Dijkstra so a
        // corrupted sidecar is reported even when the engine itself is fine.
        Dist recorded = want.is_path && !want.path.empty()
                            ? detail::path_weight(shadow, want.path)
                            : want.dist;
        if (want.is_path && !want.path.empty() &&
            (want.path.front() != script.source || want.path.back() != e.t)) {
          fail(static_cast<int64_t>(idx),
               "sidecar path for vertex " + std::to_string(e.t) +
                   " has wrong endpoints");
          return rep;
        }
        if (recorded != d) {
          fail(static_cast<int64_t>(idx),
               "sidecar mismatch for vertex " + std::to_string(e.t) + ": recorded " +
                   (recorded == kInfDist ? std::string("inf") : std::to_string(recorded)) +
                   ", exact " + (d == kInfDist ? std::string("inf") : std::to_string(d)));
          return rep;
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Bench plumbing.

struct BenchRecord {
  int32_t n = 0;
  int64_t m_final = 0;
  double eps = 0.0;
  std::string algo;
  uint64_t wall_ns = 0;
  uint64_t decrements = 0;
  uint64_t workset_inserts = 0;
  uint64_t iscan_total = 0;
  std::vector<uint64_t> per_i_scans;
};

inline const char* bench_csv_header() {
  return "n,m_final,eps,algo,wall_ns,decrements,workset_inserts,iscan_total";
}

inline std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << r.n << ',' << r.m_final << ',' << r.eps << ',' << r.algo << ',' << r.wall_ns << ','
     << r.decrements << ',' << r.workset_inserts << ',' << r.iscan_total;
  return os.str();
}

inline BenchRecord bench_script(const UpdateScript& script, Algo algo,
                                const RunOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult run = run_script(script, algo, opt);
  auto t1 = std::chrono::steady_clock::now();
  BenchRecord rec;
  rec.n = script.n;
  rec.m_final = run.m_final;
  rec.eps = opt.eps;
  rec.algo = algo_name(algo);
  rec.wall_ns =
      static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  rec.decrements = run.decrements;
  rec.workset_inserts = run.workset_inserts;
  rec.iscan_total = run.iscan_total;
  rec.per_i_scans = run.per_i_scans;
  return rec;
}

// ---------------------------------------------------------------------------
// Random script generation (self-contained RNG so output is reproducible
// across standard libraries).

namespace detail {

class SplitMix {
 public:
  explicit SplitMix(uint64_t seed) : x_(seed) {}
  uint64_t next() {
    x_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t bound) { return bound ? next() % bound : 0; }

 private:
  uint64_t x_;
};

}  // namespace detail

struct GenOptions {
  int32_t n = 64;
  Weight max_weight = 1;
  uint64_t seed = 1;
  // Every query_every-th insertion is followed by a query; 0 disables them.
  int64_t query_every = 16;
  bool path_queries = false;  // alternate path queries in with dist queries
  double density = 1.0;       // fraction of the n(n-1) ordered pairs inserted
};

// A shuffled dense (or density-thinned) insertion script with periodic
// queries at pseudo-random targets. Weights are uniform on [1, max_weight].
inline UpdateScript gen_dense_script(const GenOptions& opt) {
  if (opt.n < 1) throw std::invalid_argument("gen: n must be positive");
  if (opt.max_weight < 1) throw std::invalid_argument("gen: max_weight must be >= 1");
  if (opt.density <= 0.0 || opt.density > 1.0)
    throw std::invalid_argument("gen: density must lie in (0, 1]");

  detail::SplitMix rng(opt.seed);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(static_cast<size_t>(opt.n) * static_cast<size_t>(opt.n - 1));
  for (VertexId u = 0; u < opt.n; ++u)
    for (VertexId v = 0; v < opt.n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  for (size_t i = pairs.size(); i > 1; --i)
    std::swap(pairs[i - 1], pairs[rng.below(i)]);
  size_t keep = std::max<size_t>(
      pairs.size() ? 1 : 0,
      static_cast<size_t>(static_cast<double>(pairs.size()) * opt.density));
  pairs.resize(std::min(pairs.size(), keep));

  UpdateScript script;
  script.n = opt.n;
  script.source = 0;
  int64_t since_query = 0;
  bool path_turn = false;
  for (auto [u, v] : pairs) {
    UpdateEvent ins;
    ins.kind = UpdateEvent::Kind::Insert;
    ins.u = u;
    ins.v = v;
    ins.w = static_cast<Weight>(1 + rng.below(static_cast<uint64_t>(opt.max_weight)));
    script.events.push_back(ins);
    if (opt.query_every > 0 && ++since_query >= opt.query_every) {
      since_query = 0;
      UpdateEvent q;
      q.kind = opt.path_queries && path_turn ? UpdateEvent::Kind::PathQuery
                                             : UpdateEvent::Kind::DistQuery;
      q.t = static_cast<VertexId>(rng.below(static_cast<uint64_t>(opt.n)));
      path_turn = !path_turn;
      script.events.push_back(q);
    }
  }
  return script;
}

// Fills the script's expected-answer sidecar with exact answers (Dijkstra on
// the graph as of each query).
inline void attach_exact_answers(UpdateScript& script) {
  DynGraph g(script.n, script.source);
  script.expected.clear();
  for (const auto& e : script.events) {
    if (e.kind == UpdateEvent::Kind::Insert) {
      g.insert_or_relax(e.u, e.v, e.w);
      continue;
    }
    script.expected.push_back(detail::oracle_answer(g, e));
  }
}

}  // namespace incsssp
