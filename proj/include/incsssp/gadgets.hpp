#pragma once

// Generators for two incremental s-t shortest-path instance families whose
// query answers encode combinatorial detection problems. Each generator
// returns an update script (with an exact-answer sidecar) plus the per-query
// closed-form threshold and the intended detection bit; at generation time
// the script is replayed through Dijkstra and the answers are asserted to sit
// exactly on the threshold when the bit is set and strictly above otherwise.
// All gadget edges are undirected in spirit and emitted in both directions.
//
// k-cycle family: a layered copy W_1..W_k of a partitioned host graph plus a
// duplicate W_{k+1} of W_1, with an s-path and t-path hooked up one vertex
// per stage; at stage i the s1-t1 distance equals 2(N-i)+k+2 exactly when a
// partition-respecting k-cycle passes through the probed vertex.
//
// OMv3 family: four row-chain gadgets for the query vectors u, v, w, u with
// adjacency-matrix edges between consecutive gadgets, plus snaking s/t paths
// hooked one row per round; after round a of query j the s-t distance equals
// 2(n-j)n + 2(n-a+1) + 3 + 4(n+1-j) exactly when row a completes a directed
// triangle with some rows b, c selected by v^j and w^j.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "incsssp/graph.hpp"
#include "incsssp/oracle.hpp"

namespace incsssp {

inline void gadget_check(bool ok, const char* msg) {
  if (!ok) throw std::logic_error(std::string("gadget generation failed: ") + msg);
}

struct KCycleStage {
  VertexId probe = -1;  // host-graph id of v_{N+1-i}
  Dist threshold = 0;   // 2(N-i)+k+2
  bool has_cycle = false;
};

struct KCycleInstance {
  UpdateScript script;  // sidecar filled with exact replayed answers
  std::vector<KCycleStage> stages;
  int k = 0;
  VertexId s1 = -1;
  VertexId t1 = -1;
};

struct Omv3Round {
  int query = 0;       // 1-based query index (column j resp. probe l)
  int round = 0;       // 1-based round index a
  Dist threshold = 0;  // 2(n-j)n + 2(n-a+1) + 3 + 4(n+1-j)
  bool bit = false;
};

struct Omv3Instance {
  UpdateScript script;
  std::vector<Omv3Round> rounds;
  int n = 0;
};

namespace detail {

inline void emit_undirected(UpdateScript& s, VertexId a, VertexId b) {
  s.events.push_back({UpdateEvent::Kind::Insert, a, b, 1, -1});
  s.events.push_back({UpdateEvent::Kind::Insert, b, a, 1, -1});
}

// Replays the script through incremental Dijkstra, filling the sidecar with
// the exact answer of every distance query.
inline void attach_exact_sidecar(UpdateScript& s) {
  DynGraph replay(s.n, s.source);
  s.expected.clear();
  for (const UpdateEvent& e : s.events) {
    if (e.kind == UpdateEvent::Kind::Insert) {
      replay.insert_or_relax(e.u, e.v, e.w);
      continue;
    }
    gadget_check(e.kind == UpdateEvent::Kind::DistQuery, "gadget scripts only pose distance queries");
    QueryAnswer a;
    a.t = e.t;
    a.dist = dijkstra(replay, s.source).dist[e.t];
    s.expected.push_back(a);
  }
}

}  // namespace detail

// Builds the staged k-cycle probe instance from a partitioned host graph.
// `partition` assigns every host vertex a class in 1..k; host edges between
// consecutive classes (k wraps to the W_{k+1} duplicate) become layer edges.
// Stage i = 1..N (N = |class 1|) hooks s_{N+1-i} to the i-th probe and the
// probe's duplicate to t_{N+1-i}, then queries dist(s1, t1).
inline KCycleInstance gen_kcycle(const DynGraph& g, int k, std::span<const int> partition) {
  if (k < 3) throw std::invalid_argument("gen_kcycle: k must be >= 3");
  if (static_cast<int>(partition.size()) != g.n())
    throw std::invalid_argument("gen_kcycle: partition size mismatch");
  const int32_t n = g.n();
  for (VertexId v = 0; v < n; ++v) {
    if (partition[v] < 1 || partition[v] > k)
      throw std::invalid_argument("gen_kcycle: partition is not total over classes 1..k");
  }

  std::vector<VertexId> class_one;
  for (VertexId v = 0; v < n; ++v) {
    if (partition[v] == 1) class_one.push_back(v);
  }
  const int32_t N = static_cast<int32_t>(class_one.size());

  // Gadget ids: host vertices keep their ids inside their layer; duplicates
  // of class 1 follow, then the s-path, then the t-path.
  std::vector<VertexId> dup(n, -1);
  for (int32_t r = 0; r < N; ++r) dup[class_one[r]] = n + r;
  auto s_node = [&](int32_t idx1) { return n + N + (idx1 - 1); };  // s_1..s_N
  auto t_node = [&](int32_t idx1) { return n + 2 * N + (idx1 - 1); };

  KCycleInstance inst;
  inst.k = k;
  inst.script.n = n + 3 * N;
  if (N == 0) {
    // No class-1 vertices: no probes, no stages, a trivially empty script.
    inst.script.n = n;
    inst.script.source = 0;
    inst.s1 = inst.t1 = -1;
    return inst;
  }
  inst.s1 = s_node(1);
  inst.t1 = t_node(1);
  inst.script.source = inst.s1;

  UpdateScript& s = inst.script;
  for (VertexId u = 0; u < n; ++u) {
    for (const OutEdge& e : g.out(u)) {
      if (partition[u] + 1 == partition[e.head]) {
        detail::emit_undirected(s, u, e.head);
      } else if (partition[u] == k && partition[e.head] == 1) {
        detail::emit_undirected(s, u, dup[e.head]);
      }
    }
  }
  for (int32_t j = 1; j < N; ++j) {
    detail::emit_undirected(s, s_node(j), s_node(j + 1));
    detail::emit_undirected(s, t_node(j), t_node(j + 1));
  }

  for (int32_t i = 1; i <= N; ++i) {
    VertexId probe = class_one[N - i];  // v_{N+1-i} in ascending-id order
    detail::emit_undirected(s, s_node(N + 1 - i), probe);
    detail::emit_undirected(s, dup[probe], t_node(N + 1 - i));
    s.events.push_back({UpdateEvent::Kind::DistQuery, -1, -1, 1, inst.t1});
    KCycleStage st;
    st.probe = probe;
    st.threshold = 2 * (N - i) + k + 2;
    st.has_cycle = brute_k_cycle_through(g, k, partition, probe);
    inst.stages.push_back(st);
  }

  detail::attach_exact_sidecar(s);
  gadget_check(s.expected.size() == inst.stages.size(), "one answer per stage");
  for (size_t i = 0; i < inst.stages.size(); ++i) {
    const KCycleStage& st = inst.stages[i];
    Dist got = s.expected[i].dist;
    if (st.has_cycle)
      gadget_check(got == st.threshold, "cycle stage must sit exactly on the threshold");
    else
      gadget_check(got == kInfDist || got > st.threshold,
                   "cycle-free stage must sit strictly above the threshold");
  }
  return inst;
}

// Builds the OMv3 query-replay instance: matrix A (n x n, 0-based) plus at
// most n query triples (u, v, w), each vector of length n.
inline Omv3Instance gen_omv3(const BitMatrix& A,
                             const std::vector<std::array<BitVec, 3>>& queries) {
  const int32_t n = static_cast<int32_t>(A.size());
  if (n < 1) throw std::invalid_argument("gen_omv3: matrix must be nonempty");
  for (const BitVec& row : A) {
    if (static_cast<int32_t>(row.size()) != n)
      throw std::invalid_argument("gen_omv3: matrix is not square");
  }
  if (static_cast<int32_t>(queries.size()) > n)
    throw std::invalid_argument("gen_omv3: at most n online queries");
  for (const auto& q : queries) {
    for (const BitVec& vec : q) {
      if (static_cast<int32_t>(vec.size()) != n)
        throw std::invalid_argument("gen_omv3: query vectors must have length n");
    }
  }

  // Gadget g in {0: G(u), 1: G(v), 2: G(w), 3: G'(u)}; row i in [0,n); column
  // j in [0,n]. The snaking s/t paths follow, one block of n per query index.
  auto cell = [&](int g, int32_t i, int32_t j) -> VertexId {
    return g * n * (n + 1) + i * (n + 1) + j;
  };
  auto s_node = [&](int32_t l1, int32_t i1) -> VertexId {
    return 4 * n * (n + 1) + (l1 - 1) * n + (i1 - 1);
  };
  auto t_node = [&](int32_t l1, int32_t i1) -> VertexId {
    return 4 * n * (n + 1) + n * n + (l1 - 1) * n + (i1 - 1);
  };

  Omv3Instance inst;
  inst.n = n;
  UpdateScript& s = inst.script;
  s.n = 4 * n * (n + 1) + 2 * n * n;
  s.source = s_node(n, n);
  const VertexId sink = t_node(n, n);

  for (int g = 0; g < 4; ++g) {
    for (int32_t i = 0; i < n; ++i) {
      for (int32_t j = 1; j < n; ++j) detail::emit_undirected(s, cell(g, i, j), cell(g, i, j + 1));
    }
  }
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = 0; j < n; ++j) {
      if (!A[i][j]) continue;
      detail::emit_undirected(s, cell(0, i, n), cell(1, j, 0));
      detail::emit_undirected(s, cell(1, i, n), cell(2, j, 0));
      detail::emit_undirected(s, cell(2, i, n), cell(3, j, 0));
    }
  }
  for (int32_t l = 1; l <= n; ++l) {
    for (int32_t i = 1; i <= n; ++i) {
      if (i < n) {
        detail::emit_undirected(s, s_node(l, i), s_node(l, i + 1));
        detail::emit_undirected(s, t_node(l, i), t_node(l, i + 1));
      } else if (l < n) {
        detail::emit_undirected(s, s_node(l, n), s_node(l + 1, 1));
        detail::emit_undirected(s, t_node(l, n), t_node(l + 1, 1));
      }
    }
  }

  for (size_t q = 0; q < queries.size(); ++q) {
    const int32_t l = static_cast<int32_t>(q) + 1;
    const BitVec& u = queries[q][0];
    const BitVec& v = queries[q][1];
    const BitVec& w = queries[q][2];
    for (int32_t i = 0; i < n; ++i) {
      if (u[i]) {
        detail::emit_undirected(s, cell(0, i, 0), cell(0, i, l));
        detail::emit_undirected(s, cell(3, i, 0), cell(3, i, l));
      }
      if (v[i]) detail::emit_undirected(s, cell(1, i, 0), cell(1, i, l));
      if (w[i]) detail::emit_undirected(s, cell(2, i, 0), cell(2, i, l));
    }
    for (int32_t a = 1; a <= n; ++a) {
      detail::emit_undirected(s, s_node(l, a), cell(0, a - 1, 0));
      detail::emit_undirected(s, t_node(l, a), cell(3, a - 1, n));
      s.events.push_back({UpdateEvent::Kind::DistQuery, -1, -1, 1, sink});
      Omv3Round r;
      r.query = l;
      r.round = a;
      r.threshold = 2 * static_cast<Dist>(n - l) * n + 2 * (n - a + 1) + 3 + 4 * (n + 1 - l);
      BitVec pinned(n, 0);
      pinned[a - 1] = u[a - 1];
      r.bit = brute_omv3(A, pinned, v, w);
      inst.rounds.push_back(r);
    }
  }

  detail::attach_exact_sidecar(s);
  gadget_check(s.expected.size() == inst.rounds.size(), "one answer per round");
  for (size_t i = 0; i < inst.rounds.size(); ++i) {
    const Omv3Round& r = inst.rounds[i];
    Dist got = s.expected[i].dist;
    if (r.bit)
      gadget_check(got == r.threshold, "triangle round must sit exactly on the threshold");
    else
      gadget_check(got == kInfDist || got > r.threshold,
                   "triangle-free round must sit strictly above the threshold");
  }
  return inst;
}

}  // namespace incsssp
