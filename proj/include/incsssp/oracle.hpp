#pragma once

// Reference oracles. Everything in this header is deliberately simple and
// independent of the incremental engines: Dijkstra over the current graph
// snapshot, brute-force k-cycle detection, and the brute-force triple-product
// predicate. Tests and verifiers treat these as ground truth.

#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "incsssp/graph.hpp"

namespace incsssp {

struct OracleResult {
  std::vector<Dist> dist;        // kInfDist where unreachable
  std::vector<VertexId> parent;  // -1 for source / unreachable
};

// Dijkstra with an arbitrary per-edge weight view (used to rerun the oracle
// on rescaled weights). WFn maps (Weight stored) -> Weight used, >= 1.
template <class WFn>
OracleResult dijkstra_with(const DynGraph& g, VertexId s, WFn&& wfn) {
  OracleResult r;
  r.dist.assign(g.n(), kInfDist);
  r.parent.assign(g.n(), -1);
  using Item = std::pair<Dist, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  r.dist[s] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != r.dist[u]) continue;
    for (const OutEdge& e : g.out(u)) {
      Weight w = wfn(e.w);
      if (d + w < r.dist[e.head]) {
        r.dist[e.head] = d + w;
        r.parent[e.head] = u;
        pq.emplace(r.dist[e.head], e.head);
      }
    }
  }
  return r;
}

inline OracleResult dijkstra(const DynGraph& g, VertexId s) {
  return dijkstra_with(g, s, [](Weight w) { return w; });
}

// Dijkstra on weights rounded up to multiples of alpha and divided by alpha
// (the band-local metric of the weighted engine).
inline OracleResult dijkstra_scaled(const DynGraph& g, VertexId s, Weight alpha) {
  if (alpha < 1) throw std::invalid_argument("dijkstra_scaled: alpha must be >= 1");
  return dijkstra_with(g, s, [alpha](Weight w) { return ceil_div(w, alpha); });
}

// True iff the directed graph contains a k-cycle v1 -> v2 -> ... -> vk -> v1
// with partition[v_i] == i (classes named 1..k) and v1 == start.
inline bool brute_k_cycle_through(const DynGraph& g, int k, std::span<const int> partition,
                                  VertexId start) {
  if (k < 2) throw std::invalid_argument("brute_k_cycle: k must be >= 2");
  if (static_cast<int>(partition.size()) != g.n())
    throw std::invalid_argument("brute_k_cycle: partition size mismatch");
  if (partition[start] != 1) return false;
  // DFS over class-respecting edges; depth d holds a vertex of class d+1.
  std::vector<VertexId> stack{start};
  std::vector<size_t> edge_pos{0};
  while (!stack.empty()) {
    int d = static_cast<int>(stack.size()) - 1;
    VertexId u = stack.back();
    const auto& out = g.out(u);
    bool descended = false;
    for (size_t& i = edge_pos.back(); i < out.size(); ++i) {
      VertexId v = out[i].head;
      if (d + 1 < k) {
        if (partition[v] == d + 2) {
          ++i;
          stack.push_back(v);
          edge_pos.push_back(0);
          descended = true;
          break;
        }
      } else if (v == start) {
        return true;
      }
    }
    if (!descended && !stack.empty() && edge_pos.back() >= out.size()) {
      stack.pop_back();
      edge_pos.pop_back();
    }
  }
  return false;
}

inline bool brute_k_cycle(const DynGraph& g, int k, std::span<const int> partition) {
  for (VertexId v = 0; v < g.n(); ++v)
    if (partition[v] == 1 && brute_k_cycle_through(g, k, partition, v)) return true;
  return false;
}

using BitVec = std::vector<uint8_t>;
using BitMatrix = std::vector<BitVec>;

// OR over all (i, j, k) of u[i] & v[j] & w[k] & A[i][j] & A[j][k] & A[k][i].
// A is n x n, vectors have length n; indices are 0-based here.
inline bool brute_omv3(const BitMatrix& A, const BitVec& u, const BitVec& v, const BitVec& w) {
  size_t n = A.size();
  if (u.size() != n || v.size() != n || w.size() != n)
    throw std::invalid_argument("brute_omv3: dimension mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw std::invalid_argument("brute_omv3: A is not square");
  }
  for (size_t i = 0; i < n; ++i) {
    if (!u[i]) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!v[j] || !A[i][j]) continue;
      for (size_t k = 0; k < n; ++k) {
        if (w[k] && A[j][k] && A[k][i]) return true;
      }
    }
  }
  return false;
}

}  // namespace incsssp
