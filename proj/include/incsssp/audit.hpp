#pragma once

// Structural and metric audits for LazyTree. These are the quiescent
// invariants the implementation promises between updates; the verifier and
// the test suites run them after events. All checks are brute-force on
// purpose — they must not share code paths with the structure they police.
//
// Numbered checks:
//   1  lower bound: finite estimates never undershoot the (scaled) distance
//   2  far-neighborhood closeness: |d̂(v) - d̂(u)| <= 2^{h(u)} (unweighted)
//      or 2*2^{h(u)} (weighted) for every FN member
//   3  population upper bounds: suffix counts above the current level stay
//      below threshold_hi
//   4  population lower bound: |FN(u)| >= threshold_lo(h(u))
//   5  relaxation tightness: est(v) <= est(u) + 2^{h(u)} (unweighted; h=0
//      gives the familiar single-step bound as the base case) and
//      est(v) <= est(u) + w + period(w) - 1 (weighted) for every tree edge
//   6  slot monotonicity: cache slots never move upward across audits
//   7  watch consistency: registered <=> in FN, and the registration slot is
//      the current cache index
//   8  stretch: along an oracle shortest path fully inside the tree,
//      est(t) <= dist(t) + per-edge lag slack; under production constants an
//      unweighted tree additionally obeys est(t) <= (1+eps)*dist(t) for
//      dist(t) in [tau, 2*tau)
//   9  parent soundness: parent chains reach the source, every link satisfies
//      est(parent) + w <= est(child), and the walked weight is <= est

#include <cstdint>
#include <string>
#include <vector>

#include "incsssp/graph.hpp"
#include "incsssp/lazy_tree.hpp"
#include "incsssp/oracle.hpp"

namespace incsssp {

struct AuditReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const {
    std::string out;
    for (const auto& v : violations) out += v + "\n";
    return out;
  }
};

// Carries per-edge slot history across audits of the same tree (invariant 6).
struct SlotHistory {
  std::vector<int32_t> last_slot;  // by edge id; -1 = not seen yet
};

namespace detail {

inline void violation(AuditReport& rep, int inv, const std::string& msg) {
  rep.violations.push_back("invariant " + std::to_string(inv) + ": " + msg);
}

}  // namespace detail

// `scaled` must be the oracle run on the same weight scale as the tree
// (dijkstra_scaled with the tree's alpha). History may be null.
inline AuditReport audit_lazy_tree(const LazyTree& t, const DynGraph& g,
                                   const OracleResult& scaled, SlotHistory* history) {
  AuditReport rep;
  const LazyTreeParams& p = t.params();
  int32_t n = t.n();
  int64_t cap = t.cap();

  // --- per-vertex checks: 1 ---
  for (VertexId v = 0; v < n; ++v) {
    int64_t est = t.raw_est(v);
    if (est <= cap && est < scaled.dist[v])
      detail::violation(rep, 1, "vertex " + std::to_string(v) + " est " + std::to_string(est) +
                                    " below distance " + std::to_string(scaled.dist[v]));
  }

  // --- per-edge checks: 2, 5, 6, 7 and FN population tallies ---
  std::vector<int64_t> fn_count(n, 0);
  for (size_t eid = 0; eid < t.edge_table_size(); ++eid) {
    if (!t.edge_present(static_cast<int32_t>(eid))) continue;
    const LazyTree::Edge& e = t.edge_rec(static_cast<int32_t>(eid));
    int64_t eu = t.raw_est(e.u);
    int64_t ev = t.raw_est(e.v);
    int h = t.heaviness(e.u);
    std::string tag = "edge " + std::to_string(e.u) + "->" + std::to_string(e.v) + " (w " +
                      std::to_string(e.w) + ")";

    if (e.slot < (ev > cap ? cap : ev) || e.slot > cap)
      detail::violation(rep, 6, tag + " slot " + std::to_string(e.slot) +
                                    " below head estimate " + std::to_string(ev));
    if (history) {
      if (history->last_slot.size() <= eid) history->last_slot.resize(eid + 1, -1);
      int32_t prev = history->last_slot[eid];
      if (prev >= 0 && e.slot > prev)
        detail::violation(rep, 6, tag + " slot rose " + std::to_string(prev) + " -> " +
                                      std::to_string(e.slot));
      history->last_slot[eid] = e.slot;
    }

    int64_t ci_u = floor_multiple(eu > 0 ? eu - 1 : 0, int64_t(1) << h);
    bool fn = e.slot >= ci_u && (!p.weighted || e.w < (int64_t(1) << h));
    if (fn) {
      fn_count[e.u]++;
      int64_t bound = (p.weighted ? 2 : 1) * (int64_t(1) << h);
      int64_t diff = ev > eu ? ev - eu : eu - ev;
      if (diff > bound)
        detail::violation(rep, 2, tag + " fn gap " + std::to_string(diff) + " > " +
                                      std::to_string(bound) + " at heaviness " +
                                      std::to_string(h));
    }

    bool registered = e.reg_slot >= 0;
    if (registered != fn)
      detail::violation(rep, 7, tag + (registered ? " registered but not in FN"
                                                  : " in FN but unregistered"));
    if (registered && e.reg_slot != ci_u)
      detail::violation(rep, 7, tag + " watch at " + std::to_string(e.reg_slot) +
                                    " but cache index is " + std::to_string(ci_u));

    if (!p.weighted) {
      if (ev > eu + (int64_t(1) << h))
        detail::violation(rep, 5, tag + " est gap " + std::to_string(ev - eu) +
                                      " exceeds 2^h at heaviness " + std::to_string(h));
    } else {
      int64_t lag = t.scan_period_of(e.w) - 1;
      if (ev > eu + e.w + lag)
        detail::violation(rep, 5, tag + " est " + std::to_string(ev) + " > " +
                                      std::to_string(eu) + " + w + lag " + std::to_string(lag));
    }
  }

  // --- per-vertex population checks: 3, 4 ---
  for (VertexId u = 0; u < n; ++u) {
    int h = t.heaviness(u);
    if (fn_count[u] < p.threshold_lo(h))
      detail::violation(rep, 4, "vertex " + std::to_string(u) + " FN size " +
                                    std::to_string(fn_count[u]) + " < threshold_lo(" +
                                    std::to_string(h) + ") = " +
                                    std::to_string(p.threshold_lo(h)));
    for (int i = h + 1; i <= p.logn; ++i) {
      int64_t hi = p.threshold_hi(i);
      if (hi > n - 1) break;  // unreachable population, vacuous from here up
      int64_t eu = t.raw_est(u);
      int64_t L = floor_multiple(eu > 0 ? eu - 1 : 0, int64_t(1) << i);
      int64_t count = 0;
      for (const OutEdge& oe : g.out(u)) {
        if (!t.edge_present(oe.edge_id)) continue;
        const LazyTree::Edge& e = t.edge_rec(oe.edge_id);
        if (e.slot < L) continue;
        if (p.weighted && e.w >= (int64_t(1) << i)) continue;
        ++count;
      }
      if (count > hi)
        detail::violation(rep, 3, "vertex " + std::to_string(u) + " level " + std::to_string(i) +
                                      " population " + std::to_string(count) + " > " +
                                      std::to_string(hi));
    }
  }

  // --- stretch along oracle paths: 8 ---
  for (VertexId tgt = 0; tgt < n; ++tgt) {
    if (scaled.dist[tgt] == kInfDist || tgt == t.source()) continue;
    int64_t slack = 0;
    bool in_tree = true;
    VertexId cur = tgt;
    while (cur != t.source()) {
      VertexId par = scaled.parent[cur];
      auto id = g.edge_id(par, cur);
      if (!id || !t.edge_present(*id)) {
        in_tree = false;
        break;
      }
      const LazyTree::Edge& e = t.edge_rec(*id);
      if (p.weighted)
        slack += t.scan_period_of(e.w) - 1;
      else
        slack += (int64_t(1) << t.heaviness(par)) - 1;
      cur = par;
    }
    if (!in_tree) continue;
    int64_t budget = scaled.dist[tgt] + slack;
    if (budget > cap) continue;  // not expressible; nothing promised
    if (t.raw_est(tgt) > budget)
      detail::violation(rep, 8, "vertex " + std::to_string(tgt) + " est " +
                                    std::to_string(t.raw_est(tgt)) + " > dist " +
                                    std::to_string(scaled.dist[tgt]) + " + slack " +
                                    std::to_string(slack));
    if (!p.weighted && !p.override_base.has_value() && scaled.dist[tgt] >= p.tau &&
        scaled.dist[tgt] < 2 * p.tau) {
      double lim = (1.0 + p.eps) * static_cast<double>(scaled.dist[tgt]);
      if (static_cast<double>(t.raw_est(tgt)) > lim)
        detail::violation(rep, 8, "vertex " + std::to_string(tgt) + " est " +
                                      std::to_string(t.raw_est(tgt)) + " > (1+eps)*" +
                                      std::to_string(scaled.dist[tgt]) + " in band");
    }
  }

  // --- parent soundness: 9 ---
  for (VertexId v = 0; v < n; ++v) {
    if (v == t.source() || t.raw_est(v) > cap) continue;
    int64_t walked = 0;
    VertexId cur = v;
    int hops = 0;
    bool bad = false;
    while (cur != t.source()) {
      int32_t pe = t.parent_edge(cur);
      if (pe < 0 || !t.edge_present(pe)) {
        detail::violation(rep, 9, "vertex " + std::to_string(cur) + " lacks a parent");
        bad = true;
        break;
      }
      const LazyTree::Edge& e = t.edge_rec(pe);
      if (e.v != cur) {
        detail::violation(rep, 9, "parent edge of " + std::to_string(cur) + " has wrong head");
        bad = true;
        break;
      }
      if (t.raw_est(e.u) + e.w > t.raw_est(cur)) {
        detail::violation(rep, 9, "parent link " + std::to_string(e.u) + "->" +
                                      std::to_string(cur) + " slack violated");
        bad = true;
        break;
      }
      walked += e.w;
      cur = e.u;
      if (++hops > n) {
        detail::violation(rep, 9, "parent chain from " + std::to_string(v) + " does not end");
        bad = true;
        break;
      }
    }
    if (!bad && walked > t.raw_est(v))
      detail::violation(rep, 9, "path weight " + std::to_string(walked) + " exceeds estimate " +
                                    std::to_string(t.raw_est(v)) + " at vertex " +
                                    std::to_string(v));
  }

  return rep;
}

}  // namespace incsssp
