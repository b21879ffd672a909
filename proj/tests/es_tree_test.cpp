#include <gtest/gtest.h>

#include "incsssp/es_tree.hpp"
#include "incsssp/oracle.hpp"
#include "test_util.hpp"

using namespace incsssp;

namespace {

// Replays a script's insertions through (graph, tree) pairs.
struct EsHarness {
  DynGraph g;
  EsTree tree;
  EsHarness(int n, VertexId s, Dist depth) : g(n, s), tree(&g, s, depth) {}
  void insert(VertexId u, VertexId v, Weight w) {
    auto r = g.insert_or_relax(u, v, w);
    if (r.outcome != InsertOutcome::NoOp) tree.on_insert(u, v, w);
  }
};

}  // namespace

TEST(EsTree, ChainThenShortcutCascades) {
  EsHarness h(4, 0, 10);
  h.insert(0, 1, 1);
  h.insert(1, 2, 1);
  h.insert(2, 3, 1);
  EXPECT_EQ(h.tree.dist(3), 3);
  h.insert(0, 3, 1);
  EXPECT_EQ(h.tree.dist(3), 1);
  EXPECT_EQ(h.tree.dist(2), 2);  // untouched by the shortcut
  EXPECT_EQ(h.tree.path_to(3), (std::vector<VertexId>{0, 3}));
}

TEST(EsTree, WeightDecreaseCascades) {
  // Decreasing an upstream weight must ripple through the whole chain.
  EsHarness h(5, 0, 100);
  h.insert(0, 1, 10);
  h.insert(1, 2, 10);
  h.insert(2, 3, 10);
  h.insert(3, 4, 10);
  EXPECT_EQ(h.tree.dist(4), 40);
  h.insert(0, 1, 2);
  EXPECT_EQ(h.tree.dist(1), 2);
  EXPECT_EQ(h.tree.dist(4), 32);
}

TEST(EsTree, DepthTruncation) {
  EsHarness h(5, 0, 2);
  h.insert(0, 1, 1);
  h.insert(1, 2, 1);
  h.insert(2, 3, 1);
  h.insert(3, 4, 1);
  EXPECT_EQ(h.tree.dist(2), 2);
  EXPECT_EQ(h.tree.dist(3), kInfDist);  // beyond the bound
  EXPECT_EQ(h.tree.dist(4), kInfDist);
  // A shortcut that brings 3 inside the bound must revive it.
  h.insert(0, 3, 2);
  EXPECT_EQ(h.tree.dist(3), 2);
  EXPECT_EQ(h.tree.path_to(3), (std::vector<VertexId>{0, 3}));
}

TEST(EsTree, SourcePath) {
  EsHarness h(3, 1, 5);
  EXPECT_EQ(h.tree.dist(1), 0);
  EXPECT_EQ(h.tree.path_to(1), (std::vector<VertexId>{1}));
  EXPECT_TRUE(h.tree.path_to(0).empty());
}

TEST(EsTree, AgreesWithDijkstraEveryEvent) {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    for (Weight W : {Weight{1}, Weight{16}}) {
      int n = 40;
      Dist depth = static_cast<Dist>(n - 1) * W;
      EsHarness h(n, 0, depth);
      UpdateScript s = testutil::random_script(n, 500, W, seed);
      int step = 0;
      for (const auto& ev : s.events) {
        if (ev.kind != UpdateEvent::Kind::Insert) continue;
        h.insert(ev.u, ev.v, ev.w);
        auto oracle = dijkstra(h.g, 0);
        for (VertexId v = 0; v < n; ++v) {
          ASSERT_EQ(h.tree.dist(v), oracle.dist[v])
              << "seed " << seed << " W " << W << " step " << step << " vertex " << v;
        }
        ++step;
      }
    }
  }
}

TEST(EsTree, TruncatedAgreesWithTruncatedDijkstra) {
  int n = 30;
  Dist depth = 7;
  EsHarness h(n, 0, depth);
  UpdateScript s = testutil::random_script(n, 400, 3, 99);
  for (const auto& ev : s.events) {
    if (ev.kind != UpdateEvent::Kind::Insert) continue;
    h.insert(ev.u, ev.v, ev.w);
    auto oracle = dijkstra(h.g, 0);
    for (VertexId v = 0; v < n; ++v) {
      Dist want = oracle.dist[v] <= depth ? oracle.dist[v] : kInfDist;
      ASSERT_EQ(h.tree.dist(v), want) << "vertex " << v;
    }
  }
}

TEST(EsTree, PathValidity) {
  int n = 25;
  EsHarness h(n, 0, 200);
  UpdateScript s = testutil::random_script(n, 300, 9, 5);
  for (const auto& ev : s.events) {
    if (ev.kind != UpdateEvent::Kind::Insert) continue;
    h.insert(ev.u, ev.v, ev.w);
  }
  for (VertexId v = 0; v < n; ++v) {
    if (h.tree.dist(v) == kInfDist) {
      EXPECT_TRUE(h.tree.path_to(v).empty());
      continue;
    }
    auto path = h.tree.path_to(v);
    ASSERT_FALSE(path.empty());
    EXPECT_EQ(path.front(), 0);
    EXPECT_EQ(path.back(), v);
    Weight total = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      auto w = h.g.weight_of(path[i], path[i + 1]);
      ASSERT_TRUE(w.has_value());
      total += *w;
    }
    EXPECT_EQ(total, h.tree.dist(v));
  }
}

TEST(EsTree, WorkBound) {
  // Each vertex can settle at most once per distinct label value: total
  // settles <= n * (D + 2).
  int n = 20;
  Dist depth = 30;
  EsHarness h(n, 0, depth);
  UpdateScript s = testutil::random_script(n, 500, 4, 11);
  for (const auto& ev : s.events) {
    if (ev.kind != UpdateEvent::Kind::Insert) continue;
    h.insert(ev.u, ev.v, ev.w);
  }
  EXPECT_LE(h.tree.relaxations(), static_cast<uint64_t>(n) * (depth + 2));
  EXPECT_GT(h.tree.relaxations(), 0u);
}
