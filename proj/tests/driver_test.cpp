#include "incsssp/driver.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "incsssp/graph.hpp"
#include "incsssp/oracle.hpp"
#include "test_util.hpp"

namespace {

using namespace incsssp;

TEST(BenchCsv, GoldenHeader) {
  EXPECT_STREQ(bench_csv_header(), "n,m_final,eps,algo,wall_ns,decrements,workset_inserts,iscan_total");
}

TEST(BenchCsv, RowMatchesHeaderColumns) {
  BenchRecord r;
  r.n = 64;
  r.m_final = 4032;
  r.eps = 0.25;
  r.algo = "lazy";
  r.wall_ns = 123456789;
  r.decrements = 10;
  r.workset_inserts = 20;
  r.iscan_total = 30;
  EXPECT_EQ(to_csv_row(r), "64,4032,0.25,lazy,123456789,10,20,30");
}

TEST(RunScript, AlgorithmsAgreeOnDistances) {
  UpdateScript s = testutil::random_script(24, 260, 1, 7101, /*query_every=*/8);
  RunOptions opt;
  opt.eps = 0.5;
  RunResult oracle = run_script(s, Algo::Oracle, opt);
  RunResult es = run_script(s, Algo::Es, opt);
  RunResult lazy = run_script(s, Algo::Lazy, opt);
  RunResult warm = run_script(s, Algo::Warmup, opt);

  ASSERT_EQ(oracle.answers.size(), es.answers.size());
  ASSERT_EQ(oracle.answers.size(), lazy.answers.size());
  ASSERT_EQ(oracle.answers.size(), warm.answers.size());
  for (size_t i = 0; i < oracle.answers.size(); ++i) {
    Dist d = oracle.answers[i].dist;
    EXPECT_EQ(es.answers[i].dist, d) << "query " << i;
    for (const RunResult* approx : {&lazy, &warm}) {
      Dist est = approx->answers[i].dist;
      if (d == kInfDist) {
        EXPECT_EQ(est, kInfDist) << "query " << i;
      } else {
        EXPECT_GE(est, d) << "query " << i;
        EXPECT_LE(static_cast<double>(est), 1.5 * static_cast<double>(d) + 1e-9)
            << "query " << i;
      }
    }
  }
}

TEST(RunScript, WeightedEsTreeStaysExact) {
  UpdateScript s = testutil::random_script(18, 220, 16, 7102, /*query_every=*/6);
  RunResult oracle = run_script(s, Algo::Oracle);
  RunResult es = run_script(s, Algo::Es);
  ASSERT_EQ(oracle.answers.size(), es.answers.size());
  for (size_t i = 0; i < oracle.answers.size(); ++i)
    EXPECT_EQ(es.answers[i].dist, oracle.answers[i].dist) << "query " << i;
}

TEST(RunScript, PathAnswersWalkTheCurrentGraph) {
  GenOptions g;
  g.n = 20;
  g.max_weight = 4;
  g.seed = 7103;
  g.query_every = 8;
  g.path_queries = true;
  g.density = 0.6;
  UpdateScript s = gen_dense_script(g);
  RunOptions opt;
  opt.eps = 0.25;

  for (Algo algo : {Algo::Lazy, Algo::Es, Algo::Oracle}) {
    RunResult run = run_script(s, algo, opt);
    RunResult oracle = run_script(s, Algo::Oracle, opt);
    ASSERT_EQ(run.answers.size(), oracle.answers.size());
    int paths_seen = 0;
    for (size_t i = 0; i < run.answers.size(); ++i) {
      if (!run.answers[i].is_path) continue;
      ++paths_seen;
      const QueryAnswer& a = run.answers[i];
      Dist d = oracle.answers[i].dist;
      if (d == kInfDist) {
        EXPECT_TRUE(a.path.empty());
        continue;
      }
      ASSERT_FALSE(a.path.empty()) << algo_name(algo) << " query " << i;
      EXPECT_EQ(a.path.front(), s.source);
      EXPECT_EQ(a.path.back(), a.t);
      EXPECT_GE(a.dist, d);
      EXPECT_LE(static_cast<double>(a.dist), 1.25 * static_cast<double>(d) + 1e-9);
    }
    EXPECT_GT(paths_seen, 0);
  }
}

TEST(RunScript, WarmupRejectsWeightsAndPaths) {
  UpdateScript weighted = testutil::random_script(8, 20, 5, 7104);
  EXPECT_THROW(run_script(weighted, Algo::Warmup), std::invalid_argument);

  UpdateScript with_path = testutil::random_script(8, 20, 1, 7105);
  UpdateEvent p;
  p.kind = UpdateEvent::Kind::PathQuery;
  p.t = 3;
  with_path.events.push_back(p);
  EXPECT_THROW(run_script(with_path, Algo::Warmup), std::invalid_argument);
}

TEST(RunScript, DeterministicCountersAndAnswers) {
  UpdateScript s = testutil::random_script(20, 240, 8, 7106, /*query_every=*/10);
  RunOptions opt;
  opt.eps = 0.3;
  RunResult a = run_script(s, Algo::Lazy, opt);
  RunResult b = run_script(s, Algo::Lazy, opt);
  EXPECT_EQ(serialize_answers(a.answers), serialize_answers(b.answers));
  EXPECT_EQ(a.decrements, b.decrements);
  EXPECT_EQ(a.workset_inserts, b.workset_inserts);
  EXPECT_EQ(a.iscan_total, b.iscan_total);
  EXPECT_EQ(a.per_i_scans, b.per_i_scans);
  EXPECT_EQ(a.m_final, b.m_final);

  // Bench rows agree on every column except the wall-clock reading.
  BenchRecord ra = bench_script(s, Algo::Lazy, opt);
  BenchRecord rb = bench_script(s, Algo::Lazy, opt);
  ra.wall_ns = 0;
  rb.wall_ns = 0;
  EXPECT_EQ(to_csv_row(ra), to_csv_row(rb));
}

TEST(VerifyScript, CleanScriptsPassForEveryAlgorithm) {
  UpdateScript s = testutil::random_script(16, 160, 1, 7107, /*query_every=*/8);
  attach_exact_answers(s);
  for (Algo algo : {Algo::Lazy, Algo::Es, Algo::Warmup, Algo::Oracle}) {
    VerifyOptions opt;
    opt.eps = 0.5;
    VerifyReport rep = verify_script(s, algo, opt);
    EXPECT_TRUE(rep.ok) << algo_name(algo) << ": " << rep.message;
    EXPECT_EQ(rep.queries, s.query_count());
    EXPECT_GT(rep.checks, 0);
  }
}

TEST(VerifyScript, WeightedLazyPassesWithinStretch) {
  UpdateScript s = testutil::random_script(14, 150, 8, 7108, /*query_every=*/8);
  attach_exact_answers(s);
  VerifyOptions opt;
  opt.eps = 0.25;
  VerifyReport rep = verify_script(s, Algo::Lazy, opt);
  EXPECT_TRUE(rep.ok) << rep.message;
}

TEST(VerifyScript, CorruptSidecarIsReported) {
  UpdateScript s = testutil::random_script(12, 120, 1, 7109, /*query_every=*/6);
  attach_exact_answers(s);
  ASSERT_FALSE(s.expected.empty());
  // Find a finite recorded answer and nudge it.
  for (auto& a : s.expected) {
    if (!a.is_path && a.dist != kInfDist) {
      a.dist += 1;
      break;
    }
  }
  VerifyReport rep = verify_script(s, Algo::Lazy, VerifyOptions{});
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("sidecar mismatch"), std::string::npos) << rep.message;
  // The report carries the event index and the per-band invariant dump.
  EXPECT_NE(rep.message.find("event "), std::string::npos);
  EXPECT_NE(rep.message.find("invariant"), std::string::npos);
}

TEST(VerifyScript, SidecarPathWithWrongEndpointsIsReported) {
  UpdateScript s;
  s.n = 4;
  s.source = 0;
  auto ins = [&](VertexId u, VertexId v) {
    UpdateEvent e;
    e.kind = UpdateEvent::Kind::Insert;
    e.u = u;
    e.v = v;
    e.w = 1;
    s.events.push_back(e);
  };
  ins(0, 1);
  ins(1, 2);
  UpdateEvent q;
  q.kind = UpdateEvent::Kind::PathQuery;
  q.t = 2;
  s.events.push_back(q);
  attach_exact_answers(s);
  ASSERT_EQ(s.expected.size(), 1u);
  s.expected[0].path = {1, 2};  // drops the source endpoint
  VerifyReport rep = verify_script(s, Algo::Es, VerifyOptions{});
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("endpoints"), std::string::npos) << rep.message;
}

TEST(VerifyScript, SampledCheckingSkipsInsertEvents) {
  UpdateScript s = testutil::random_script(16, 200, 1, 7110, /*query_every=*/50);
  attach_exact_answers(s);
  VerifyOptions full;
  VerifyOptions sampled;
  sampled.check_every = 16;
  VerifyReport a = verify_script(s, Algo::Lazy, full);
  VerifyReport b = verify_script(s, Algo::Lazy, sampled);
  EXPECT_TRUE(a.ok) << a.message;
  EXPECT_TRUE(b.ok) << b.message;
  EXPECT_LT(b.checks, a.checks);
  EXPECT_EQ(a.queries, b.queries);
}

TEST(VerifyScript, EstimatePredicate) {
  using incsssp::detail::estimate_ok;
  EXPECT_TRUE(estimate_ok(10, 10, 0.0));
  EXPECT_TRUE(estimate_ok(10, 12, 0.25));
  EXPECT_FALSE(estimate_ok(10, 13, 0.25));
  EXPECT_FALSE(estimate_ok(10, 9, 0.25));  // below exact is never allowed
  EXPECT_TRUE(estimate_ok(kInfDist, kInfDist, 0.25));
  EXPECT_FALSE(estimate_ok(kInfDist, 5, 0.25));
  EXPECT_FALSE(estimate_ok(5, kInfDist, 0.25));
}

TEST(GenDenseScript, ShapeAndDeterminism) {
  GenOptions g;
  g.n = 10;
  g.max_weight = 6;
  g.seed = 42;
  g.query_every = 16;
  UpdateScript a = gen_dense_script(g);
  UpdateScript b = gen_dense_script(g);
  EXPECT_EQ(serialize_script(a), serialize_script(b));
  EXPECT_EQ(a.insert_count(), 90);  // all ordered pairs of 10 vertices
  EXPECT_EQ(a.query_count(), 90 / 16);
  for (const auto& e : a.events)
    if (e.kind == UpdateEvent::Kind::Insert) {
      EXPECT_GE(e.w, 1);
      EXPECT_LE(e.w, 6);
      EXPECT_NE(e.u, e.v);
    }

  g.seed = 43;
  UpdateScript c = gen_dense_script(g);
  EXPECT_NE(serialize_script(a), serialize_script(c));

  // No duplicate ordered pairs at full density.
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : a.events)
    if (e.kind == UpdateEvent::Kind::Insert) { EXPECT_TRUE(seen.emplace(e.u, e.v).second); }
}

TEST(GenDenseScript, DensityThinsThePairList) {
  GenOptions g;
  g.n = 12;
  g.seed = 99;
  g.density = 0.25;
  g.query_every = 0;
  UpdateScript s = gen_dense_script(g);
  EXPECT_EQ(s.insert_count(), static_cast<int64_t>(12 * 11 * 0.25));
  EXPECT_EQ(s.query_count(), 0);
}

TEST(GenDenseScript, RejectsBadArguments) {
  GenOptions g;
  g.n = 0;
  EXPECT_THROW(gen_dense_script(g), std::invalid_argument);
  g.n = 4;
  g.density = 0.0;
  EXPECT_THROW(gen_dense_script(g), std::invalid_argument);
  g.density = 1.5;
  EXPECT_THROW(gen_dense_script(g), std::invalid_argument);
  g.density = 1.0;
  g.max_weight = 0;
  EXPECT_THROW(gen_dense_script(g), std::invalid_argument);
}

TEST(AttachExactAnswers, MatchesOracleRun) {
  UpdateScript s = testutil::random_script(14, 120, 5, 7111, /*query_every=*/7);
  attach_exact_answers(s);
  RunResult oracle = run_script(s, Algo::Oracle);
  ASSERT_EQ(s.expected.size(), oracle.answers.size());
  EXPECT_EQ(serialize_answers(s.expected), serialize_answers(oracle.answers));
}

}  // namespace
