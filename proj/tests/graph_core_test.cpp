#include <gtest/gtest.h>

#include "incsssp/graph.hpp"
#include "test_util.hpp"

using namespace incsssp;

TEST(FloorMultiple, Examples) {
  EXPECT_EQ(floor_multiple(7, 4), 4);
  EXPECT_EQ(floor_multiple(8, 4), 8);
  EXPECT_EQ(floor_multiple(3, 8), 0);
}

TEST(FloorMultiple, Negatives) {
  EXPECT_EQ(floor_multiple(-1, 4), -4);
  EXPECT_EQ(floor_multiple(-4, 4), -4);
  EXPECT_EQ(floor_multiple(-5, 4), -8);
  EXPECT_EQ(floor_multiple(0, 8), 0);
}

TEST(FloorMultiple, RejectsNonPositiveModulus) {
  EXPECT_THROW(floor_multiple(3, 0), std::invalid_argument);
  EXPECT_THROW(floor_multiple(3, -2), std::invalid_argument);
}

TEST(FloorMultiple, Property) {
  testutil::Rng rng(12345);
  for (int i = 0; i < 20000; ++i) {
    int64_t x = rng.range(-1000000, 1000000);
    int64_t y = rng.range(1, 5000);
    int64_t f = floor_multiple(x, y);
    ASSERT_EQ(f % y, 0) << x << " " << y;
    ASSERT_LE(f, x);
    ASSERT_GT(f + y, x);
  }
}

TEST(DynGraph, InsertRelaxNoOp) {
  DynGraph g(4, 0);
  auto r1 = g.insert_or_relax(0, 1, 5);
  EXPECT_EQ(r1.outcome, InsertOutcome::New);
  EXPECT_EQ(g.m(), 1);

  auto r2 = g.insert_or_relax(0, 1, 7);  // heavier: no-op
  EXPECT_EQ(r2.outcome, InsertOutcome::NoOp);
  EXPECT_EQ(g.weight_of(0, 1), 5);

  auto r3 = g.insert_or_relax(0, 1, 5);  // equal: no-op
  EXPECT_EQ(r3.outcome, InsertOutcome::NoOp);

  auto r4 = g.insert_or_relax(0, 1, 2);  // lighter: relax
  EXPECT_EQ(r4.outcome, InsertOutcome::Relaxed);
  EXPECT_EQ(r4.old_weight, 5);
  EXPECT_EQ(g.weight_of(0, 1), 2);
  EXPECT_EQ(r4.edge_id, r1.edge_id);  // id stable across relaxations
  EXPECT_EQ(g.m(), 1);                // parallel edges collapse

  // Reverse direction is a distinct edge.
  auto r5 = g.insert_or_relax(1, 0, 9);
  EXPECT_EQ(r5.outcome, InsertOutcome::New);
  EXPECT_EQ(g.m(), 2);
}

TEST(DynGraph, AdjacencyMirrors) {
  DynGraph g(5, 0);
  g.insert_or_relax(0, 1, 3);
  g.insert_or_relax(2, 1, 4);
  g.insert_or_relax(0, 4, 1);
  g.insert_or_relax(0, 1, 2);
  ASSERT_EQ(g.out(0).size(), 2u);
  ASSERT_EQ(g.in(1).size(), 2u);
  EXPECT_EQ(g.out(0)[0].head, 1);
  EXPECT_EQ(g.out(0)[0].w, 2);  // relax visible in both mirrors
  EXPECT_EQ(g.in(1)[0].tail, 0);
  EXPECT_EQ(g.in(1)[0].w, 2);
  EXPECT_EQ(g.in(1)[1].tail, 2);
  const EdgeRecord& rec = g.edge(g.out(0)[0].edge_id);
  EXPECT_EQ(rec.tail, 0);
  EXPECT_EQ(rec.head, 1);
  EXPECT_EQ(rec.w, 2);
}

TEST(DynGraph, Validation) {
  DynGraph g(3, 0);
  EXPECT_THROW(g.insert_or_relax(0, 0, 1), std::invalid_argument);  // self-loop
  EXPECT_THROW(g.insert_or_relax(0, 3, 1), std::out_of_range);
  EXPECT_THROW(g.insert_or_relax(-1, 1, 1), std::out_of_range);
  EXPECT_THROW(g.insert_or_relax(0, 1, 0), std::invalid_argument);  // weight < 1
  EXPECT_THROW(DynGraph(0, 0), std::invalid_argument);
  EXPECT_THROW(DynGraph(3, 5), std::invalid_argument);
}

TEST(Script, ParseBasics) {
  const char* text =
      "# demo\n"
      "n 6\n"
      "s 2\n"
      "\n"
      "i 2 3        # unit weight\n"
      "i 3 4 7\n"
      "q 4\n"
      "p 4\n";
  UpdateScript s = parse_script(text);
  EXPECT_EQ(s.n, 6);
  EXPECT_EQ(s.source, 2);
  ASSERT_EQ(s.events.size(), 4u);
  EXPECT_EQ(s.events[0].kind, UpdateEvent::Kind::Insert);
  EXPECT_EQ(s.events[0].w, 1);
  EXPECT_EQ(s.events[1].w, 7);
  EXPECT_EQ(s.events[2].kind, UpdateEvent::Kind::DistQuery);
  EXPECT_EQ(s.events[2].t, 4);
  EXPECT_EQ(s.events[3].kind, UpdateEvent::Kind::PathQuery);
  EXPECT_EQ(s.insert_count(), 2);
  EXPECT_EQ(s.query_count(), 2);
  EXPECT_EQ(s.max_weight(), 7);
}

TEST(Script, ParseErrorsCarryLineNumbers) {
  auto expect_error_line = [](const char* text, int line) {
    try {
      parse_script(text);
      FAIL() << "expected ScriptParseError for: " << text;
    } catch (const ScriptParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
    }
  };
  expect_error_line("i 0 1\n", 1);            // first directive must be n
  expect_error_line("n 4\nn 5\n", 2);         // duplicate n
  expect_error_line("n 4\ni 0 0\n", 2);       // self-loop
  expect_error_line("n 4\ni 0 4\n", 2);       // vertex out of range
  expect_error_line("n 4\ni 0 1 0\n", 2);     // weight < 1
  expect_error_line("n 4\nx 1\n", 2);         // unknown directive
  expect_error_line("n 4\ni 0 1 2 3\n", 2);   // trailing tokens
  expect_error_line("n 4\nq 1\ns 0\n", 3);    // source after events
  expect_error_line("n 4\ns 1\ns 2\n", 3);    // duplicate source
  expect_error_line("n 4\nq x\n", 2);         // non-integer
  expect_error_line("", 1);                   // missing n
  expect_error_line("# only comments\n", 2);  // missing n
}

TEST(Script, RoundTripProperty) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    UpdateScript s = testutil::random_script(12, 60, seed % 3 ? 9 : 1, seed, 5);
    std::string text = serialize_script(s);
    UpdateScript back = parse_script(text);
    ASSERT_EQ(back.n, s.n);
    ASSERT_EQ(back.source, s.source);
    ASSERT_EQ(back.events.size(), s.events.size());
    for (size_t i = 0; i < s.events.size(); ++i) {
      ASSERT_EQ(back.events[i].kind, s.events[i].kind) << "seed " << seed << " event " << i;
      ASSERT_EQ(back.events[i].u, s.events[i].u);
      ASSERT_EQ(back.events[i].v, s.events[i].v);
      ASSERT_EQ(back.events[i].t, s.events[i].t);
      if (s.events[i].kind == UpdateEvent::Kind::Insert) {
        ASSERT_EQ(back.events[i].w, s.events[i].w);
      }
    }
    // And serialization is a fixed point.
    ASSERT_EQ(serialize_script(back), text);
  }
}

TEST(Answers, RoundTrip) {
  std::vector<QueryAnswer> as;
  as.push_back(QueryAnswer{false, 4, 17, {}});
  as.push_back(QueryAnswer{false, 2, kInfDist, {}});
  as.push_back(QueryAnswer{true, 5, 0, {0, 3, 5}});
  as.push_back(QueryAnswer{true, 0, 0, {0}});
  std::string text = serialize_answers(as);
  EXPECT_EQ(text, "d 4 17\nd 2 inf\nP 5 2 0 3 5\nP 0 0 0\n");
  auto back = parse_answers(text);
  ASSERT_EQ(back.size(), as.size());
  for (size_t i = 0; i < as.size(); ++i) {
    EXPECT_EQ(back[i].is_path, as[i].is_path);
    EXPECT_EQ(back[i].t, as[i].t);
    if (as[i].is_path)
      EXPECT_EQ(back[i].path, as[i].path);
    else
      EXPECT_EQ(back[i].dist, as[i].dist);
  }
}

TEST(Answers, ParseErrors) {
  EXPECT_THROW(parse_answers("z 1 2\n"), ScriptParseError);
  EXPECT_THROW(parse_answers("d 1\n"), ScriptParseError);
  EXPECT_THROW(parse_answers("P 1 2 0 1\n"), ScriptParseError);  // promised 3 vertices
  EXPECT_THROW(parse_answers("d 1 2 3\n"), ScriptParseError);    // trailing
}
