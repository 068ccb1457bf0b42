#include <gtest/gtest.h>

#include <random>

#include "kbroadcast/bounds.hpp"
#include "oracles.hpp"

using namespace kbroadcast;

TEST(IntegerDivision, FloorAndCeilingWithSigns) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(ceil_div(7, 2), 4);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(floor_div(-6, 3), -2);
  EXPECT_EQ(ceil_div(-6, 3), -2);
  EXPECT_EQ(ceil_div(0, 5), 0);
}

TEST(UpperBound, ThreeRegimes) {
  EXPECT_EQ(upper_bound(12, 3, 4), 5);
  EXPECT_EQ(upper_bound(10, 1, 3), 5);
  EXPECT_EQ(upper_bound(10, 5, 3), 4);
  EXPECT_EQ(upper_bound(9, 2, 3), 4);  // ceil(4*9/9)
  EXPECT_EQ(upper_bound(1, 1, 0), 1);
}

TEST(UpperBound, Errors) {
  EXPECT_THROW(upper_bound(0, 1, 0), ValidationError);
  EXPECT_THROW(upper_bound(5, 0, 2), ValidationError);
  EXPECT_THROW(upper_bound(5, 1, -1), ValidationError);
  EXPECT_THROW(upper_bound(5, 1, 6), ValidationError);
}

TEST(UpperBound, LargeOrdersAreExact) {
  const std::int64_t n = 1'000'000'000;
  EXPECT_EQ(upper_bound(n, 3, n / 2), 416'666'667);  // ceil(5n/12)
  EXPECT_EQ(eq1_bound(n, 999'999), (1'000'001LL * n + 2'999'999) / 3'000'000);
  EXPECT_EQ(upper_bound(n, 1, 10), 500'000'000);
  EXPECT_EQ(upper_bound(n, 10, 10), 333'333'334);
}

TEST(UpperBound, ExtremalFamilyArithmetic) {
  for (std::int64_t k = 3; k <= 1000; ++k) EXPECT_EQ(eq1_bound(3 * k + 3, k), k + 2);
}

TEST(CeilingLemma, Examples) {
  EXPECT_TRUE(ceiling_lemma_holds(1, 3, 1, 3, 9));
  EXPECT_TRUE(ceiling_lemma_holds(2, 5, 1, 2, 11));
  EXPECT_TRUE(ceiling_lemma_holds(0, 1, 1, 1, 5));
}

TEST(CeilingLemma, Preconditions) {
  EXPECT_THROW(ceiling_lemma_holds(1, 0, 1, 1, 1), ValidationError);
  EXPECT_THROW(ceiling_lemma_holds(1, 1, 1, 0, 1), ValidationError);
  EXPECT_THROW(ceiling_lemma_holds(2, 3, 1, 3, 1), ValidationError);
}

TEST(CeilingLemma, RandomTuples) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> small(-50, 50), positive(1, 60);
  int checked = 0;
  while (checked < 10000) {
    const std::int64_t b = positive(rng), d = positive(rng), c = small(rng), n = small(rng) * 7;
    // Largest a with a/b <= c/d, minus a random slack.
    const std::int64_t a = static_cast<std::int64_t>(floor_div(Wide(c) * b, d)) - positive(rng) % 4;
    ASSERT_TRUE(ceiling_lemma_holds(a, b, c, d, n)) << a << " " << b << " " << c << " " << d << " " << n;
    ++checked;
  }
}

TEST(TreeAudit, TwelveVerticesAtK3) {
  auto report = audit_tree_bound(12, 3);
  auto s = report.summary();
  EXPECT_EQ(s.violations, 0u);
  EXPECT_GT(s.instances, 0u);
  ASSERT_FALSE(s.tight.empty());
  EXPECT_EQ(s.tight.front(), "T_3");
  for (const auto& row : report.rows) {
    EXPECT_GT(row.radius, 3);
    EXPECT_EQ(row.bound, eq1_bound(row.n, 3));
    EXPECT_EQ(row.tight(), row.gamma == row.bound);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    EXPECT_LE(report.rows[i - 1].n, report.rows[i].n);
}

TEST(TreeAudit, SmallOrdersAreNearlyVacuous) {
  // Radius > 3 needs diameter >= 7: P_8, P_9, and P_8 with a leaf hung on
  // one of its three interior positions up to symmetry.
  auto report = audit_tree_bound(9, 3);
  for (const auto& row : report.rows) EXPECT_GE(row.n, 8);
  EXPECT_EQ(report.rows.size(), 5u);
  EXPECT_EQ(audit_tree_bound(8, 7).rows.size(), 0u);
  EXPECT_EQ(summary_line(audit_tree_bound(8, 7).summary()), "0 instances, 0 violations, tight: []");
}

TEST(TreeAudit, Errors) {
  EXPECT_THROW(audit_tree_bound(10, 2), ValidationError);
  EXPECT_THROW(audit_tree_bound(kMaxEnumerationOrder + 1, 3), GuardExceeded);
}

TEST(TreeAudit, ParallelMatchesSerial) {
  SolveOptions opts;
  opts.workers = 3;
  auto a = audit_tree_bound(11, 3);
  auto b = audit_tree_bound(11, 3, opts);
  EXPECT_EQ(to_jsonl(a), to_jsonl(b));
}

TEST(GraphAudit, CorollaryOnRandomGraphs) {
  std::vector<NamedGraph> graphs;
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    graphs.push_back({std::to_string(seed),
                      random_connected_graph(2 + static_cast<int>(seed % 8), static_cast<int>(seed % 6), seed)});
  auto report = audit_graph_bounds(graphs, {1, 2, 3, 4});
  EXPECT_EQ(report.rows.size(), 160u);
  EXPECT_EQ(report.summary().violations, 0u);
  EXPECT_THROW(audit_graph_bounds(graphs, {0}), ValidationError);
}

TEST(ChainAudit, Examples) {
  auto p9 = audit_chain(path_graph(9));
  EXPECT_EQ(p9.chain, (std::vector<int>{3, 3, 3, 3}));
  EXPECT_TRUE(p9.monotone);
  EXPECT_TRUE(p9.endpoints_ok);
  EXPECT_EQ(p9.domination_number, 3);
  EXPECT_EQ(p9.broadcast_number, 3);
  EXPECT_FALSE(p9.strict);

  std::vector<Edge> star;
  for (int i = 1; i <= 5; ++i) star.emplace_back(0, i);
  EXPECT_EQ(audit_chain(Graph(6, star)).chain, std::vector<int>{1});

  std::vector<Edge> c6;
  for (int i = 0; i < 6; ++i) c6.emplace_back(i, (i + 1) % 6);
  auto r = audit_chain(Graph(6, c6));
  EXPECT_EQ(r.chain, (std::vector<int>{2, 2, 2}));
  EXPECT_TRUE(r.monotone);
}

TEST(ChainAudit, EndpointsMatchUncappedSearch) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_connected_graph(2 + static_cast<int>(seed % 7), static_cast<int>(seed % 4), seed);
    auto r = audit_chain(g);
    EXPECT_TRUE(r.monotone);
    EXPECT_TRUE(r.endpoints_ok);
    EXPECT_EQ(r.domination_number, oracle::naive_gamma_bk(g, 1));
    EXPECT_EQ(r.broadcast_number, oracle::naive_gamma_bk(g, g.order()));
  }
}

TEST(Reports, Serialisation) {
  BoundReport report;
  report.rows.push_back({"0,1,2", "", 3, 1, 1, 1, 1});
  report.rows.push_back({"0,1,1", "T_9", 3, 1, 1, 2, 2});
  auto s = report.summary();
  EXPECT_EQ(s.tight, (std::vector<std::string>{"T_9", "0,1,2"}));
  EXPECT_EQ(s.max_ratio_num, 1);
  EXPECT_EQ(s.max_ratio_den, 1);
  EXPECT_EQ(to_jsonl(report),
            "{\"bound\":1,\"gamma\":1,\"id\":\"0,1,2\",\"k\":1,\"n\":3,\"radius\":1,\"tight\":true}\n"
            "{\"bound\":2,\"gamma\":2,\"id\":\"0,1,1\",\"k\":1,\"n\":3,\"name\":\"T_9\",\"radius\":1,\"tight\":true}\n"
            "{\"summary\":{\"instances\":2,\"max_ratio\":[1,1],\"tight\":[\"T_9\",\"0,1,2\"],\"violations\":0}}\n");
  EXPECT_NE(to_table(report).find("2 instances, 0 violations, tight: [T_9; 0,1,2]"), std::string::npos);
}
