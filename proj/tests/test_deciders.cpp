#include <gtest/gtest.h>

#include <numeric>

#include "factorlab/corpus.hpp"
#include "factorlab/deciders.hpp"
#include "factorlab/witness_check.hpp"
#include "oracles.hpp"

using namespace factorlab;

namespace {

ShadowColoring coloring_of(std::initializer_list<std::tuple<Vertex, Vertex, Color>> list) {
  ShadowColoring c;
  for (const auto& [a, b, color] : list) c.colors[{a, b}] = color;
  return c;
}

std::vector<Vertex> random_perm(int n, Rng& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
  return perm;
}

}  // namespace

TEST(ForcedColoring, Examples) {
  const auto c = forced_coloring(corpus::single_edge(), Ordering{{0, 1, 2}});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, coloring_of({{0, 1, Color::red}, {0, 2, Color::blue}, {1, 2, Color::green}}));
  EXPECT_FALSE(forced_coloring(corpus::k4_minus(), Ordering{{0, 1, 2, 3}}));
  const auto empty = forced_coloring(Hypergraph(3, 4, {}), Ordering{{3, 2, 1, 0}});
  ASSERT_TRUE(empty);
  EXPECT_TRUE(empty->colors.empty());
  EXPECT_THROW((void)forced_coloring(Hypergraph(4, 4, {{0, 1, 2, 3}}), Ordering{{0, 1, 2, 3}}), std::invalid_argument);
}

TEST(ForcedColoring, MatchesOracleOnEveryOrdering) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const auto f = oracle::random_3graph(5, rng);
    std::vector<Vertex> order{0, 1, 2, 3, 4};
    do {
      EXPECT_EQ(forced_coloring(f, Ordering{order}).has_value(), oracle::ordering_consistent(f, order));
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(TuranZero, Examples) {
  const auto edge = decide_turan_zero_3(corpus::single_edge());
  EXPECT_TRUE(edge.verdict);
  EXPECT_EQ(std::get<OrderingWitness>(edge.witness).ordering.sequence, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_FALSE(decide_turan_zero_3(corpus::k4_minus()).verdict);
  const auto two = decide_turan_zero_3(corpus::two_disjoint_edges());
  ASSERT_TRUE(two.verdict);
  EXPECT_TRUE(validate_ordering_witness(corpus::two_disjoint_edges(), std::get<OrderingWitness>(two.witness)));
  EXPECT_TRUE(forced_coloring(corpus::two_disjoint_edges(), Ordering{{0, 1, 2, 3, 4, 5}}));
  EXPECT_THROW((void)decide_turan_zero_3(Hypergraph(4, 4, {})), std::invalid_argument);
}

TEST(TuranZero, AgreesWithFactorialScan) {
  for (int f = 3; f <= 4; ++f)
    for (const auto& h : oracle::all_3graphs(f)) EXPECT_EQ(decide_turan_zero_3(h).verdict, oracle::turan_zero(h));
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto h = oracle::random_3graph(6, rng);
    const auto r = decide_turan_zero_3(h);
    EXPECT_EQ(r.verdict, oracle::turan_zero(h));
    if (r.verdict) {
      EXPECT_TRUE(validate_ordering_witness(h, std::get<OrderingWitness>(r.witness)));
    }
  }
}

TEST(LinkDisjoint, Examples) {
  const auto edge = decide_linkdisjoint_kpartite(corpus::single_edge(4));
  EXPECT_TRUE(edge.verdict);
  const auto path = decide_linkdisjoint_kpartite(corpus::loose_path());
  ASSERT_TRUE(path.verdict);
  const auto& w = std::get<LinkDisjointWitness>(path.witness);
  EXPECT_EQ(w.vstar, 0);
  EXPECT_TRUE(validate_linkdisjoint_witness(corpus::loose_path(), w));
  EXPECT_FALSE(decide_linkdisjoint_kpartite(corpus::k222()).verdict);
  EXPECT_THROW((void)decide_linkdisjoint_kpartite(corpus::k4()), std::invalid_argument);
}

TEST(LinkDisjoint, AgreesWithBruteForce) {
  Rng rng(41);
  for (int t = 0; t < 400; ++t) {
    // Random subgraph of a complete 3-partite graph on 7 vertices.
    std::vector<int> part(7);
    for (auto& p : part) p = static_cast<int>(rng.below(3));
    std::vector<VertexSet> edges;
    for_each_combination<Vertex>(7, 3, [&](const VertexSet& e) {
      const bool rainbow = part[static_cast<std::size_t>(e[0])] != part[static_cast<std::size_t>(e[1])] &&
                           part[static_cast<std::size_t>(e[0])] != part[static_cast<std::size_t>(e[2])] &&
                           part[static_cast<std::size_t>(e[1])] != part[static_cast<std::size_t>(e[2])];
      if (rainbow && rng.coin()) edges.push_back(e);
    });
    const Hypergraph h(3, 7, edges);
    const auto r = decide_linkdisjoint_kpartite(h);
    EXPECT_EQ(r.verdict, oracle::link_disjoint(h));
    if (r.verdict) {
      EXPECT_TRUE(validate_linkdisjoint_witness(h, std::get<LinkDisjointWitness>(r.witness)));
    }
  }
}

TEST(CoverPartition, Examples) {
  const auto edge = decide_cover_partition_3(corpus::single_edge());
  ASSERT_TRUE(edge.verdict);
  const auto& we = std::get<CoverWitness3>(edge.witness);
  EXPECT_EQ(we.vstar, 0);
  EXPECT_EQ(we.x, (VertexSet{1}));
  EXPECT_EQ(we.y, (VertexSet{2}));

  const auto k222 = decide_cover_partition_3(corpus::k222());
  EXPECT_FALSE(k222.verdict);
  EXPECT_TRUE(k222.details.contains("refutation"));

  const auto cherry = decide_cover_partition_3(corpus::cherry());
  ASSERT_TRUE(cherry.verdict);
  const auto& wc = std::get<CoverWitness3>(cherry.witness);
  EXPECT_EQ(wc.vstar, 0);
  EXPECT_EQ(wc.x, (VertexSet{1, 3}));
  EXPECT_EQ(wc.y, (VertexSet{2, 4}));
  EXPECT_TRUE(validate_cover_witness3(corpus::cherry(), wc));
  EXPECT_TRUE(validate_cover_witness3(corpus::cherry(), CoverWitness3{0, {1, 3}, {2, 4}}));
  EXPECT_FALSE(validate_cover_witness3(corpus::cherry(), CoverWitness3{0, {1, 2}, {3, 4}}));
}

TEST(CoverPartition, AgreesWithBruteForceAndValidates) {
  for (int f = 3; f <= 5; ++f) {
    for (const auto& h : oracle::all_3graphs(f)) {
      const auto r = decide_cover_partition_3(h);
      ASSERT_EQ(r.verdict, oracle::cover_partition(h)) << to_json(r).dump();
      if (r.verdict) {
        EXPECT_TRUE(validate_cover_witness3(h, std::get<CoverWitness3>(r.witness)));
      }
    }
  }
}

TEST(CoverPartition, FlagsIsolatedVertices) {
  const Hypergraph f(3, 4, {{0, 1, 2}});
  const auto r = decide_cover_partition_3(f);
  EXPECT_TRUE(r.verdict);
  EXPECT_NE(std::find(r.flags.begin(), r.flags.end(), "isolated_vertices_present"), r.flags.end());
  EXPECT_TRUE(validate_cover_witness3(f, std::get<CoverWitness3>(r.witness)));
}

TEST(Factor3, Examples) {
  for (const auto& f : {corpus::single_edge(), corpus::loose_path(), corpus::cherry()}) {
    const auto r = decide_factor_3(f);
    ASSERT_TRUE(r.verdict);
    const auto& w = std::get<Factor3Witness>(r.witness);
    EXPECT_TRUE(validate_ordering_witness(f, w.turan_zero));
    EXPECT_TRUE(validate_cover_witness3(f, w.cover));
    EXPECT_TRUE(validate_ordering_witness(f, w.compatible));
  }
  const auto k222 = decide_factor_3(corpus::k222());
  EXPECT_FALSE(k222.verdict);
  EXPECT_EQ(k222.details["refutation"]["failing_clauses"], nlohmann::json::array({"cover_partition"}));
  const auto k4m = decide_factor_3(corpus::k4_minus());
  EXPECT_FALSE(k4m.verdict);
  const auto clauses = k4m.details["refutation"]["failing_clauses"];
  EXPECT_NE(std::find(clauses.begin(), clauses.end(), "turan_zero"), clauses.end());
}

TEST(Factor3, JsonShape) {
  const auto j = to_json(decide_factor_3(corpus::cherry()));
  for (const char* key : {"property", "verdict", "witness", "flags", "stats"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["property"], "factor3");
  EXPECT_TRUE(j["witness"].contains("cover_partition"));
  EXPECT_TRUE(to_json(decide_factor_3(corpus::k222()))["witness"].is_null());
}

TEST(PartitionK, Examples) {
  for (int k = 3; k <= 5; ++k) {
    const auto f = corpus::single_edge(k);
    const auto r = decide_partition_condition_k(f);
    ASSERT_TRUE(r.verdict) << k;
    EXPECT_TRUE(validate_partition_witness_k(f, std::get<PartitionWitnessK>(r.witness)));
  }
  EXPECT_FALSE(decide_partition_condition_k(corpus::k222()).verdict);
  const auto cherry = decide_partition_condition_k(corpus::cherry());
  ASSERT_TRUE(cherry.verdict);
  const auto& w = std::get<PartitionWitnessK>(cherry.witness);
  EXPECT_EQ(w.vstar, 0);
  EXPECT_EQ(w.parts, (std::vector<VertexSet>{{1, 3}, {2, 4}}));
  EXPECT_THROW((void)decide_partition_condition_k(Hypergraph(2, 3, {{0, 1}})), std::invalid_argument);
}

TEST(PartitionK, ConjecturalFlagForLargerK) {
  const auto r = decide_partition_condition_k(corpus::single_edge(4));
  EXPECT_NE(std::find(r.flags.begin(), r.flags.end(), "conjectural_for_k_ge_4"), r.flags.end());
}

TEST(PartitionK, AgreesWithBruteForce) {
  for (const auto& h : oracle::all_3graphs(5)) {
    const auto r = decide_partition_condition_k(h);
    ASSERT_EQ(r.verdict, oracle::partition_condition(h));
    if (r.verdict) {
      EXPECT_TRUE(validate_partition_witness_k(h, std::get<PartitionWitnessK>(r.witness)));
    }
  }
  Rng rng(77);
  for (int t = 0; t < 150; ++t) {
    std::vector<VertexSet> edges;
    for_each_combination<Vertex>(6, 4, [&](const VertexSet& e) {
      if (rng.below(5) == 0) edges.push_back(e);
    });
    const Hypergraph h(4, 6, edges);
    const auto r = decide_partition_condition_k(h);
    EXPECT_EQ(r.verdict, oracle::partition_condition(h));
    if (r.verdict) {
      EXPECT_TRUE(validate_partition_witness_k(h, std::get<PartitionWitnessK>(r.witness)));
    }
  }
}

TEST(PartitionK, CoverPartitionImpliesPartitionCondition) {
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const auto h = oracle::random_3graph(6, rng);
    if (decide_cover_partition_3(h).verdict) {
      EXPECT_TRUE(decide_partition_condition_k(h).verdict);
    }
  }
}

TEST(PartitionK, EquivalentToCoverPartitionForThreeGraphs) {
  for (const auto& h : oracle::all_3graphs(5))
    EXPECT_EQ(decide_partition_condition_k(h).verdict, decide_cover_partition_3(h).verdict);
}

TEST(CompatibleEnumeration, Examples) {
  const auto edge = build_compatible_enumeration(corpus::single_edge(), CoverWitness3{0, {1}, {2}});
  EXPECT_EQ(edge.ordering.sequence, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(edge.coloring, coloring_of({{0, 1, Color::red}, {0, 2, Color::blue}, {1, 2, Color::green}}));

  const auto cherry = build_compatible_enumeration(corpus::cherry(), CoverWitness3{0, {1, 3}, {2, 4}});
  EXPECT_TRUE(validate_ordering_witness(corpus::cherry(), cherry));
  EXPECT_EQ(cherry.ordering.sequence.front(), 0);
  EXPECT_TRUE(forced_coloring(corpus::cherry(), Ordering{{0, 1, 3, 2, 4}}));

  EXPECT_THROW((void)build_compatible_enumeration(corpus::k222(), CoverWitness3{0, {2, 3}, {1, 4, 5}}), PreconditionError);
}

TEST(CompatibleEnumeration, RequiresConditionOne) {
  // Satisfies the cover condition but has no consistent ordering.
  for (const auto& h : oracle::all_3graphs(5)) {
    const auto cover = decide_cover_partition_3(h);
    if (!cover.verdict || oracle::turan_zero(h)) continue;
    EXPECT_THROW((void)build_compatible_enumeration(h, std::get<CoverWitness3>(cover.witness)), PreconditionError);
    return;
  }
  GTEST_SKIP() << "no f = 5 graph with condition (ii) but not (i)";
}

TEST(NoMonotoneLinkPath, Examples) {
  EXPECT_TRUE(check_observation_4_1(corpus::single_edge(), Ordering{{0, 1, 2}}));
  EXPECT_THROW((void)check_observation_4_1(corpus::k4_minus(), Ordering{{0, 1, 2, 3}}), std::invalid_argument);
  EXPECT_TRUE(check_observation_4_1(corpus::two_disjoint_edges(), Ordering{{0, 1, 2, 3, 4, 5}}));
}

TEST(NoMonotoneLinkPath, HoldsOnEveryConsistentOrdering) {
  Rng rng(52);
  for (int t = 0; t < 60; ++t) {
    const auto h = oracle::random_3graph(5, rng);
    std::vector<Vertex> order{0, 1, 2, 3, 4};
    do {
      if (oracle::ordering_consistent(h, order)) {
        EXPECT_TRUE(check_observation_4_1(h, Ordering{order}));
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(Invariance, VerdictsUnderRelabeling) {
  Rng rng(99);
  for (int t = 0; t < 150; ++t) {
    const auto h = oracle::random_3graph(6, rng);
    const auto g = relabel(h, random_perm(6, rng));
    EXPECT_EQ(decide_turan_zero_3(h).verdict, decide_turan_zero_3(g).verdict);
    EXPECT_EQ(decide_cover_partition_3(h).verdict, decide_cover_partition_3(g).verdict);
    EXPECT_EQ(decide_factor_3(h).verdict, decide_factor_3(g).verdict);
    EXPECT_EQ(decide_partition_condition_k(h).verdict, decide_partition_condition_k(g).verdict);
  }
}

TEST(Determinism, SameInputSameWitness) {
  const auto a = to_json(decide_factor_3(corpus::cherry()));
  const auto b = to_json(decide_factor_3(corpus::cherry()));
  EXPECT_EQ(a["witness"], b["witness"]);
}
