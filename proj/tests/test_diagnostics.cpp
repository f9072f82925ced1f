#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "souvlaki/assembly.hpp"
#include "souvlaki/diagnostics.hpp"
#include "souvlaki/electrical.hpp"
#include "souvlaki/errors.hpp"
#include "souvlaki/random.hpp"
#include "souvlaki/topology.hpp"

namespace souvlaki::diagnostics {
namespace {

Graph permuted(const Graph& g, const std::vector<VertexId>& perm) {
  std::vector<Edge> e;
  for (const auto& [u, v] : g.edge_list()) e.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.num_vertices(), e);
}

std::vector<VertexId> random_perm(std::size_t n, Engine& rng) {
  std::vector<VertexId> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_below(rng, i)]);
  return p;
}

Graph random_graph(int n, double density, Engine& rng) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (uniform01(rng) < density) e.emplace_back(i, j);
    }
  }
  return Graph::from_edges(static_cast<std::size_t>(n), e);
}

// Oracle: rooted isomorphism by trying every permutation that fixes the root at 0.
bool rooted_isomorphic(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  std::vector<VertexId> p(a.num_vertices());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (const auto& [u, v] : a.edge_list()) {
      if (!b.has_edge(p[u], p[v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

// Oracle: plain scan over all quadruples.
int naive_twice_delta(const Graph& g) {
  const int n = static_cast<int>(g.num_vertices());
  std::vector<std::vector<int>> d;
  for (int v = 0; v < n; ++v) d.push_back(bfs_distances(g, v));
  int best = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (int x = c + 1; x < n; ++x) {
          std::array<int, 3> s{d[a][b] + d[c][x], d[a][c] + d[b][x], d[a][x] + d[b][c]};
          std::sort(s.begin(), s.end());
          best = std::max(best, s[2] - s[1]);
        }
      }
    }
  }
  return best;
}

TEST(BallType, InvariantUnderRelabeling) {
  const auto tree = assembly::Souvlaki::tree(2, 7);
  Engine rng = substream(1, 0);
  for (int i = 0; i < 200; ++i) {
    const auto ball = assembly::rooted_ball(tree, assembly::sample_uniform_vertex(tree, rng), 1 + i % 2);
    const BallType t = ball_type(ball.graph, ball.root);
    const auto perm = random_perm(ball.graph.num_vertices(), rng);
    const BallType u = ball_type(permuted(ball.graph, perm), perm[ball.root]);
    EXPECT_EQ(t.key, u.key);
    EXPECT_EQ(t.exact, u.exact);
    EXPECT_EQ(t.exact, t.vertices <= 60);
  }
}

TEST(BallType, ExactFormsSeparateExactlyTheIsomorphismClasses) {
  Engine rng = substream(2, 0);
  std::vector<Graph> graphs;
  for (int i = 0; i < 80; ++i) graphs.push_back(random_graph(6 + i % 2, 0.45, rng));
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i; j < graphs.size(); ++j) {
      const BallType a = ball_type(graphs[i], 0);
      const BallType b = ball_type(graphs[j], 0);
      ASSERT_TRUE(a.exact);
      EXPECT_EQ(a.key == b.key, rooted_isomorphic(graphs[i], graphs[j])) << i << " " << j;
    }
  }
}

TEST(BallType, SeparatesRegularGraphsRefinementCannot) {
  std::vector<Edge> petersen;
  std::vector<Edge> prism;
  for (int i = 0; i < 5; ++i) {
    petersen.emplace_back(i, (i + 1) % 5);
    petersen.emplace_back(i, i + 5);
    petersen.emplace_back(5 + i, 5 + (i + 2) % 5);
    prism.emplace_back(i, (i + 1) % 5);
    prism.emplace_back(i, i + 5);
    prism.emplace_back(5 + i, 5 + (i + 1) % 5);
  }
  const Graph a = Graph::from_edges(10, petersen);
  const Graph b = Graph::from_edges(10, prism);
  EXPECT_EQ(refine_colors(a, std::vector<int>(10, 0)), refine_colors(b, std::vector<int>(10, 0)));
  const std::string ka = ball_type(a, 0).key;
  const std::string kb = ball_type(b, 0).key;
  EXPECT_NE(ka, kb);
  Engine rng = substream(3, 0);
  for (int i = 0; i < 20; ++i) {
    const auto perm = random_perm(10, rng);
    EXPECT_EQ(ball_type(permuted(a, perm), perm[0]).key, ka);
    EXPECT_EQ(ball_type(permuted(b, perm), perm[0]).key, kb);
  }
}

TEST(BallType, FallsBackToHashBeyondBudget) {
  const Graph g = topology::materialize_meatball({2, 7}, topology::Part::Full);
  const BallType big = ball_type(g, 0);
  EXPECT_FALSE(big.exact);
  EXPECT_EQ(big.key.rfind("H:", 0), 0U);
  const Graph small = topology::materialize_meatball({1, 7}, topology::Part::Full);
  EXPECT_FALSE(ball_type(small, 0, TypeOptions{60, 1}).exact);
  EXPECT_TRUE(ball_type(small, 0).exact);
}

TEST(BallType, RootMatters) {
  std::vector<Edge> e{{0, 1}, {1, 2}};
  const Graph p = Graph::from_edges(3, e);
  EXPECT_NE(ball_type(p, 0).key, ball_type(p, 1).key);
  EXPECT_EQ(ball_type(p, 0).key, ball_type(p, 2).key);
}

TEST(Mtp, AdjacencyGivesAverageDegree) {
  const auto tree = assembly::assemble_Tn(2, 7);
  const MtpResult r = mtp_check(tree.graph, census_root_law(tree), TransportFunction::adjacency());
  const Rational avg(static_cast<long>(2 * tree.graph.num_edges()), static_cast<long>(tree.graph.num_vertices()));
  EXPECT_EQ(r.lhs, avg);
  EXPECT_EQ(r.rhs, avg);
}

TEST(Mtp, CensusLawIsUniform) {
  for (int n = 1; n <= 2; ++n) {
    const auto tree = assembly::assemble_Tn(n, 7);
    const RootLaw law = census_root_law(tree);
    for (const Rational& p : law) ASSERT_EQ(p, Rational(1, static_cast<long>(tree.graph.num_vertices())));
  }
}

TEST(Mtp, RandomInvariantFunctionsBalanceExactly) {
  const auto tree = assembly::assemble_Tn(2, 7);
  const RootLaw law = census_root_law(tree);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const int radius = 1 + static_cast<int>(i % 2);
    const MtpResult r = mtp_check(tree.graph, law, TransportFunction::random(radius, 1000 + i));
    EXPECT_EQ(r.lhs, r.rhs) << r.function;
    EXPECT_GT(r.lhs, 0);
  }
}

TEST(Mtp, BiasedRootBreaksIt) {
  const auto tree = assembly::assemble_Tn(2, 7);
  const MtpResult biased = mtp_check(tree.graph, degree_biased_law(tree.graph), TransportFunction::uphill());
  EXPECT_NE(biased.lhs, biased.rhs);
  const MtpResult uniform = mtp_check(tree.graph, census_root_law(tree), TransportFunction::uphill());
  EXPECT_EQ(uniform.lhs, uniform.rhs);
}

TEST(Mtp, RandomFunctionsAreInvariant) {
  // Same value on isomorphic doubly rooted configurations: relabel and compare the multiset of
  // per-vertex transported masses.
  const auto tree = assembly::assemble_Tn(1, 7);
  Engine rng = substream(4, 0);
  const auto perm = random_perm(tree.graph.num_vertices(), rng);
  const Graph h = permuted(tree.graph, perm);
  const RootLaw uniform(tree.graph.num_vertices(), Rational(1, static_cast<long>(tree.graph.num_vertices())));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = TransportFunction::random(2, s);
    EXPECT_EQ(mtp_check(tree.graph, uniform, f).lhs, mtp_check(h, uniform, f).lhs);
  }
  const auto ta = rooted_type_hashes(tree.graph, 2);
  const auto tb = rooted_type_hashes(h, 2);
  for (std::size_t v = 0; v < ta.size(); ++v) EXPECT_EQ(ta[v], tb[perm[v]]);
}

TEST(Lwc, EqualLevelsAgreeWithinNoise) {
  const LwcReport r = lwc_diagnostic(1, 7, 2, 2, 3000, 5);
  EXPECT_LE(r.n1_n2.value, r.n1_n2.radius);
  EXPECT_LE(r.max_root_degree, 15);
  EXPECT_EQ(r.hash_collisions, 0);
}

TEST(Lwc, DeeperTreesAreCloserToTheLimit) {
  const LwcReport r = lwc_diagnostic(1, 7, 2, 3, 4000, 6);
  EXPECT_GE(r.n1_limit.value, r.n2_limit.value - r.n2_limit.radius);
  EXPECT_LE(r.max_root_degree, 15);
  for (const auto* types : {&r.types_n1, &r.types_n2, &r.types_limit}) {
    long total = 0;
    for (const auto& [key, c] : *types) total += c;
    EXPECT_EQ(total, 4000);
  }
}

TEST(Lwc, Deterministic) {
  const LwcReport a = lwc_diagnostic(1, 7, 2, 3, 300, 9);
  const LwcReport b = lwc_diagnostic(1, 7, 2, 3, 300, 9);
  EXPECT_EQ(a.types_n1, b.types_n1);
  EXPECT_EQ(a.types_limit, b.types_limit);
  EXPECT_EQ(a.n1_limit.value, b.n1_limit.value);
}

TEST(TotalVariation, Basics) {
  const std::map<std::string, long> a{{"x", 5}, {"y", 5}};
  const std::map<std::string, long> b{{"y", 10}};
  EXPECT_DOUBLE_EQ(total_variation(a, 10, b, 10).value, 0.5);
  EXPECT_DOUBLE_EQ(total_variation(a, 10, a, 10).value, 0.0);
}

TEST(Delta, TreesAreZero) {
  const Graph m1 = topology::materialize_meatball({1, 7}, topology::Part::Full);
  const auto spine = assembly::spine_truncation(2, 7);
  for (auto strategy : {electrical::TreeStrategy::Bfs, electrical::TreeStrategy::Dfs, electrical::TreeStrategy::Random}) {
    const Graph small = electrical::tree_graph(electrical::spanning_tree(m1, 0, strategy, 3));
    EXPECT_EQ(gromov_delta(small, DeltaMode::Exact).twice_delta, 0);
    const Graph t = electrical::tree_graph(electrical::spanning_tree(spine.graph, spine.source(), strategy, 3));
    EXPECT_EQ(gromov_delta(t, DeltaMode::Sampled, 20000, 1).twice_delta, 0);
  }
  Engine rng = substream(8, 0);
  std::vector<Edge> e;
  for (int v = 1; v < 250; ++v) e.emplace_back(static_cast<VertexId>(uniform_below(rng, v)), v);
  const DeltaStats s = gromov_delta(Graph::from_edges(250, e), DeltaMode::Exact);
  EXPECT_EQ(s.twice_delta, 0);
  EXPECT_EQ(s.delta(), 0);
}

TEST(Delta, MatchesNaiveScan) {
  Engine rng = substream(9, 0);
  for (int i = 0; i < 20; ++i) {
    const Graph r = random_graph(14 + i % 7, 0.12, rng);
    std::vector<Edge> e = r.edge_list();
    for (VertexId v = 1; v < static_cast<VertexId>(r.num_vertices()); ++v) e.emplace_back(static_cast<VertexId>(uniform_below(rng, v)), v);
    const Graph g = Graph::from_edges(r.num_vertices(), e);
    EXPECT_EQ(gromov_delta(g, DeltaMode::Exact).twice_delta, naive_twice_delta(g)) << i;
  }
  for (int n : {4, 5, 8, 9, 12}) {
    std::vector<Edge> e;
    for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    const Graph c = Graph::from_edges(static_cast<std::size_t>(n), e);
    EXPECT_EQ(gromov_delta(c, DeltaMode::Exact).twice_delta, naive_twice_delta(c)) << n;
  }
  const Graph m1 = topology::materialize_meatball({1, 7}, topology::Part::Full);
  EXPECT_EQ(gromov_delta(m1, DeltaMode::Exact).twice_delta, naive_twice_delta(m1));
}

TEST(Delta, SampledNeverExceedsExact) {
  const Graph m1 = topology::materialize_meatball({1, 7}, topology::Part::Full);
  std::vector<Edge> e;
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      if (i + 1 < 12) e.emplace_back(12 * i + j, 12 * (i + 1) + j);
      if (j + 1 < 12) e.emplace_back(12 * i + j, 12 * i + j + 1);
    }
  }
  const Graph sub = Graph::from_edges(144, e);
  for (const Graph* g : {&m1, &sub}) {
    const DeltaStats exact = gromov_delta(*g, DeltaMode::Exact);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DeltaStats s = gromov_delta(*g, DeltaMode::Sampled, 20000, seed);
      EXPECT_LE(s.twice_delta, exact.twice_delta);
      EXPECT_EQ(s.quadruples, 20000U);
    }
  }
}

TEST(Delta, WitnessRealizesTheValue) {
  const Graph m1 = topology::materialize_meatball({1, 7}, topology::Part::Full);
  const DeltaStats s = gromov_delta(m1, DeltaMode::Exact);
  ASSERT_EQ(s.witness.size(), 4U);
  std::vector<std::vector<int>> d;
  for (VertexId v : s.witness) d.push_back(bfs_distances(m1, v));
  const auto& w = s.witness;
  std::array<int, 3> sums{d[0][w[1]] + d[2][w[3]], d[0][w[2]] + d[1][w[3]], d[0][w[3]] + d[1][w[2]]};
  std::sort(sums.begin(), sums.end());
  EXPECT_EQ(sums[2] - sums[1], s.twice_delta);
}

TEST(Delta, Guards) {
  const Graph g = topology::materialize_meatball({1, 7}, topology::Part::Full);
  EXPECT_THROW(gromov_delta(g, DeltaMode::Exact, 0, 0, "", 10), BudgetExceeded);
  EXPECT_THROW(gromov_delta(g, DeltaMode::Sampled, 0), InvalidArgument);
  EXPECT_THROW(gromov_delta(Graph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}}), DeltaMode::Exact), InvalidArgument);
  EXPECT_THROW(parse_delta_mode("fast"), InvalidArgument);
}

}  // namespace
}  // namespace souvlaki::diagnostics
