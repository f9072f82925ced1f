#include <gtest/gtest.h>

#include <cmath>

#include "souvlaki/assembly.hpp"
#include "souvlaki/errors.hpp"
#include "souvlaki/flow.hpp"
#include "souvlaki/random.hpp"
#include "souvlaki/topology.hpp"
#include "souvlaki/walk.hpp"

namespace souvlaki::walk {
namespace {

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(static_cast<std::size_t>(n), e);
}

std::vector<VertexId> row_of(const topology::MeatballSpec& spec, int row) {
  const topology::MeatballIndex index(spec, topology::Part::Full);
  std::vector<VertexId> out;
  std::int64_t words = 1;
  for (int i = 0; i < row; ++i) words *= 3;
  for (std::int64_t t = 0; t < words; ++t) {
    for (std::int64_t p = 0; p < index.width(row); ++p) out.push_back(static_cast<VertexId>(index.rank(row, t, p)));
  }
  return out;
}

TEST(SpineHitting, StartOnSpineIsTrivial) {
  const auto tree = assembly::assemble_Tn(2, 7);
  const auto spine = tree.spine_vertices();
  ASSERT_FALSE(spine.empty());
  const WalkStats s = simulate_spine_hitting(tree.graph, spine.front(), 50, 10, 1);
  EXPECT_TRUE(s.trivial);
  EXPECT_EQ(s.hits, 50);
  ASSERT_FALSE(s.quantiles.empty());
  EXPECT_EQ(s.quantiles.back().second, 0);
}

TEST(SpineHitting, BushStartsHitAlmostSurely) {
  const auto tree = assembly::assemble_Tn(2, 7);
  const auto bush = bush_vertices(tree.graph);
  ASSERT_FALSE(bush.empty());
  // Nearest, farthest and seeded picks.
  const auto starts = bush_starts(tree.graph, 4, 7);
  ASSERT_EQ(starts.size(), 4U);
  const auto dist = spine_distances(tree.graph);
  for (VertexId v : bush) EXPECT_LE(dist[v], dist[starts[1]]);
  for (VertexId start : starts) {
    const WalkStats s = simulate_spine_hitting(tree.graph, start, 10000, 100000, 11);
    EXPECT_FALSE(s.trivial);
    EXPECT_GE(s.frequency(), 0.999) << tree.graph.name(start);
  }
}

TEST(SpineHitting, HorizonDoublingExtendsTrajectories) {
  const auto tree = assembly::assemble_Tn(2, 7);
  const VertexId far = bush_starts(tree.graph, 2, 1).back();
  std::int64_t previous = 0;
  for (std::int64_t h = 1; h <= 4096; h *= 2) {
    const WalkStats s = simulate_spine_hitting(tree.graph, far, 2000, h, 5);
    EXPECT_GE(s.hits, previous) << h;
    previous = s.hits;
  }
  const WalkStats a = simulate_spine_hitting(tree.graph, far, 500, 200, 9);
  const WalkStats b = simulate_spine_hitting(tree.graph, far, 500, 200, 9);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.quantiles, b.quantiles);
}

TEST(Hitting, GamblersRuin) {
  const Graph g = path(3);
  const auto nu = exact_hitting_distribution(g, 1, std::vector<VertexId>{0, 2});
  EXPECT_NEAR(nu.probability[0], 0.5, 1e-12);
  EXPECT_NEAR(nu.probability[1], 0.5, 1e-12);
  // On a path of n vertices from 1 the far end is hit with probability 1/(n-1).
  const Graph p = path(11);
  const auto mu = exact_hitting_distribution(p, 1, std::vector<VertexId>{10, 0});
  EXPECT_NEAR(mu.probability[0], 0.9, 1e-12);
  EXPECT_NEAR(mu.probability[1], 0.1, 1e-12);
}

TEST(Hitting, StartInAbsorbingSet) {
  const auto nu = exact_hitting_distribution(path(4), 2, std::vector<VertexId>{2, 3});
  EXPECT_EQ(nu.probability[0], 1.0);
  EXPECT_EQ(nu.probability[1], 0.0);
}

TEST(Hitting, UnreachableAbsorbingSetRejected) {
  const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(exact_hitting_distribution(g, 0, std::vector<VertexId>{3}), InvalidArgument);
  EXPECT_THROW(exact_hitting_distribution(g, 0, std::vector<VertexId>{}), InvalidArgument);
}

TEST(Hitting, CrossSectionsOfM2SumToOne) {
  const topology::MeatballSpec spec{2, 7};
  const Graph g = topology::materialize_meatball(spec, topology::Part::Full);
  const topology::MeatballIndex index(spec, topology::Part::Full);
  for (int row = 1; row <= 2; ++row) {
    const auto layer = row_of(spec, row);
    for (std::int64_t p = 0; p < index.width(0); p += 4) {
      const auto nu = exact_hitting_distribution(g, static_cast<VertexId>(index.rank(0, 0, p)), layer);
      EXPECT_NEAR(nu.total(), 1.0, 1e-9);
      for (double x : nu.probability) EXPECT_GE(x, -1e-15);
    }
  }
}

TEST(Hitting, GreenFunctionMatchesIndicatorSolves) {
  // Oracle: P_s(first hit = x) is the harmonic extension of the indicator of x.
  const topology::MeatballSpec spec{2, 7};
  const Graph g = topology::materialize_meatball(spec, topology::Part::Full);
  const topology::MeatballIndex index(spec, topology::Part::Full);
  const auto layer = row_of(spec, 1);
  const auto start = static_cast<VertexId>(index.rank(0, 0, 5));
  const auto nu = exact_hitting_distribution(g, start, layer);
  for (std::size_t i = 0; i < nu.absorbing.size(); ++i) {
    std::vector<double> values(nu.absorbing.size(), 0.0);
    values[i] = 1.0;
    const auto h = harmonic_extension(g, nu.absorbing, values, {1e-12});
    EXPECT_NEAR(nu.probability[i], h.values[start], 1e-9);
  }
}

TEST(Hitting, HarmonicExtensionIsHarmonic) {
  const topology::MeatballSpec spec{2, 7};
  const Graph g = topology::materialize_meatball(spec, topology::Part::Full);
  const auto top = row_of(spec, 2);
  Engine rng = substream(3, 0);
  std::vector<double> values;
  for (std::size_t i = 0; i < top.size(); ++i) values.push_back(uniform01(rng));
  const double tol = 1e-10;
  const auto h = harmonic_extension(g, top, values, {tol});
  std::vector<char> boundary(g.num_vertices(), 0);
  for (VertexId v : top) boundary[v] = 1;
  // Right-hand side norm: boundary data seen by interior vertices.
  double bnorm = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (boundary[v]) continue;
    double b = 0;
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) b += boundary[w] ? h.values[w] : 0.0;
    bnorm += b * b;
  }
  bnorm = std::sqrt(bnorm);
  int checked = 0;
  while (checked < 100) {
    const auto v = static_cast<VertexId>(uniform_below(rng, g.num_vertices()));
    if (boundary[v]) continue;
    double avg = 0;
    for (VertexId w : g.neighbors(v)) avg += h.values[w];
    avg /= g.degree(v);
    EXPECT_LE(g.degree(v) * std::abs(h.values[v] - avg), tol * bnorm);
    EXPECT_NEAR(h.values[v], avg, 1e-9);
    ++checked;
  }
}

TEST(Hitting, SimulationWithinThreeStandardErrors) {
  const topology::MeatballSpec spec{1, 7};
  const Graph g = topology::materialize_meatball(spec, topology::Part::Full);
  const auto layer = row_of(spec, 1);
  const VertexId start = 0;
  const auto nu = exact_hitting_distribution(g, start, layer, {1e-12});
  const std::int64_t runs = 100000;
  const auto counts = simulate_absorption(g, start, layer, runs, 21);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = nu.probability[i];
    const double se = std::sqrt(p * (1 - p) / runs);
    const double phat = static_cast<double>(counts[i]) / runs;
    EXPECT_LE(std::abs(phat - p), 3 * se + 1e-12) << i;
    total += counts[i];
  }
  EXPECT_EQ(total, runs);
}

TEST(RadialSymmetry, ExactOnSmallMeatballs) {
  for (int k = 1; k <= 2; ++k) {
    const SymmetryReport r = radial_symmetry_check(k);
    EXPECT_LE(r.max_deviation, 1e-9) << k;
    EXPECT_EQ(r.generators, k == 1 ? 3 : 12);
    EXPECT_GT(r.starts, 0);
  }
}

TEST(RadialSymmetry, DeletedEdgeBreaksIt) {
  for (int k = 1; k <= 2; ++k) {
    const SymmetryReport r = radial_symmetry_check(k, {}, row1_edge(k));
    EXPECT_GT(r.max_deviation, 1e-3) << k;
  }
}

TEST(Escape, ResistanceIdentityAndMonotonicity) {
  double previous = 2.0;
  for (int K = 2; K <= 3; ++K) {
    const auto spine = assembly::spine_truncation(K, 7);
    const EscapeResult e = escape_probability(spine);
    EXPECT_NEAR(e.probability, e.via_resistance, 1e-6 * e.via_resistance) << K;
    EXPECT_EQ(e.source_degree, 8);
    EXPECT_LE(e.probability, previous);
    previous = e.probability;
    const double energy = to_double(flow::concatenated_energy_analytic(K));
    EXPECT_GE(e.probability, 1.0 / (e.source_degree * energy));
  }
}

}  // namespace
}  // namespace souvlaki::walk
