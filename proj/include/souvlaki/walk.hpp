#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "souvlaki/assembly.hpp"
#include "souvlaki/electrical.hpp"
#include "souvlaki/graph.hpp"

// Simple random walks and absorption probabilities.
namespace souvlaki::walk {

struct WalkStats {
  VertexId start = 0;
  std::int64_t horizon = 0;
  std::int64_t runs = 0;
  std::int64_t hits = 0;
  /// Nearest-rank quantiles of the hitting time over the runs that hit; empty when none did.
  std::vector<std::pair<double, std::int64_t>> quantiles;
  std::uint64_t seed = 0;
  bool trivial = false;  // start already in the target

  double frequency() const { return runs == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(runs); }
};

/// Run i uses substream(seed, i) and consumes one uniform_below draw per step, so a longer
/// horizon extends the same trajectories.
WalkStats simulate_hitting(const Graph& g, std::span<const char> target, VertexId start, std::int64_t runs,
                           std::int64_t horizon, std::uint64_t seed);

/// Target = vertices labelled as spine.
WalkStats simulate_spine_hitting(const Graph& g, VertexId start, std::int64_t runs, std::int64_t horizon,
                                 std::uint64_t seed);

/// Vertices in the spine's connected component that are not on the spine.
std::vector<VertexId> bush_vertices(const Graph& g);

/// Graph distance to the nearest spine vertex; -1 outside the spine's component.
std::vector<int> spine_distances(const Graph& g);

/// Up to `count` distinct bush starts: nearest to the spine, farthest from it, then seeded picks.
std::vector<VertexId> bush_starts(const Graph& g, int count, std::uint64_t seed);

struct HittingDistribution {
  VertexId start = 0;
  std::vector<VertexId> absorbing;   // sorted
  std::vector<double> probability;   // aligned with absorbing
  double residual = 0;
  long iterations = 0;

  double total() const;
};

/// Law of the first absorbing vertex hit by SRW from `start`. Uses the killed Green's function
/// phi (L phi = delta_start off the absorbing set) and nu(x) = sum of phi over x's free neighbors.
HittingDistribution exact_hitting_distribution(const Graph& g, VertexId start, std::span<const VertexId> absorbing,
                                               const electrical::SolverOptions& options = {});

/// Empirical counterpart: counts of the first absorbing vertex over `runs` walks (aligned with
/// the sorted absorbing set). Walks that exceed max_steps are not counted.
std::vector<std::int64_t> simulate_absorption(const Graph& g, VertexId start, std::span<const VertexId> absorbing,
                                              std::int64_t runs, std::uint64_t seed,
                                              std::int64_t max_steps = 100000000);

/// Harmonic function with the given boundary values on `boundary`.
electrical::LinearSolveResult harmonic_extension(const Graph& g, std::span<const VertexId> boundary,
                                                 std::span<const double> values,
                                                 const electrical::SolverOptions& options = {});

struct SymmetryReport {
  int k = 0;
  double max_deviation = 0;
  int starts = 0;
  int generators = 0;
  double max_residual = 0;
};

/// On M_k, hitting laws on row k from every base vertex, compared under the swaps of two child
/// subtrees of the ternary fiber. `removed` deletes one edge first (negative control).
SymmetryReport radial_symmetry_check(int k, const electrical::SolverOptions& options = {},
                                     std::optional<Edge> removed = std::nullopt);

/// The edge from base vertex 0 up into row 1 of child 0's fiber, for the negative control.
Edge row1_edge(int k);

struct EscapeResult {
  double probability = 0;     // from the harmonic solve
  double via_resistance = 0;  // 1 / (deg(source) R_eff)
  int source_degree = 0;
  electrical::ResistanceResult resistance;
  electrical::LinearSolveResult harmonic;
};

/// P(SRW from the source reaches the wired frontier before returning).
EscapeResult escape_probability(const assembly::Assembled& spine, const electrical::SolverOptions& options = {});

}  // namespace souvlaki::walk
