#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "souvlaki/assembly.hpp"
#include "souvlaki/graph.hpp"
#include "souvlaki/numeric.hpp"

// Unit-conductance electrical networks on simple graphs.
namespace souvlaki::electrical {

struct SolverOptions {
  double tolerance = 1e-10;   // relative residual
  long max_iterations = 0;    // 0: 10 * number of unknowns
};

struct LinearSolveResult {
  std::vector<double> values;  // one per vertex; boundary vertices keep their fixed value
  double residual = 0;         // ||L_II x - b|| / ||b||
  long iterations = 0;
};

/// Harmonic extension with current injections: potentials fixed on boundary vertices
/// (fixed[v] set), and sum_w (x_v - x_w) = injection[v] elsewhere. Interior vertices not
/// connected to the boundary are left at zero. Throws SolverError when CG does not converge.
LinearSolveResult solve_dirichlet(const Graph& g, const std::vector<std::optional<double>>& fixed,
                                  const std::vector<double>& injection, const SolverOptions& options = {});

struct ResistanceResult {
  double value = 0;
  double residual = 0;
  long iterations = 0;
};

/// R_eff between vertex sets A and B (each merged into one terminal).
ResistanceResult effective_resistance(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                                      const SolverOptions& options = {});

/// Exact R_eff by rational star-mesh elimination; small graphs only.
Rational exact_effective_resistance(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                                    std::size_t max_vertices = 3000);

/// Spine truncation with each junction base segment J_k merged into one vertex.
struct ContractedSpine {
  Contraction contraction;
  /// junction_vertex[k] for k = 1..K; entry K is the merged frontier L_K.
  std::vector<VertexId> junction_vertex;
  std::vector<int> degree;  // deg(v_k), same indexing
};
ContractedSpine contract_junctions(const assembly::Assembled& spine);

struct ProfileRow {
  int k = 0;
  ResistanceResult resistance;  // R(v_k, v_{k+1})
  int degree = 0;               // deg(v_k)
};
/// Rows k = 1 .. K-1.
std::vector<ProfileRow> junction_resistance_profile(const assembly::Assembled& spine, const SolverOptions& options = {});

enum class TreeStrategy { Bfs, Dfs, Random };
TreeStrategy parse_tree_strategy(std::string_view text);
std::string to_string(TreeStrategy s);

/// Spanning tree as a parent array rooted at `root` (parent[root] = -1). Random trees take
/// i.i.d. uniform edge weights and keep the minimum spanning tree.
std::vector<VertexId> spanning_tree(const Graph& g, VertexId root, TreeStrategy strategy, std::uint64_t seed = 0);

Graph tree_graph(const std::vector<VertexId>& parent);

/// R_eff from the root of a rooted tree to a set of grounded vertices, by series/parallel
/// reduction. Infinite when no grounded vertex is reachable.
double tree_resistance(const std::vector<VertexId>& parent, std::span<const VertexId> grounded);

struct SubtreeContrast {
  double tree = 0;   // R_eff(source, frontier) inside the spanning tree
  double graph = 0;  // R_eff(source, frontier) in the full truncation
  ResistanceResult graph_solve;
};
SubtreeContrast subtree_resistance_contrast(const assembly::Assembled& spine, TreeStrategy strategy,
                                            std::uint64_t seed = 0, const SolverOptions& options = {});

}  // namespace souvlaki::electrical
