#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "souvlaki/assembly.hpp"
#include "souvlaki/glue_mode.hpp"
#include "souvlaki/graph.hpp"
#include "souvlaki/numeric.hpp"
#include "souvlaki/topology.hpp"

// The explicit unit flow from R_{k+1} to L_{k+1} inside M_{k+1}, its concatenation along the
// spine, and exact energy bookkeeping.
namespace souvlaki::flow {

enum class Phase : std::uint8_t { Ascent, Horizontal, Descent, Redistribution };

/// Oriented-edge flow with exact values numerator / denominator (one shared denominator).
class FlowAssignment {
 public:
  struct Entry {
    VertexId from;
    VertexId to;
    std::int64_t numerator;  // flow from -> to
    Phase phase;
  };

  FlowAssignment() = default;
  FlowAssignment(std::size_t num_vertices, BigInt denominator);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  const BigInt& denominator() const noexcept { return denominator_; }

  /// Adds `numerator` along u -> v (and its negative along v -> u). The phase of an edge is
  /// fixed by its first contribution.
  void add(VertexId u, VertexId v, std::int64_t numerator, Phase phase);

  Rational value(VertexId u, VertexId v) const;
  /// Nonzero edges, oriented in the direction of positive flow, sorted.
  std::vector<Entry> entries() const;

  /// Net outflow, exact.
  Rational divergence(VertexId v) const;
  std::vector<std::pair<VertexId, Rational>> nonzero_divergence() const;

  void declare_source(VertexId v, const Rational& strength) { sources_.emplace_back(v, strength); }
  void declare_sink(VertexId v, const Rational& strength) { sinks_.emplace_back(v, strength); }
  const std::vector<std::pair<VertexId, Rational>>& sources() const noexcept { return sources_; }
  const std::vector<std::pair<VertexId, Rational>>& sinks() const noexcept { return sinks_; }

  /// Divergence equals +strength at sources, -strength at sinks, zero elsewhere (exact).
  bool conserves() const;

  Rational energy() const;

 private:
  static std::uint64_t key(VertexId u, VertexId v);
  std::vector<std::int64_t> divergence_numerators() const;

  std::size_t num_vertices_ = 0;
  BigInt denominator_ = 1;
  struct Stored {
    std::int64_t numerator;  // from min id to max id
    Phase phase;
  };
  std::unordered_map<std::uint64_t, Stored> values_;
  std::vector<std::pair<VertexId, Rational>> sources_;
  std::vector<std::pair<VertexId, Rational>> sinks_;
};

struct EnergyReport {
  int k = 0;
  Rational ascent;
  Rational horizontal;
  Rational descent;
  Rational redistribution;
  Rational total;
  Rational k2_total;  // k^2 * total
};

/// Energy of the equally branching unit flow on the rooted ternary tree of the given depth.
Rational tree_flow_energy(int depth);

struct TreeFlow {
  Graph graph;  // ternary tree, vertices in BFS order, root 0
  FlowAssignment flow;
};
TreeFlow build_tree_flow(int depth);

/// Common denominator of g^{(k)}: k^2 (k+1)^2 3^k.
BigInt flow_denominator(int k);

/// Vertex lookup used to lay g^{(k)} onto a host graph: (row, t index, pos) of M_{k+1} -> id.
using MeatballLookup = std::function<VertexId(int row, std::int64_t t, std::int64_t pos)>;

/// Adds scale * g^{(k)} (in units of flow.denominator() / scale = flow_denominator(k)).
void add_flow_gk(FlowAssignment& flow, int k, std::int64_t scale, const MeatballLookup& lookup);

struct MeatballFlow {
  topology::MeatballSpec spec;  // M_{k+1}
  Graph graph;
  FlowAssignment flow;
  std::vector<VertexId> sources;  // r_1 .. r_{k^2}
  std::vector<VertexId> sinks;    // l_1 .. l_{(k+1)^2}
};

/// g^{(k)} on a materialized M_{k+1}.
MeatballFlow build_flow_gk(int k, const Budget& budget = Budget::from_env());

/// Exact per-phase energies by edge summation; every flow edge must be an edge of `graph`.
EnergyReport energy_exact(const FlowAssignment& flow, const Graph& graph, int k = 0);

/// Closed-form energies of g^{(k)} with no materialization.
EnergyReport energy_analytic(int k);

/// Upper bound on sum_{k > J} E(g^{(k)}).
Rational energy_tail_bound(int J);

struct EnergySweep {
  std::vector<EnergyReport> reports;  // k = 1 .. kmax
  Rational max_k2_total;
  int argmax = 0;
  Rational partial_sum;
};
EnergySweep energy_sweep(int kmax);

struct SpineFlow {
  assembly::Assembled spine;
  FlowAssignment flow;
};

/// Sum of g^{(1)} .. g^{(K-1)} on spine_truncation(K): unit flow from the source to the frontier.
SpineFlow concatenate_spine_flow(int K, int d = 7, GlueMode mode = GlueMode::TowerSharing,
                                 const Budget& budget = Budget::from_env());

/// Exact energy of the concatenated flow. With shared towers the descent of g^{(k-1)} and the
/// ascent of g^{(k)} cancel on rows below k, so the energies are not additive.
Rational concatenated_energy_analytic(int K, GlueMode mode = GlueMode::TowerSharing);

}  // namespace souvlaki::flow
