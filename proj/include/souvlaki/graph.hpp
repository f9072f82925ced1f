#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace souvlaki {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

enum class Segment : std::uint8_t { L, A, R };

/// Per-vertex metadata carried by materialized graphs.
struct VertexLabel {
  std::int16_t row = 0;
  std::int16_t level = 0;  // k of the owning meatball
  Segment segment = Segment::L;
  bool spine = false;
  bool copy_layer = false;  // lies in a branching copy of the right piece
};

/// Maps dense vertex ids back to a printable address.
class VertexNaming {
 public:
  virtual ~VertexNaming() = default;
  virtual std::string name(VertexId v) const = 0;
};

/// Simple undirected graph in CSR form. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Self-loops are dropped and parallel edges merged.
  static Graph from_edges(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(VertexId v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  bool has_edge(VertexId u, VertexId v) const;

  int max_degree() const;
  std::map<int, std::size_t> degree_histogram() const;

  /// Each undirected edge once, with first < second, in increasing order.
  std::vector<Edge> edge_list() const;

  const std::vector<VertexLabel>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<VertexLabel> labels);
  const VertexLabel& label(VertexId v) const { return labels_.at(v); }

  void set_naming(std::shared_ptr<const VertexNaming> naming) { naming_ = std::move(naming); }
  const std::shared_ptr<const VertexNaming>& naming() const noexcept { return naming_; }
  std::string name(VertexId v) const;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<VertexLabel> labels_;
  std::shared_ptr<const VertexNaming> naming_;
};

/// Unweighted BFS distances; -1 for unreachable (or beyond max_distance when >= 0).
std::vector<int> bfs_distances(const Graph& g, VertexId source, int max_distance = -1);

/// Component id per vertex; ids are numbered in order of their smallest vertex.
std::vector<int> connected_components(const Graph& g, int* count = nullptr);

bool is_connected(const Graph& g);

Graph remove_edge(const Graph& g, VertexId u, VertexId v);

/// Result of merging vertex classes into single vertices.
struct Contraction {
  Graph graph;
  std::vector<VertexId> image;          // old vertex -> new vertex
  std::vector<VertexId> class_vertices;  // class index -> new vertex
};

/// Each class (disjoint, nonempty) becomes one vertex; loops dropped, parallel edges merged.
Contraction contract(const Graph& g, const std::vector<std::vector<VertexId>>& classes);

/// Vertex-count guard for materialization.
class Budget {
 public:
  static constexpr double kDefaultVertices = 2.0e7;

  explicit Budget(double max_vertices = kDefaultVertices);

  /// Reads SOUVLAKI_BUDGET when set, otherwise the default.
  static Budget from_env();

  double max_vertices() const noexcept { return max_vertices_; }
  void check(double estimate, const std::string& what) const;

 private:
  double max_vertices_;
};

}  // namespace souvlaki
