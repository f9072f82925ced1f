#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "souvlaki/glue_mode.hpp"
#include "souvlaki/graph.hpp"
#include "souvlaki/random.hpp"
#include "souvlaki/topology.hpp"

// Gluing meatballs onto a d-ary skeleton: the branching gadget M'_k, the finite assemblies T'_n,
// spine truncations, and balls of the infinite limit.
namespace souvlaki::assembly {

/// Path from the skeleton root over digits '1'..'d'; the height is the path length.
struct SkeletonAddress {
  std::string path;

  int height() const noexcept { return static_cast<int>(path.size()); }
  SkeletonAddress parent() const { return SkeletonAddress{path.substr(0, path.size() - 1)}; }
  SkeletonAddress child(int c) const { return SkeletonAddress{path + static_cast<char>('0' + c)}; }
  /// Which child of its parent this edge is.
  int last() const { return path.back() - '0'; }

  auto operator<=>(const SkeletonAddress&) const = default;
};

/// A vertex of an assembly, in the coordinates of the meatball of its owner edge.
/// copy != 0 marks a vertex of the copy-th branching copy of the owner's right piece.
struct CanonicalVertex {
  SkeletonAddress owner;
  topology::H3Vertex local;
  int copy = 0;

  std::strong_ordering operator<=>(const CanonicalVertex&) const = default;
  bool operator==(const CanonicalVertex&) const = default;
};

/// `e:<path>/t:<digits>/w:<row>,<pos>[/c:<copy>]`.
std::string format(const CanonicalVertex& v);
CanonicalVertex parse_canonical(std::string_view text);

struct CanonicalVertexHash {
  std::size_t operator()(const CanonicalVertex& v) const;
};

enum class Layout {
  Tree,   // the full d-ary skeleton of height n
  Spine,  // the leftmost ray only, one copy per gadget
};

/// An assembly described implicitly: address arithmetic, gluing and the neighbor oracle.
class Souvlaki {
 public:
  Souvlaki(int top_level, int d, Layout layout, GlueMode mode = GlueMode::TowerSharing);

  static Souvlaki tree(int n, int d, GlueMode mode = GlueMode::TowerSharing) {
    return Souvlaki(n, d, Layout::Tree, mode);
  }
  static Souvlaki spine(int K, int d, GlueMode mode = GlueMode::TowerSharing) {
    return Souvlaki(K, d, Layout::Spine, mode);
  }

  int top_level() const noexcept { return top_level_; }
  int d() const noexcept { return d_; }
  Layout layout() const noexcept { return layout_; }
  GlueMode mode() const noexcept { return mode_; }
  int copies() const noexcept { return layout_ == Layout::Tree ? d_ : 1; }

  /// Edge level k = n - height + 1; leaves have k = 1.
  int level_of(const SkeletonAddress& e) const { return top_level_ - e.height() + 1; }
  int height_of_level(int k) const { return top_level_ - k + 1; }
  bool has_edge(const SkeletonAddress& e) const;
  topology::MeatballSpec spec_of(const SkeletonAddress& e) const { return {level_of(e), d_}; }

  /// Resolves a raw address to the lowest edge containing the vertex. Idempotent.
  CanonicalVertex canonicalize(const CanonicalVertex& raw) const;
  bool is_canonical(const CanonicalVertex& v) const;

  /// Neighbor oracle in canonical addresses; rejects non-canonical input.
  std::vector<CanonicalVertex> neighbors(const CanonicalVertex& v) const;

  /// Lies on a meatball of the leftmost ray (for the tree: path of 1s, copy 0 or 1).
  bool on_spine(const CanonicalVertex& v) const;

  /// Vertices owned by one edge of level k.
  BigInt owned_count(int k) const;
  BigInt vertex_count() const;

  /// Dense order: edges by height, then lexicographic path, then owned vertices.
  BigInt rank(const CanonicalVertex& v) const;
  CanonicalVertex unrank(const BigInt& index) const;

  /// Owned vertex of an edge of level k by local index in [0, owned_count(k)).
  CanonicalVertex owned_vertex(const SkeletonAddress& e, const BigInt& local) const;

  /// Base vertex of L_1 at the bottom of the leftmost ray.
  CanonicalVertex source() const;
  /// Base vertices of L_n at the top of the leftmost ray.
  std::vector<CanonicalVertex> frontier() const;
  /// Base vertices of the junction L_k == R_{k+1} on the leftmost ray, 1 <= k <= n.
  std::vector<CanonicalVertex> junction(int k) const;

  std::string header() const;

 private:
  void check_owned(const CanonicalVertex& v) const;
  BigInt edge_lexrank(const SkeletonAddress& e) const;
  SkeletonAddress edge_from_lexrank(int height, BigInt lexrank) const;
  BigInt edges_at_height(int h) const;
  BigInt height_offset(int h) const;
  std::vector<CanonicalVertex> neighbors_left_piece(const CanonicalVertex& v) const;
  std::vector<CanonicalVertex> neighbors_copy_layer(const CanonicalVertex& v) const;

  int top_level_;
  int d_;
  Layout layout_;
  GlueMode mode_;
};

/// A materialized assembly together with its address arithmetic.
struct Assembled {
  Graph graph;
  std::shared_ptr<const Souvlaki> souvlaki;
  int components = 0;

  VertexId id_of(const CanonicalVertex& v) const;
  CanonicalVertex vertex(VertexId id) const;
  VertexId source() const { return id_of(souvlaki->source()); }
  std::vector<VertexId> frontier() const;
  std::vector<VertexId> junction(int k) const;
  std::vector<VertexId> spine_vertices() const;
};

/// Materializes by generating each gadget's edges in its own frame and gluing through the
/// identification maps; independent of the neighbor oracle.
Assembled materialize(const Souvlaki& s, const Budget& budget = Budget::from_env());

Assembled assemble_Tn(int n, int d, GlueMode mode = GlueMode::TowerSharing,
                      const Budget& budget = Budget::from_env());
Assembled spine_truncation(int K, int d, GlueMode mode = GlueMode::TowerSharing,
                           const Budget& budget = Budget::from_env());

/// Standalone M'_k: one left piece and d disjoint copies of the right piece joined along B_k.
/// Vertices are named `e:1/...` for the left piece and carry /c:<copy> inside copy c.
Graph build_gadget(const topology::MeatballSpec& spec, const Budget& budget = Budget::from_env());

struct SampleMeta {
  int level = 0;           // k of the root's owner edge
  int radius = 0;
  int d = 0;
  std::uint64_t seed = 0;
  int embedding_level = 0;  // top level of the finite assembly the ball was read from
  CanonicalVertex root_address;
};

struct RootedSample {
  Graph graph;
  VertexId root = 0;
  SampleMeta meta;
};

/// Full radius-r ball (induced subgraph) around `root`, built from the neighbor oracle.
RootedSample rooted_ball(const Souvlaki& s, const CanonicalVertex& root, int radius,
                         const Budget& budget = Budget::from_env());

/// Uniform vertex of the assembly via exact rank sampling.
CanonicalVertex sample_uniform_vertex(const Souvlaki& s, Engine& rng);

/// Root level from the limit ownership law, uniform owned vertex at that level, and the full
/// radius-r ball of the limit graph around it. Deterministic in seed.
RootedSample sample_limit_ball(int r, int d, std::uint64_t seed, GlueMode mode = GlueMode::TowerSharing,
                               const Budget& budget = Budget::from_env());

/// Embedding depth used for limit balls: levels above root_level + r + 2 cannot be reached.
int limit_embedding_level(int root_level, int radius);

/// One line per edge (`a b`, a < b), lines sorted; the header line comes first.
std::string export_edges(const Graph& g, const std::string& header);

}  // namespace souvlaki::assembly
