#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "souvlaki/assembly.hpp"
#include "souvlaki/graph.hpp"
#include "souvlaki/numeric.hpp"

// Mass transport, local weak convergence and four-point hyperbolicity.
namespace souvlaki::diagnostics {

/// Isomorphism-invariant label of a rooted graph. Exact canonical forms start with "C:",
/// refinement hashes with "H:".
struct BallType {
  std::string key;
  bool exact = false;
  int vertices = 0;
  int root_degree = 0;
};

struct TypeOptions {
  int exact_max_vertices = 60;
  long search_budget = 200000;  // search nodes before falling back to the hash
};

BallType ball_type(const Graph& ball, VertexId root, const TypeOptions& options = {});

/// Stable color refinement (1-WL) started from the given colors; returns canonical colors
/// numbered by sorted signature.
std::vector<int> refine_colors(const Graph& g, std::vector<int> colors);

/// Rooted radius-r type of every vertex, as a refinement hash of B_r(v).
std::vector<std::uint64_t> rooted_type_hashes(const Graph& g, int r);

/// f(G, o, x) for dist(o, x) <= r: a function of the rooted r-types of o and x, their distance
/// and the number of geodesics between them; zero otherwise.
class TransportFunction {
 public:
  using Rule = std::function<std::int64_t(std::uint64_t type_o, std::uint64_t type_x, int dist, std::int64_t geodesics,
                                          int deg_o, int deg_x)>;

  TransportFunction(int radius, Rule rule, std::string name);

  /// Uniform values in {0..max_value} keyed on a hash of (seed, arguments).
  static TransportFunction random(int radius, std::uint64_t seed, int max_value = 4);
  /// 1 on adjacent pairs.
  static TransportFunction adjacency();
  /// 1 when x is a neighbor of strictly larger degree (not symmetric in o, x).
  static TransportFunction uphill();

  int radius() const noexcept { return radius_; }
  const std::string& name() const noexcept { return name_; }
  std::int64_t operator()(std::uint64_t type_o, std::uint64_t type_x, int dist, std::int64_t geodesics, int deg_o,
                          int deg_x) const {
    return rule_(type_o, type_x, dist, geodesics, deg_o, deg_x);
  }

 private:
  int radius_;
  Rule rule_;
  std::string name_;
};

struct MtpResult {
  Rational lhs;  // E sum_x f(o, x)
  Rational rhs;  // E sum_x f(x, o)
  std::string function;
};

/// Per-vertex root probabilities.
using RootLaw = std::vector<Rational>;

/// Law of a uniform root of T'_n written through the census: P(owner level = k) from ownership
/// counts, spread evenly over the level-k vertices of the materialized graph.
RootLaw census_root_law(const assembly::Assembled& tree);
/// Root probability proportional to degree.
RootLaw degree_biased_law(const Graph& g);

MtpResult mtp_check(const Graph& g, const RootLaw& law, const TransportFunction& f);
/// Uniform root on T'_n through census_root_law.
MtpResult mtp_check(int n, int d, const TransportFunction& f);

struct TvEstimate {
  double value = 0;
  double radius = 0;  // three binomial standard errors summed over types, halved
};

struct LwcReport {
  int r = 0;
  int d = 0;
  int n1 = 0;
  int n2 = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  TvEstimate n1_n2;
  TvEstimate n1_limit;
  TvEstimate n2_limit;
  std::map<std::string, long> types_n1;
  std::map<std::string, long> types_n2;
  std::map<std::string, long> types_limit;
  int max_root_degree = 0;
  int hashed_types = 0;
  int hash_collisions = 0;  // equal hashes whose audited invariants differ
};

TvEstimate total_variation(const std::map<std::string, long>& a, long na, const std::map<std::string, long>& b,
                           long nb);

LwcReport lwc_diagnostic(int r, int d, int n1, int n2, long samples, std::uint64_t seed,
                         const Budget& budget = Budget::from_env());

struct DeltaStats {
  std::string instance;
  bool exact = false;
  int twice_delta = 0;  // delta lies on the half-integer grid
  std::uint64_t quadruples = 0;
  std::vector<VertexId> witness;

  Rational delta() const { return Rational(twice_delta, 2); }
};

enum class DeltaMode { Exact, Sampled };
DeltaMode parse_delta_mode(const std::string& text);

/// Four-point delta. Exact mode scans every quadruple and needs n <= max_exact_vertices;
/// sampled mode draws `quadruples` random quadruples.
DeltaStats gromov_delta(const Graph& g, DeltaMode mode, std::uint64_t quadruples = 0, std::uint64_t seed = 0,
                        std::string instance = {}, std::size_t max_exact_vertices = 3000);

}  // namespace souvlaki::diagnostics
