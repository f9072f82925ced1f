#pragma once

#include <vector>

#include "souvlaki/glue_mode.hpp"
#include "souvlaki/numeric.hpp"
#include "souvlaki/random.hpp"

// Exact counting of meatball volumes and the level law of a uniform root.
namespace souvlaki::census {

/// |M^L_k| = (6^{k+1} - 1)/5 * (k^4 + k^2).
BigInt volume_vk(int k);

/// Vertices of M^L_k at height i: 3^i 2^i (k^2 + k^4).
BigInt level_count(int k, int row);

/// Vertices canonically owned by one level-k skeleton edge of the branching assembly.
BigInt ownership_count(int k, int d, GlueMode mode = GlueMode::TowerSharing);

/// Vertices of the right piece M^R_k.
BigInt right_piece_size(int k);

/// v_k d^{-k}.
Rational volume_weight(int k, int d);
/// u_k d^{-k}.
Rational ownership_weight(int k, int d, GlueMode mode = GlueMode::TowerSharing);

/// Probability that a uniform root of T'_n lands in a level-k left piece, given it lands in one.
Rational root_level_prob(int k, int n, int d);

/// |T'_n| as the sum of canonical ownership over all skeleton edges.
BigInt assembled_vertex_count(int n, int d, GlueMode mode = GlueMode::TowerSharing);

struct Interval {
  Rational lo;
  Rational hi;

  Rational mid() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Encloses p_k = lim_n p_{k,n} within tol, using a geometric bound on the tail of v_j d^{-j}.
Interval limit_level_prob(int k, int d, const Rational& tol);

/// Upper bound on sum_{j > J} v_j d^{-j}; requires the ratio bound past J to be below one.
Rational volume_tail_bound(int J, int d);

/// Ratio a_{j+1}/a_j of a_j = v_j d^{-j}, exact.
Rational volume_weight_ratio(int j, int d);

/// For all j >= k0: a_{j+1}/a_j <= ratio_bound < 1.
struct SummabilityCertificate {
  int k0 = 0;
  Rational ratio_bound;
  std::vector<Rational> exact_ratios;  // a_{j+1}/a_j for j = 1 .. k0-1
};
SummabilityCertificate summability_certificate(int d);

struct CensusRow {
  int k = 0;
  BigInt v;
  BigInt u;
  Rational p_kn;
  Interval p_k;
};
std::vector<CensusRow> census_table(int n, int d, const Rational& tol,
                                    GlueMode mode = GlueMode::TowerSharing);

/// Samples the level of a limit root from the ownership weights u_k d^{-k}, truncated where the
/// remaining mass is below `tail_tolerance` (recorded in truncated_mass()).
class LevelSampler {
 public:
  explicit LevelSampler(int d, GlueMode mode = GlueMode::TowerSharing, long double tail_tolerance = 1e-18L);

  int sample(Engine& rng) const;
  int max_level() const noexcept { return static_cast<int>(probabilities_.size()); }
  /// Probability of level k (1-based) in the truncated law.
  long double probability(int k) const { return probabilities_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<long double>& probabilities() const noexcept { return probabilities_; }
  long double truncated_mass() const noexcept { return truncated_mass_; }

 private:
  std::vector<long double> probabilities_;
  std::vector<long double> cumulative_;
  long double truncated_mass_ = 0;
};

}  // namespace souvlaki::census
