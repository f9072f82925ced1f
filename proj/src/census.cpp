#include "souvlaki/census.hpp"

#include <algorithm>

#include "souvlaki/errors.hpp"

namespace souvlaki::census {

namespace {

void require_level(int k) {
  if (k < 1) throw InvalidArgument("level k must be >= 1");
}

void require_branching(int d) {
  if (d <= 6) throw InvalidArgument("branching d must exceed 6");
}

BigInt k2k4(int k) {
  const BigInt kk = BigInt(k) * k;
  return kk * kk + kk;
}

// f(j) = ((j+1)^4 + (j+1)^2) / (j^4 + j^2), decreasing in j.
Rational poly_ratio(int j) { return Rational(k2k4(j + 1), k2k4(j)); }

// Bound on a_{j+1}/a_j valid for every j >= J + 1.
Rational ratio_bound_beyond(int J, int d) {
  const Rational six_part = Rational(6) + Rational(5, ipow(6, static_cast<unsigned>(J + 2)) - 1);
  return six_part * poly_ratio(J + 1) / d;
}

}  // namespace

BigInt volume_vk(int k) {
  require_level(k);
  return (ipow(6, static_cast<unsigned>(k + 1)) - 1) / 5 * k2k4(k);
}

BigInt level_count(int k, int row) {
  require_level(k);
  if (row < 0 || row > k) throw InvalidArgument("row outside [0, k]");
  return ipow(6, static_cast<unsigned>(row)) * k2k4(k);
}

BigInt right_piece_size(int k) {
  require_level(k);
  return (ipow(6, static_cast<unsigned>(k + 1)) - 1) / 5 * (BigInt(k - 1) * (k - 1));
}

BigInt ownership_count(int k, int d, GlueMode mode) {
  require_level(k);
  require_branching(d);
  const BigInt v = volume_vk(k);
  if (k == 1) return v;
  const BigInt r = BigInt(k - 1) * (k - 1);
  if (mode == GlueMode::TowerSharing) return v + d * ipow(6, static_cast<unsigned>(k)) * r;
  // Base-only: the copy keeps every row of M^R_k except the shared base.
  return v + d * (right_piece_size(k) - r);
}

Rational volume_weight(int k, int d) {
  require_branching(d);
  return Rational(volume_vk(k), ipow(d, static_cast<unsigned>(k)));
}

Rational ownership_weight(int k, int d, GlueMode mode) {
  return Rational(ownership_count(k, d, mode), ipow(d, static_cast<unsigned>(k)));
}

Rational root_level_prob(int k, int n, int d) {
  require_level(k);
  require_branching(d);
  if (k > n) throw InvalidArgument("root_level_prob requires k <= n");
  // Scaled by d^n to stay in integers: v_j d^{n-j}.
  BigInt total = 0;
  for (int j = 1; j <= n; ++j) total += volume_vk(j) * ipow(d, static_cast<unsigned>(n - j));
  return Rational(volume_vk(k) * ipow(d, static_cast<unsigned>(n - k)), total);
}

BigInt assembled_vertex_count(int n, int d, GlueMode mode) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  BigInt total = 0;
  for (int k = 1; k <= n; ++k) total += ipow(d, static_cast<unsigned>(n - k + 1)) * ownership_count(k, d, mode);
  return total;
}

Rational volume_weight_ratio(int j, int d) { return volume_weight(j + 1, d) / volume_weight(j, d); }

Rational volume_tail_bound(int J, int d) {
  require_branching(d);
  const Rational rho = ratio_bound_beyond(J, d);
  if (rho >= 1) throw InvalidArgument("tail bound not yet geometric at J=" + std::to_string(J));
  return volume_weight(J + 1, d) / (1 - rho);
}

SummabilityCertificate summability_certificate(int d) {
  require_branching(d);
  SummabilityCertificate cert;
  int J = 1;
  while (ratio_bound_beyond(J, d) >= 1) ++J;
  cert.k0 = J + 1;
  cert.ratio_bound = ratio_bound_beyond(J, d);
  for (int j = 1; j < cert.k0; ++j) cert.exact_ratios.push_back(volume_weight_ratio(j, d));
  return cert;
}

Interval limit_level_prob(int k, int d, const Rational& tol) {
  require_level(k);
  require_branching(d);
  if (tol <= 0) throw InvalidArgument("tolerance must be positive");
  int J = std::max(k, summability_certificate(d).k0);
  Rational partial = 0;
  for (int j = 1; j <= J; ++j) partial += volume_weight(j, d);
  const Rational a_k = volume_weight(k, d);
  while (true) {
    const Rational tail = volume_tail_bound(J, d);
    Interval out{a_k / (partial + tail), a_k / partial};
    if (out.width() <= tol) return out;
    for (int step = 0; step < 8; ++step) partial += volume_weight(++J, d);
  }
}

std::vector<CensusRow> census_table(int n, int d, const Rational& tol, GlueMode mode) {
  std::vector<CensusRow> rows;
  for (int k = 1; k <= n; ++k) {
    rows.push_back(CensusRow{k, volume_vk(k), ownership_count(k, d, mode), root_level_prob(k, n, d),
                             limit_level_prob(k, d, tol)});
  }
  return rows;
}

LevelSampler::LevelSampler(int d, GlueMode mode, long double tail_tolerance) {
  require_branching(d);
  const int k0 = summability_certificate(d).k0;
  std::vector<long double> weights;
  long double total = 0;
  // u_j <= v_j (1 + d/j^2), so the ownership tail is controlled by the volume tail.
  for (int k = 1;; ++k) {
    const long double w = to_long_double(ownership_weight(k, d, mode));
    weights.push_back(w);
    total += w;
    if (k >= k0) {
      const long double tail =
          to_long_double(volume_tail_bound(k, d)) * (1.0L + static_cast<long double>(d) / (k * static_cast<long double>(k)));
      if (tail <= tail_tolerance * total) {
        truncated_mass_ = tail / (total + tail);
        break;
      }
    }
  }
  long double running = 0;
  for (long double w : weights) {
    probabilities_.push_back(w / total);
    running += w / total;
    cumulative_.push_back(running);
  }
  cumulative_.back() = 1.0L;
}

int LevelSampler::sample(Engine& rng) const {
  const long double u = uniform01(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1)) + 1;
}

}  // namespace souvlaki::census
