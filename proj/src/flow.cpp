#include "souvlaki/flow.hpp"

#include <algorithm>

#include "souvlaki/errors.hpp"

namespace souvlaki::flow {

FlowAssignment::FlowAssignment(std::size_t num_vertices, BigInt denominator)
    : num_vertices_(num_vertices), denominator_(std::move(denominator)) {
  if (denominator_ <= 0) throw InvalidArgument("flow denominator must be positive");
}

std::uint64_t FlowAssignment::key(VertexId u, VertexId v) {
  const auto a = static_cast<std::uint64_t>(std::min(u, v));
  const auto b = static_cast<std::uint64_t>(std::max(u, v));
  return (a << 32U) | b;
}

void FlowAssignment::add(VertexId u, VertexId v, std::int64_t numerator, Phase phase) {
  if (u == v) throw InvalidArgument("flow on a loop");
  if (u < 0 || v < 0 || static_cast<std::size_t>(std::max(u, v)) >= num_vertices_) {
    throw InvalidArgument("flow endpoint out of range");
  }
  const std::int64_t oriented = u < v ? numerator : -numerator;
  auto [it, inserted] = values_.try_emplace(key(u, v), Stored{0, phase});
  if (__builtin_add_overflow(it->second.numerator, oriented, &it->second.numerator)) {
    throw Error("flow numerator overflow");
  }
}

Rational FlowAssignment::value(VertexId u, VertexId v) const {
  const auto it = values_.find(key(u, v));
  if (it == values_.end()) return 0;
  const std::int64_t n = u < v ? it->second.numerator : -it->second.numerator;
  return Rational(BigInt(n), denominator_);
}

std::vector<FlowAssignment::Entry> FlowAssignment::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (const auto& [k, s] : values_) {
    if (s.numerator == 0) continue;
    const auto a = static_cast<VertexId>(k >> 32U);
    const auto b = static_cast<VertexId>(k & 0xffffffffU);
    if (s.numerator > 0) {
      out.push_back({a, b, s.numerator, s.phase});
    } else {
      out.push_back({b, a, -s.numerator, s.phase});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) {
    return std::pair(x.from, x.to) < std::pair(y.from, y.to);
  });
  return out;
}

std::vector<std::int64_t> FlowAssignment::divergence_numerators() const {
  std::vector<std::int64_t> div(num_vertices_, 0);
  for (const auto& [k, s] : values_) {
    div[k >> 32U] += s.numerator;
    div[k & 0xffffffffU] -= s.numerator;
  }
  return div;
}

Rational FlowAssignment::divergence(VertexId v) const {
  std::int64_t total = 0;
  for (const auto& [k, s] : values_) {
    if (static_cast<VertexId>(k >> 32U) == v) total += s.numerator;
    if (static_cast<VertexId>(k & 0xffffffffU) == v) total -= s.numerator;
  }
  return Rational(BigInt(total), denominator_);
}

std::vector<std::pair<VertexId, Rational>> FlowAssignment::nonzero_divergence() const {
  const auto div = divergence_numerators();
  std::vector<std::pair<VertexId, Rational>> out;
  for (std::size_t v = 0; v < div.size(); ++v) {
    if (div[v] != 0) out.emplace_back(static_cast<VertexId>(v), Rational(BigInt(div[v]), denominator_));
  }
  return out;
}

bool FlowAssignment::conserves() const {
  std::unordered_map<VertexId, Rational> expected;
  for (const auto& [v, s] : sources_) expected[v] += s;
  for (const auto& [v, s] : sinks_) expected[v] -= s;
  const auto div = divergence_numerators();
  for (std::size_t v = 0; v < div.size(); ++v) {
    const auto it = expected.find(static_cast<VertexId>(v));
    const Rational want = it == expected.end() ? Rational(0) : it->second;
    if (Rational(BigInt(div[v]), denominator_) != want) return false;
  }
  return true;
}

Rational FlowAssignment::energy() const {
  BigInt sum = 0;
  for (const auto& [k, s] : values_) sum += BigInt(s.numerator) * s.numerator;
  return Rational(sum, denominator_ * denominator_);
}

Rational tree_flow_energy(int depth) {
  if (depth < 1) throw InvalidArgument("tree depth must be >= 1");
  return (1 - Rational(1, ipow(3, static_cast<unsigned>(depth)))) / 2;
}

TreeFlow build_tree_flow(int depth) {
  if (depth < 1) throw InvalidArgument("tree depth must be >= 1");
  // Vertex ids level by level; children of v at height i are 3v+1..3v+3 in heap order.
  const std::int64_t n = (to_int64(ipow(3, static_cast<unsigned>(depth + 1))) - 1) / 2;
  std::vector<Edge> edges;
  for (std::int64_t v = 1; v < n; ++v) edges.emplace_back(static_cast<VertexId>((v - 1) / 3), static_cast<VertexId>(v));
  TreeFlow out{Graph::from_edges(static_cast<std::size_t>(n), edges),
               FlowAssignment(static_cast<std::size_t>(n), ipow(3, static_cast<unsigned>(depth)))};
  std::int64_t first = 1;
  std::int64_t width = 3;
  for (int h = 1; h <= depth; ++h, first += width, width *= 3) {
    const std::int64_t num = to_int64(ipow(3, static_cast<unsigned>(depth - h)));
    for (std::int64_t v = first; v < first + width; ++v) {
      out.flow.add(static_cast<VertexId>((v - 1) / 3), static_cast<VertexId>(v), num, Phase::Ascent);
      if (h == depth) out.flow.declare_sink(static_cast<VertexId>(v), Rational(1, width));
    }
  }
  out.flow.declare_source(0, 1);
  return out;
}

BigInt flow_denominator(int k) {
  if (k < 1) throw InvalidArgument("flow level k must be >= 1");
  return BigInt(k) * k * (k + 1) * (k + 1) * ipow(3, static_cast<unsigned>(k));
}

void add_flow_gk(FlowAssignment& flow, int k, std::int64_t scale, const MeatballLookup& lookup) {
  if (k < 1) throw InvalidArgument("flow level k must be >= 1");
  const topology::MeatballSpec spec(k + 1);
  const std::int64_t left_width = spec.left_width();
  const std::int64_t sources = std::int64_t{k} * k;
  const std::int64_t sinks = std::int64_t{k + 1} * (k + 1);
  std::vector<std::int64_t> threes{1};
  for (int i = 0; i < k; ++i) threes.push_back(threes.back() * 3);

  // Vertical parts: each column splits equally among the three t-children per row.
  const auto column = [&](std::int64_t base, std::int64_t per_unit, Phase phase) {
    for (int i = 0; i < k; ++i) {
      const std::int64_t amount = scale * per_unit * threes[k - i - 1];
      for (std::int64_t t = 0; t < threes[i]; ++t) {
        const VertexId lower = lookup(i, t, base << i);
        for (int c = 0; c < 3; ++c) {
          const VertexId upper = lookup(i + 1, 3 * t + c, base << (i + 1));
          if (phase == Phase::Ascent) {
            flow.add(lower, upper, amount, phase);
          } else {
            flow.add(upper, lower, amount, phase);
          }
        }
      }
    }
  };
  for (std::int64_t j = 0; j < sources; ++j) column(left_width + j, sinks, Phase::Ascent);
  for (std::int64_t j = 0; j < sinks; ++j) column(j, sources, Phase::Descent);

  // Row k: arrivals above sources, departures above sinks; the net flow on a path is the running sum.
  const std::int64_t last = (left_width + sources - 1) << k;
  const std::int64_t zone_begin = sources << k;
  const std::int64_t zone_end = (sinks - 1) << k;
  for (std::int64_t t = 0; t < threes[k]; ++t) {
    std::int64_t running = 0;
    for (std::int64_t pos = 0; pos < last; ++pos) {
      if (pos % (std::int64_t{1} << k) == 0) {
        const std::int64_t base = pos >> k;
        if (base < sinks) running -= sources;
        if (base >= left_width && base < left_width + sources) running += sinks;
      }
      if (running == 0) continue;
      const Phase phase = pos >= zone_begin && pos < zone_end ? Phase::Redistribution : Phase::Horizontal;
      flow.add(lookup(k, t, pos), lookup(k, t, pos + 1), scale * running, phase);
    }
  }
}

MeatballFlow build_flow_gk(int k, const Budget& budget) {
  if (k < 1) throw InvalidArgument("flow level k must be >= 1");
  MeatballFlow out;
  out.spec = topology::MeatballSpec(k + 1);
  out.graph = topology::materialize_meatball(out.spec, topology::Part::Full, budget);
  const topology::MeatballIndex index(out.spec, topology::Part::Full);
  out.flow = FlowAssignment(out.graph.num_vertices(), flow_denominator(k));
  add_flow_gk(out.flow, k, 1, [&](int row, std::int64_t t, std::int64_t pos) {
    return static_cast<VertexId>(index.rank(row, t, pos));
  });
  for (std::int64_t j = 0; j < std::int64_t{k} * k; ++j) {
    out.sources.push_back(static_cast<VertexId>(index.rank(0, 0, out.spec.left_width() + j)));
    out.flow.declare_source(out.sources.back(), Rational(1, k * k));
  }
  for (std::int64_t j = 0; j < std::int64_t{k + 1} * (k + 1); ++j) {
    out.sinks.push_back(static_cast<VertexId>(index.rank(0, 0, j)));
    out.flow.declare_sink(out.sinks.back(), Rational(1, (k + 1) * (k + 1)));
  }
  return out;
}

EnergyReport energy_exact(const FlowAssignment& flow, const Graph& graph, int k) {
  BigInt parts[4] = {0, 0, 0, 0};
  for (const auto& e : flow.entries()) {
    if (!graph.has_edge(e.from, e.to)) throw InvalidArgument("flow uses a non-edge");
    parts[static_cast<int>(e.phase)] += BigInt(e.numerator) * e.numerator;
  }
  const BigInt den2 = flow.denominator() * flow.denominator();
  EnergyReport r;
  r.k = k;
  r.ascent = Rational(parts[0], den2);
  r.horizontal = Rational(parts[1], den2);
  r.descent = Rational(parts[2], den2);
  r.redistribution = Rational(parts[3], den2);
  r.total = r.ascent + r.horizontal + r.descent + r.redistribution;
  r.k2_total = r.total * k * k;
  return r;
}

EnergyReport energy_analytic(int k) {
  if (k < 1) throw InvalidArgument("flow level k must be >= 1");
  const BigInt kk = BigInt(k) * k;
  const BigInt k1 = BigInt(k + 1) * (k + 1);
  const BigInt three_k = ipow(3, static_cast<unsigned>(k));
  const BigInt two_k = ipow(2, static_cast<unsigned>(k));
  const Rational decay = 1 - Rational(1, three_k);
  EnergyReport r;
  r.k = k;
  r.ascent = decay / (2 * kk);
  r.descent = decay / (2 * k1);

  // Running sums on row k, one t-column, in units of 1 / flow_denominator(k).
  const topology::MeatballSpec spec(k + 1);
  BigInt main = 0;
  BigInt zone = 0;
  for (BigInt j = 1; j <= kk; ++j) main += two_k * (j * kk) * (j * kk);
  for (BigInt j = kk + 1; j < k1; ++j) zone += two_k * (j * kk) * (j * kk);
  const BigInt plateau = kk * k1;
  main += (BigInt(spec.left_width()) - (k1 - 1)) * two_k * plateau * plateau;
  for (BigInt j = 1; j < kk; ++j) main += two_k * ((kk - j) * k1) * ((kk - j) * k1);
  const BigInt den = flow_denominator(k);
  r.horizontal = Rational(three_k * main, den * den);
  r.redistribution = Rational(three_k * zone, den * den);
  r.total = r.ascent + r.horizontal + r.descent + r.redistribution;
  r.k2_total = r.total * kk;
  return r;
}

Rational energy_tail_bound(int J) {
  // E_k <= 1/k^2 (vertical) + B(k+1) (2/3)^k (row k), B(m) = m^4 + m^2 + (m-1)^2.
  const auto B = [](int m) { return BigInt(m) * m * m * m + BigInt(m) * m + BigInt(m - 1) * (m - 1); };
  const auto term = [&](int k) { return Rational(B(k + 1) * ipow(2, k), ipow(3, static_cast<unsigned>(k))); };
  const Rational q = Rational(2, 3) * Rational(B(J + 3), B(J + 2));
  if (q >= 1) throw InvalidArgument("energy tail bound needs a larger J");
  return Rational(1, J) + term(J + 1) / (1 - q);
}

EnergySweep energy_sweep(int kmax) {
  EnergySweep out;
  out.partial_sum = 0;
  for (int k = 1; k <= kmax; ++k) {
    out.reports.push_back(energy_analytic(k));
    const EnergyReport& r = out.reports.back();
    out.partial_sum += r.total;
    if (r.k2_total > out.max_k2_total) {
      out.max_k2_total = r.k2_total;
      out.argmax = k;
    }
  }
  return out;
}

SpineFlow concatenate_spine_flow(int K, int d, GlueMode mode, const Budget& budget) {
  SpineFlow out{assembly::spine_truncation(K, d, mode, budget), {}};
  const assembly::Souvlaki& s = *out.spine.souvlaki;
  BigInt common = 1;
  for (int k = 1; k < K; ++k) common = boost::multiprecision::lcm(common, flow_denominator(k));
  out.flow = FlowAssignment(out.spine.graph.num_vertices(), common);
  for (int k = 1; k < K; ++k) {
    const assembly::SkeletonAddress edge{std::string(static_cast<std::size_t>(s.height_of_level(k + 1)), '1')};
    const topology::MeatballSpec spec = s.spec_of(edge);
    add_flow_gk(out.flow, k, to_int64(common / flow_denominator(k)), [&](int row, std::int64_t t, std::int64_t pos) {
      const int copy = (pos >> row) >= spec.left_width() ? 1 : 0;
      const assembly::CanonicalVertex raw{
          edge, topology::H3Vertex{topology::TAddress::from_index(t, row), topology::WVertex{row, pos}}, copy};
      return out.spine.id_of(s.canonicalize(raw));
    });
  }
  out.flow.declare_source(out.spine.source(), 1);
  for (VertexId v : out.spine.frontier()) out.flow.declare_sink(v, Rational(1, K * K));
  return out;
}

Rational concatenated_energy_analytic(int K, GlueMode mode) {
  if (K < 2) throw InvalidArgument("spine flow needs K >= 2");
  Rational total = 0;
  for (int k = 1; k < K; ++k) total += energy_analytic(k).total;
  if (mode == GlueMode::TowerSharing) {
    for (int k = 2; k < K; ++k) total -= (1 - Rational(1, ipow(3, static_cast<unsigned>(k - 1)))) / (k * k);
  }
  return total;
}

}  // namespace souvlaki::flow
