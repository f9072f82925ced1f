#include "souvlaki/walk.hpp"

#include <algorithm>
#include <cmath>

#include "souvlaki/errors.hpp"
#include "souvlaki/random.hpp"
#include "souvlaki/topology.hpp"

namespace souvlaki::walk {

namespace {

void check_vertex(const Graph& g, VertexId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) throw InvalidArgument("vertex out of range");
}

VertexId step(const Graph& g, VertexId v, Engine& rng) {
  const auto nb = g.neighbors(v);
  if (nb.empty()) return v;
  return nb[uniform_below(rng, nb.size())];
}

std::vector<std::pair<double, std::int64_t>> nearest_rank(std::vector<std::int64_t> times) {
  std::vector<std::pair<double, std::int64_t>> out;
  if (times.empty()) return out;
  std::sort(times.begin(), times.end());
  for (double q : {0.5, 0.9, 0.99, 1.0}) {
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(times.size())));
    out.emplace_back(q, times[std::max<std::size_t>(rank, 1) - 1]);
  }
  return out;
}

}  // namespace

WalkStats simulate_hitting(const Graph& g, std::span<const char> target, VertexId start, std::int64_t runs,
                           std::int64_t horizon, std::uint64_t seed) {
  check_vertex(g, start);
  if (target.size() != g.num_vertices()) throw InvalidArgument("target mask size mismatch");
  if (runs < 0 || horizon < 0) throw InvalidArgument("runs and horizon must be nonnegative");
  WalkStats stats{start, horizon, runs, 0, {}, seed, target[start] != 0};
  std::vector<std::int64_t> times;
  if (stats.trivial) {
    stats.hits = runs;
    times.assign(static_cast<std::size_t>(runs), 0);
  } else {
    for (std::int64_t run = 0; run < runs; ++run) {
      Engine rng = substream(seed, static_cast<std::uint64_t>(run));
      VertexId v = start;
      for (std::int64_t t = 1; t <= horizon; ++t) {
        v = step(g, v, rng);
        if (target[v]) {
          ++stats.hits;
          times.push_back(t);
          break;
        }
      }
    }
  }
  stats.quantiles = nearest_rank(std::move(times));
  return stats;
}

WalkStats simulate_spine_hitting(const Graph& g, VertexId start, std::int64_t runs, std::int64_t horizon,
                                 std::uint64_t seed) {
  if (g.labels().size() != g.num_vertices()) throw InvalidArgument("graph carries no spine labels");
  std::vector<char> target(g.num_vertices(), 0);
  bool any = false;
  for (std::size_t v = 0; v < target.size(); ++v) {
    target[v] = g.labels()[v].spine ? 1 : 0;
    any = any || target[v];
  }
  if (!any) throw InvalidArgument("graph has no spine vertices");
  return simulate_hitting(g, target, start, runs, horizon, seed);
}

std::vector<VertexId> bush_vertices(const Graph& g) {
  const std::vector<int> comp = connected_components(g);
  std::vector<char> spine_comp(g.num_vertices() + 1, 0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.labels()[v].spine) spine_comp[comp[v]] = 1;
  }
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!g.labels()[v].spine && spine_comp[comp[v]]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::vector<int> spine_distances(const Graph& g) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<VertexId> queue;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.labels()[v].spine) {
      dist[v] = 0;
      queue.push_back(static_cast<VertexId>(v));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (VertexId w : g.neighbors(queue[head])) {
      if (dist[w] < 0) {
        dist[w] = dist[queue[head]] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<VertexId> bush_starts(const Graph& g, int count, std::uint64_t seed) {
  const std::vector<VertexId> bush = bush_vertices(g);
  if (bush.empty() || count <= 0) return {};
  const std::vector<int> dist = spine_distances(g);
  VertexId near = bush.front();
  VertexId far = bush.front();
  for (VertexId v : bush) {
    if (dist[v] < dist[near]) near = v;
    if (dist[v] > dist[far]) far = v;
  }
  std::vector<VertexId> out{near};
  if (far != near) out.push_back(far);
  const auto wanted = std::min<std::size_t>(static_cast<std::size_t>(count), bush.size());
  Engine rng = substream(seed, 0);
  while (out.size() < wanted) {
    const VertexId v = bush[uniform_below(rng, bush.size())];
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  out.resize(wanted);
  return out;
}

double HittingDistribution::total() const {
  double s = 0;
  for (double p : probability) s += p;
  return s;
}

namespace {

std::vector<VertexId> sorted_set(const Graph& g, std::span<const VertexId> vs) {
  if (vs.empty()) throw InvalidArgument("absorbing set must be nonempty");
  std::vector<VertexId> out(vs.begin(), vs.end());
  for (VertexId v : out) check_vertex(g, v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

HittingDistribution exact_hitting_distribution(const Graph& g, VertexId start, std::span<const VertexId> absorbing,
                                               const electrical::SolverOptions& options) {
  check_vertex(g, start);
  HittingDistribution out;
  out.start = start;
  out.absorbing = sorted_set(g, absorbing);
  out.probability.assign(out.absorbing.size(), 0.0);
  const auto it = std::lower_bound(out.absorbing.begin(), out.absorbing.end(), start);
  if (it != out.absorbing.end() && *it == start) {
    out.probability[it - out.absorbing.begin()] = 1.0;
    return out;
  }
  std::vector<std::optional<double>> fixed(g.num_vertices());
  for (VertexId a : out.absorbing) fixed[a] = 0.0;
  std::vector<double> injection(g.num_vertices(), 0.0);
  injection[start] = 1.0;
  const electrical::LinearSolveResult phi = electrical::solve_dirichlet(g, fixed, injection, options);
  bool reached = false;
  for (std::size_t i = 0; i < out.absorbing.size(); ++i) {
    double s = 0;
    for (VertexId w : g.neighbors(out.absorbing[i])) {
      if (!fixed[w]) s += phi.values[w];
    }
    out.probability[i] = s;
    reached = reached || s > 0;
  }
  if (!reached) throw InvalidArgument("absorbing set is not reachable from the start");
  out.residual = phi.residual;
  out.iterations = phi.iterations;
  return out;
}

std::vector<std::int64_t> simulate_absorption(const Graph& g, VertexId start, std::span<const VertexId> absorbing,
                                              std::int64_t runs, std::uint64_t seed, std::int64_t max_steps) {
  check_vertex(g, start);
  const std::vector<VertexId> set = sorted_set(g, absorbing);
  std::vector<std::int32_t> slot(g.num_vertices(), -1);
  for (std::size_t i = 0; i < set.size(); ++i) slot[set[i]] = static_cast<std::int32_t>(i);
  std::vector<std::int64_t> counts(set.size(), 0);
  for (std::int64_t run = 0; run < runs; ++run) {
    Engine rng = substream(seed, static_cast<std::uint64_t>(run));
    VertexId v = start;
    for (std::int64_t t = 0; t <= max_steps; ++t) {
      if (slot[v] >= 0) {
        ++counts[slot[v]];
        break;
      }
      v = step(g, v, rng);
    }
  }
  return counts;
}

electrical::LinearSolveResult harmonic_extension(const Graph& g, std::span<const VertexId> boundary,
                                                 std::span<const double> values,
                                                 const electrical::SolverOptions& options) {
  if (boundary.size() != values.size()) throw InvalidArgument("boundary and values differ in length");
  std::vector<std::optional<double>> fixed(g.num_vertices());
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    check_vertex(g, boundary[i]);
    fixed[boundary[i]] = values[i];
  }
  return electrical::solve_dirichlet(g, fixed, std::vector<double>(g.num_vertices(), 0.0), options);
}

Edge row1_edge(int k) {
  const topology::MeatballSpec spec{k, 7};
  const topology::MeatballIndex index(spec, topology::Part::Full);
  return {static_cast<VertexId>(index.rank(0, 0, 0)), static_cast<VertexId>(index.rank(1, 0, 0))};
}

SymmetryReport radial_symmetry_check(int k, const electrical::SolverOptions& options, std::optional<Edge> removed) {
  if (k < 1 || k > 3) throw InvalidArgument("radial symmetry check supports 1 <= k <= 3");
  const topology::MeatballSpec spec{k, 7};
  const topology::MeatballIndex index(spec, topology::Part::Full);
  Graph g = topology::materialize_meatball(spec, topology::Part::Full);
  if (removed) g = remove_edge(g, removed->first, removed->second);

  // sigma[j] maps each vertex id to its image under the j-th generator.
  std::vector<std::vector<VertexId>> sigma;
  std::int64_t words = 1;
  for (int depth = 0; depth < k; words *= 3, ++depth) {
    for (std::int64_t w = 0; w < words; ++w) {
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          std::vector<VertexId> map(g.num_vertices());
          for (std::int64_t id = 0; id < index.size(); ++id) {
            const topology::H3Vertex v = index.unrank(id);
            topology::TAddress t = v.t;
            if (t.height() > depth && topology::TAddress{t.digits.substr(0, depth)}.index() == w) {
              char& c = t.digits[depth];
              if (c == '0' + a) {
                c = static_cast<char>('0' + b);
              } else if (c == '0' + b) {
                c = static_cast<char>('0' + a);
              }
            }
            map[id] = static_cast<VertexId>(index.rank(v.row(), t.index(), v.w.pos.convert_to<std::int64_t>()));
          }
          sigma.push_back(std::move(map));
        }
      }
    }
  }

  std::vector<VertexId> top;
  for (std::int64_t t = 0; t < words; ++t) {
    for (std::int64_t p = 0; p < index.width(k); ++p) top.push_back(static_cast<VertexId>(index.rank(k, t, p)));
  }
  std::sort(top.begin(), top.end());
  std::vector<std::int32_t> slot(g.num_vertices(), -1);
  for (std::size_t i = 0; i < top.size(); ++i) slot[top[i]] = static_cast<std::int32_t>(i);

  SymmetryReport report{k, 0.0, 0, static_cast<int>(sigma.size()), 0.0};
  for (std::int64_t p = 0; p < index.width(0); ++p) {
    const auto start = static_cast<VertexId>(index.rank(0, 0, p));
    const HittingDistribution nu = exact_hitting_distribution(g, start, top, options);
    report.max_residual = std::max(report.max_residual, nu.residual);
    ++report.starts;
    for (const auto& map : sigma) {
      for (std::size_t i = 0; i < top.size(); ++i) {
        const double dev = std::abs(nu.probability[i] - nu.probability[slot[map[top[i]]]]);
        report.max_deviation = std::max(report.max_deviation, dev);
      }
    }
  }
  return report;
}

EscapeResult escape_probability(const assembly::Assembled& spine, const electrical::SolverOptions& options) {
  const Graph& g = spine.graph;
  const VertexId s = spine.source();
  const std::vector<VertexId> frontier = spine.frontier();
  EscapeResult out;
  out.source_degree = g.degree(s);
  std::vector<std::optional<double>> fixed(g.num_vertices());
  fixed[s] = 0.0;
  for (VertexId f : frontier) fixed[f] = 1.0;
  out.harmonic = electrical::solve_dirichlet(g, fixed, std::vector<double>(g.num_vertices(), 0.0), options);
  double sum = 0;
  for (VertexId w : g.neighbors(s)) sum += out.harmonic.values[w];
  out.probability = sum / out.source_degree;
  out.resistance = electrical::effective_resistance(g, std::span(&s, 1), frontier, options);
  out.via_resistance = 1.0 / (out.source_degree * out.resistance.value);
  return out;
}

}  // namespace souvlaki::walk
