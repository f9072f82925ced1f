#include "souvlaki/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "souvlaki/census.hpp"
#include "souvlaki/errors.hpp"
#include "souvlaki/random.hpp"

namespace souvlaki::diagnostics {

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

std::string hex(std::uint64_t x) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4U) out[i] = digits[x & 15U];
  return out;
}

/// Description of a stable coloring that does not depend on vertex ids.
std::string coloring_certificate(const Graph& g, const std::vector<int>& colors, VertexId root) {
  const int m = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  std::vector<long> count(m, 0);
  std::vector<std::vector<int>> signature(m);
  std::vector<char> seen(m, 0);
  for (std::size_t v = 0; v < colors.size(); ++v) {
    const int c = colors[v];
    ++count[c];
    if (seen[c]) continue;
    seen[c] = 1;
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) signature[c].push_back(colors[w]);
    std::sort(signature[c].begin(), signature[c].end());
  }
  std::string out = "r" + std::to_string(colors[root]);
  for (int c = 0; c < m; ++c) {
    out += "|" + std::to_string(count[c]) + ":";
    for (int x : signature[c]) out += std::to_string(x) + ",";
  }
  return out;
}

std::vector<int> root_colors(std::size_t n, VertexId root) {
  std::vector<int> colors(n, 1);
  colors[root] = 0;
  return colors;
}

class CanonicalSearch {
 public:
  CanonicalSearch(const Graph& g, long budget) : g_(g), budget_(budget) {}

  /// Lexicographically least adjacency encoding over all leaves of the individualization tree.
  /// Branches equivalent under automorphisms found so far are skipped; they carry the same
  /// leaf encodings, so the minimum is unchanged.
  std::optional<std::string> run(std::vector<int> colors) {
    std::vector<VertexId> prefix;
    visit(std::move(colors), prefix);
    if (aborted_) return std::nullopt;
    return best_;
  }

 private:
  void visit(std::vector<int> colors, std::vector<VertexId>& prefix) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    colors = refine_colors(g_, std::move(colors));
    const std::size_t n = colors.size();
    std::vector<int> count(n, 0);
    for (int c : colors) ++count[c];
    // Branch on the smallest non-singleton cell, lowest color first.
    int target = -1;
    for (std::size_t c = 0; c < n; ++c) {
      if (count[c] > 1 && (target < 0 || count[c] < count[target])) target = static_cast<int>(c);
    }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<VertexId> tried;
    for (std::size_t v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      if (!tried.empty() && equivalent(static_cast<VertexId>(v), tried, prefix)) continue;
      tried.push_back(static_cast<VertexId>(v));
      std::vector<int> next(n);
      for (std::size_t u = 0; u < n; ++u) next[u] = 2 * colors[u];
      next[v] = 2 * target - 1;
      prefix.push_back(static_cast<VertexId>(v));
      visit(std::move(next), prefix);
      prefix.pop_back();
      if (aborted_) return;
    }
  }

  /// Whether v shares an orbit with an explored vertex under the found automorphisms that fix
  /// the prefix pointwise.
  bool equivalent(VertexId v, const std::vector<VertexId>& tried, const std::vector<VertexId>& prefix) const {
    const std::size_t n = g_.num_vertices();
    std::vector<VertexId> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = static_cast<VertexId>(i);
    auto find = [&](VertexId x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    bool any = false;
    for (const auto& gamma : automorphisms_) {
      bool fixes = true;
      for (VertexId p : prefix) fixes = fixes && gamma[p] == p;
      if (!fixes) continue;
      any = true;
      for (std::size_t x = 0; x < n; ++x) root[find(static_cast<VertexId>(x))] = find(gamma[x]);
    }
    if (!any) return false;
    const VertexId rv = find(v);
    for (VertexId t : tried) {
      if (find(t) == rv) return true;
    }
    return false;
  }

  void leaf(const std::vector<int>& colors) {
    const std::size_t n = colors.size();
    std::vector<VertexId> order(n);
    for (std::size_t v = 0; v < n; ++v) order[colors[v]] = static_cast<VertexId>(v);
    std::string bits;
    bits.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) bits.push_back(g_.has_edge(order[i], order[j]) ? '1' : '0');
    }
    if (first_order_.empty()) {
      first_order_ = order;
      first_bits_ = bits;
    } else if (bits == first_bits_) {
      record(order, first_order_);
    } else if (best_ && bits == *best_) {
      record(order, best_order_);
    }
    if (!best_ || bits < *best_) {
      best_ = std::move(bits);
      best_order_ = std::move(order);
    }
  }

  void record(const std::vector<VertexId>& from, const std::vector<VertexId>& to) {
    if (automorphisms_.size() >= kMaxGenerators) return;
    std::vector<VertexId> gamma(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) gamma[from[i]] = to[i];
    automorphisms_.push_back(std::move(gamma));
  }

  static constexpr std::size_t kMaxGenerators = 256;
  const Graph& g_;
  long budget_;
  long nodes_ = 0;
  bool aborted_ = false;
  std::optional<std::string> best_;
  std::vector<VertexId> best_order_;
  std::string first_bits_;
  std::vector<VertexId> first_order_;
  std::vector<std::vector<VertexId>> automorphisms_;
};

std::string pack_bits(const std::string& bits) {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = i; j < i + 4; ++j) nibble = 2 * nibble + (j < bits.size() && bits[j] == '1' ? 1 : 0);
    out.push_back("0123456789abcdef"[nibble]);
  }
  return out;
}

/// Induced ball of radius r around v, with the root as vertex 0.
Graph induced_ball(const Graph& g, VertexId v, int r, std::vector<VertexId>& scratch_index,
                   std::vector<VertexId>& members) {
  members.clear();
  members.push_back(v);
  scratch_index[v] = 0;
  std::vector<int> dist{0};
  for (std::size_t head = 0; head < members.size(); ++head) {
    if (dist[head] == r) continue;
    for (VertexId w : g.neighbors(members[head])) {
      if (scratch_index[w] >= 0) continue;
      scratch_index[w] = static_cast<VertexId>(members.size());
      members.push_back(w);
      dist.push_back(dist[head] + 1);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (VertexId w : g.neighbors(members[i])) {
      const VertexId j = scratch_index[w];
      if (j > static_cast<VertexId>(i)) edges.emplace_back(static_cast<VertexId>(i), j);
    }
  }
  for (VertexId m : members) scratch_index[m] = -1;
  return Graph::from_edges(members.size(), std::move(edges));
}

}  // namespace

std::vector<int> refine_colors(const Graph& g, std::vector<int> colors) {
  const std::size_t n = g.num_vertices();
  if (colors.size() != n) throw InvalidArgument("one color per vertex required");
  // Signature of v: its color followed by the sorted colors of its neighbors, in one flat buffer.
  std::vector<std::size_t> start(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) start[v + 1] = start[v] + 1 + g.neighbors(static_cast<VertexId>(v)).size();
  std::vector<int> sig(start[n]);
  std::vector<std::size_t> order(n);
  std::vector<int> next(n);
  auto sig_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(sig.begin() + static_cast<std::ptrdiff_t>(start[a]),
                                        sig.begin() + static_cast<std::ptrdiff_t>(start[a + 1]),
                                        sig.begin() + static_cast<std::ptrdiff_t>(start[b]),
                                        sig.begin() + static_cast<std::ptrdiff_t>(start[b + 1]));
  };
  std::size_t classes = 0;
  {
    std::vector<int> s(colors);
    std::sort(s.begin(), s.end());
    classes = static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t at = start[v];
      sig[at++] = colors[v];
      for (VertexId w : g.neighbors(static_cast<VertexId>(v))) sig[at++] = colors[w];
      std::sort(sig.begin() + static_cast<std::ptrdiff_t>(start[v] + 1), sig.begin() + static_cast<std::ptrdiff_t>(at));
    }
    for (std::size_t v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), sig_less);
    int c = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || sig_less(order[i - 1], order[i])) ++c;
      next[order[i]] = c;
    }
    const auto now = static_cast<std::size_t>(c + 1);
    colors.swap(next);
    if (now == classes) break;
    classes = now;
  }
  return colors;
}

BallType ball_type(const Graph& ball, VertexId root, const TypeOptions& options) {
  const std::size_t n = ball.num_vertices();
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw InvalidArgument("root out of range");
  BallType out;
  out.vertices = static_cast<int>(n);
  out.root_degree = ball.degree(root);
  if (static_cast<int>(n) <= options.exact_max_vertices) {
    CanonicalSearch search(ball, options.search_budget);
    if (auto bits = search.run(root_colors(n, root))) {
      out.key = "C:" + std::to_string(n) + ":" + pack_bits(*bits);
      out.exact = true;
      return out;
    }
  }
  const std::vector<int> stable = refine_colors(ball, root_colors(n, root));
  out.key = "H:" + std::to_string(n) + ":" + hex(fnv1a(coloring_certificate(ball, stable, root)));
  return out;
}

std::vector<std::uint64_t> rooted_type_hashes(const Graph& g, int r) {
  std::vector<std::uint64_t> out(g.num_vertices());
  std::vector<VertexId> index(g.num_vertices(), -1);
  std::vector<VertexId> members;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const Graph ball = induced_ball(g, static_cast<VertexId>(v), r, index, members);
    const std::vector<int> stable = refine_colors(ball, root_colors(ball.num_vertices(), 0));
    out[v] = fnv1a(coloring_certificate(ball, stable, 0));
  }
  return out;
}

TransportFunction::TransportFunction(int radius, Rule rule, std::string name)
    : radius_(radius), rule_(std::move(rule)), name_(std::move(name)) {
  if (radius < 0) throw InvalidArgument("transport radius must be >= 0");
}

TransportFunction TransportFunction::random(int radius, std::uint64_t seed, int max_value) {
  if (max_value < 0) throw InvalidArgument("max_value must be >= 0");
  auto rule = [seed, max_value](std::uint64_t to, std::uint64_t tx, int dist, std::int64_t geo, int, int) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ to);
    h = mix(h ^ (tx * 0x9e3779b97f4a7c15ULL));
    h = mix(h ^ static_cast<std::uint64_t>(dist));
    h = mix(h ^ static_cast<std::uint64_t>(geo));
    return static_cast<std::int64_t>(h % static_cast<std::uint64_t>(max_value + 1));
  };
  return TransportFunction(radius, rule, "random(r=" + std::to_string(radius) + ",seed=" + std::to_string(seed) + ")");
}

TransportFunction TransportFunction::adjacency() {
  return TransportFunction(1, [](std::uint64_t, std::uint64_t, int dist, std::int64_t, int, int) {
    return std::int64_t{dist == 1 ? 1 : 0};
  }, "adjacency");
}

TransportFunction TransportFunction::uphill() {
  return TransportFunction(1, [](std::uint64_t, std::uint64_t, int dist, std::int64_t, int deg_o, int deg_x) {
    return std::int64_t{dist == 1 && deg_x > deg_o ? 1 : 0};
  }, "uphill");
}

RootLaw census_root_law(const assembly::Assembled& tree) {
  const auto& s = *tree.souvlaki;
  if (s.layout() != assembly::Layout::Tree) throw InvalidArgument("census root law needs a T'_n instance");
  const int n = s.top_level();
  const BigInt total = census::assembled_vertex_count(n, s.d(), s.mode());
  std::vector<long> per_level(n + 1, 0);
  for (const auto& lab : tree.graph.labels()) ++per_level.at(lab.level);
  RootLaw law(tree.graph.num_vertices());
  Rational mass = 0;
  for (int k = 1; k <= n; ++k) {
    const Rational p = Rational(ipow(s.d(), static_cast<unsigned>(n - k + 1)) * census::ownership_count(k, s.d(), s.mode()),
                                total);
    mass += p;
    if (per_level[k] == 0) {
      if (p != 0) throw Error("census assigns mass to an empty level");
      continue;
    }
    const Rational each = p / per_level[k];
    for (std::size_t v = 0; v < law.size(); ++v) {
      if (tree.graph.labels()[v].level == k) law[v] = each;
    }
  }
  if (mass != 1) throw Error("census level law does not sum to one");
  return law;
}

RootLaw degree_biased_law(const Graph& g) {
  const Rational twice_edges(static_cast<long>(2 * g.num_edges()));
  RootLaw law(g.num_vertices());
  for (std::size_t v = 0; v < law.size(); ++v) law[v] = g.degree(static_cast<VertexId>(v)) / twice_edges;
  return law;
}

MtpResult mtp_check(const Graph& g, const RootLaw& law, const TransportFunction& f) {
  if (law.size() != g.num_vertices()) throw InvalidArgument("root law size mismatch");
  const int r = f.radius();
  const std::vector<std::uint64_t> type = rooted_type_hashes(g, r);
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> out_mass(n, 0);
  std::vector<std::int64_t> in_mass(n, 0);
  std::vector<int> dist(n, -1);
  std::vector<std::int64_t> geodesics(n, 0);
  std::vector<VertexId> visited;
  for (std::size_t o = 0; o < n; ++o) {
    visited.assign(1, static_cast<VertexId>(o));
    dist[o] = 0;
    geodesics[o] = 1;
    for (std::size_t head = 0; head < visited.size(); ++head) {
      const VertexId u = visited[head];
      if (dist[u] == r) continue;
      for (VertexId w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          visited.push_back(w);
        }
        if (dist[w] == dist[u] + 1) geodesics[w] += geodesics[u];
      }
    }
    for (VertexId x : visited) {
      const std::int64_t value =
          f(type[o], type[x], dist[x], geodesics[x], g.degree(static_cast<VertexId>(o)), g.degree(x));
      if (value < 0) throw InvalidArgument("transport functions must be nonnegative");
      out_mass[o] += value;
      in_mass[x] += value;
    }
    for (VertexId x : visited) {
      dist[x] = -1;
      geodesics[x] = 0;
    }
  }
  MtpResult res{0, 0, f.name()};
  for (std::size_t v = 0; v < n; ++v) {
    if (law[v] == 0) continue;
    res.lhs += law[v] * out_mass[v];
    res.rhs += law[v] * in_mass[v];
  }
  return res;
}

MtpResult mtp_check(int n, int d, const TransportFunction& f) {
  if (n > 2) throw BudgetExceeded("mtp exhaustive level", n, 2);
  const auto tree = assembly::assemble_Tn(n, d);
  return mtp_check(tree.graph, census_root_law(tree), f);
}

TvEstimate total_variation(const std::map<std::string, long>& a, long na, const std::map<std::string, long>& b,
                           long nb) {
  if (na <= 0 || nb <= 0) throw InvalidArgument("empty sample");
  TvEstimate out;
  auto ia = a.begin();
  auto ib = b.begin();
  auto add = [&](long ca, long cb) {
    const double p = static_cast<double>(ca) / static_cast<double>(na);
    const double q = static_cast<double>(cb) / static_cast<double>(nb);
    out.value += std::abs(p - q);
    out.radius += 3.0 * (std::sqrt(p * (1 - p) / static_cast<double>(na)) + std::sqrt(q * (1 - q) / static_cast<double>(nb)));
  };
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      add(ia->second, 0);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      add(0, ib->second);
      ++ib;
    } else {
      add(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  out.value /= 2;
  out.radius /= 2;
  return out;
}

namespace {

/// Invariants re-derived for hashed types; equal hashes with different audits are collisions.
std::string audit_invariant(const Graph& ball, VertexId root) {
  std::vector<int> degrees;
  for (std::size_t v = 0; v < ball.num_vertices(); ++v) degrees.push_back(ball.degree(static_cast<VertexId>(v)));
  std::sort(degrees.begin(), degrees.end());
  const std::vector<int> dist = bfs_distances(ball, root);
  std::map<int, int> layers;
  for (int x : dist) ++layers[x];
  std::string out;
  for (int x : degrees) out += std::to_string(x) + ",";
  out += "|";
  for (const auto& [k, c] : layers) out += std::to_string(k) + ":" + std::to_string(c) + ",";
  return out + "|" + std::to_string(ball.num_edges());
}

struct TypeTally {
  std::map<std::string, long>* counts;
  std::unordered_map<std::string, std::string>* audits;
  LwcReport* report;

  void add(const Graph& ball, VertexId root) {
    const BallType t = ball_type(ball, root);
    ++(*counts)[t.key];
    report->max_root_degree = std::max(report->max_root_degree, t.root_degree);
    if (t.exact) return;
    const std::string audit = audit_invariant(ball, root);
    auto [it, fresh] = audits->emplace(t.key, audit);
    if (fresh) {
      ++report->hashed_types;
    } else if (it->second != audit) {
      ++report->hash_collisions;
    }
  }
};

}  // namespace

LwcReport lwc_diagnostic(int r, int d, int n1, int n2, long samples, std::uint64_t seed, const Budget& budget) {
  if (r < 0) throw InvalidArgument("radius must be >= 0");
  if (samples <= 0) throw InvalidArgument("samples must be positive");
  LwcReport report;
  report.r = r;
  report.d = d;
  report.n1 = n1;
  report.n2 = n2;
  report.samples = samples;
  report.seed = seed;
  std::unordered_map<std::string, std::string> audits;
  const assembly::Souvlaki t1 = assembly::Souvlaki::tree(n1, d);
  const assembly::Souvlaki t2 = assembly::Souvlaki::tree(n2, d);
  std::map<std::string, long>* targets[3] = {&report.types_n1, &report.types_n2, &report.types_limit};
  for (int stream = 0; stream < 3; ++stream) {
    TypeTally tally{targets[stream], &audits, &report};
    for (long i = 0; i < samples; ++i) {
      Engine rng = substream(seed, (static_cast<std::uint64_t>(stream) << 48U) | static_cast<std::uint64_t>(i));
      if (stream == 2) {
        const assembly::RootedSample s = assembly::sample_limit_ball(r, d, rng(), GlueMode::TowerSharing, budget);
        tally.add(s.graph, s.root);
      } else {
        const assembly::Souvlaki& tree = stream == 0 ? t1 : t2;
        const assembly::RootedSample s = assembly::rooted_ball(tree, assembly::sample_uniform_vertex(tree, rng), r, budget);
        tally.add(s.graph, s.root);
      }
    }
  }
  report.n1_n2 = total_variation(report.types_n1, samples, report.types_n2, samples);
  report.n1_limit = total_variation(report.types_n1, samples, report.types_limit, samples);
  report.n2_limit = total_variation(report.types_n2, samples, report.types_limit, samples);
  return report;
}

DeltaMode parse_delta_mode(const std::string& text) {
  if (text == "exact") return DeltaMode::Exact;
  if (text == "sampled") return DeltaMode::Sampled;
  throw InvalidArgument("delta mode must be exact or sampled, got '" + text + "'");
}

namespace {

using Dist = std::int16_t;

std::vector<Dist> all_pairs(const Graph& g, std::size_t stride) {
  const std::size_t n = g.num_vertices();
  std::vector<Dist> d(n * stride, 0);
  for (std::size_t s = 0; s < n; ++s) {
    const std::vector<int> row = bfs_distances(g, static_cast<VertexId>(s));
    for (std::size_t t = 0; t < n; ++t) {
      if (row[t] < 0) throw InvalidArgument("four-point delta needs a connected graph");
      if (row[t] > std::numeric_limits<Dist>::max() / 4) throw InvalidArgument("diameter too large");
      d[s * stride + t] = static_cast<Dist>(row[t]);
    }
  }
  return d;
}

int four_point(int ab, int cd, int ac, int bd, int ad, int bc) {
  const int s1 = ab + cd;
  const int s2 = ac + bd;
  const int s3 = ad + bc;
  const int hi = std::max({s1, s2, s3});
  const int mid = std::max(std::min(s1, s2), std::min(std::max(s1, s2), s3));
  return hi - mid;
}

/// Max over d in [from, n) of largest minus middle pairing sum for fixed a, b, c.
Dist scan_fourth(const Dist* __restrict da, const Dist* __restrict db, const Dist* __restrict dc, std::size_t from,
                 std::size_t n, Dist ab, Dist ac, Dist bc) {
  Dist best = 0;
  for (std::size_t i = from; i < n; ++i) {
    const Dist s1 = static_cast<Dist>(ab + dc[i]);
    const Dist s2 = static_cast<Dist>(ac + db[i]);
    const Dist s3 = static_cast<Dist>(bc + da[i]);
    const Dist hi = std::max(std::max(s1, s2), s3);
    const Dist mid = std::max(std::min(s1, s2), std::min(std::max(s1, s2), s3));
    best = std::max(best, static_cast<Dist>(hi - mid));
  }
  return best;
}

}  // namespace

DeltaStats gromov_delta(const Graph& g, DeltaMode mode, std::uint64_t quadruples, std::uint64_t seed,
                        std::string instance, std::size_t max_exact_vertices) {
  const std::size_t n = g.num_vertices();
  DeltaStats out;
  out.instance = std::move(instance);
  out.exact = mode == DeltaMode::Exact;
  if (n < 4) return out;
  if (mode == DeltaMode::Exact) {
    if (n > max_exact_vertices) {
      throw BudgetExceeded("exact four-point scan", static_cast<double>(n), static_cast<double>(max_exact_vertices));
    }
    const std::size_t stride = n;
    const std::vector<Dist> d = all_pairs(g, stride);
    int best = 0;
    for (std::size_t a = 0; a < n; ++a) {
      const Dist* da = d.data() + a * stride;
      for (std::size_t b = a + 1; b < n; ++b) {
        const Dist* db = d.data() + b * stride;
        for (std::size_t c = b + 1; c + 1 < n; ++c) {
          const Dist* dc = d.data() + c * stride;
          // The largest pairing uses one of ab, ac, bc; the other two bound the gap.
          std::array<int, 3> three{da[b], da[c], db[c]};
          std::sort(three.begin(), three.end());
          if (2 * three[1] <= best) continue;
          const Dist local = scan_fourth(da, db, dc, c + 1, n, da[b], da[c], db[c]);
          if (local > best) {
            best = local;
            for (std::size_t x = c + 1; x < n; ++x) {
              if (four_point(da[b], dc[x], da[c], db[x], da[x], db[c]) == best) {
                out.witness = {static_cast<VertexId>(a), static_cast<VertexId>(b), static_cast<VertexId>(c),
                               static_cast<VertexId>(x)};
                break;
              }
            }
          }
        }
      }
    }
    out.twice_delta = best;
    const auto nn = static_cast<std::uint64_t>(n);
    out.quadruples = nn * (nn - 1) / 2 * (nn - 2) / 3 * (nn - 3) / 4;
    return out;
  }

  if (quadruples == 0) throw InvalidArgument("sampled mode needs a positive quadruple count");
  Engine rng = substream(seed, 0);
  const bool dense = n <= max_exact_vertices;
  const std::vector<Dist> d = dense ? all_pairs(g, n) : std::vector<Dist>{};
  for (std::uint64_t q = 0; q < quadruples; ++q) {
    std::array<VertexId, 4> v{};
    for (int i = 0; i < 4; ++i) {
      bool fresh = false;
      while (!fresh) {
        v[i] = static_cast<VertexId>(uniform_below(rng, n));
        fresh = std::find(v.begin(), v.begin() + i, v[i]) == v.begin() + i;
      }
    }
    int dist[4][4];
    for (int i = 0; i < 4; ++i) {
      std::vector<int> row;
      if (!dense) row = bfs_distances(g, v[i]);
      for (int j = 0; j < 4; ++j) {
        dist[i][j] = dense ? d[static_cast<std::size_t>(v[i]) * n + v[j]] : row[v[j]];
        if (dist[i][j] < 0) throw InvalidArgument("four-point delta needs a connected graph");
      }
    }
    const int gap = four_point(dist[0][1], dist[2][3], dist[0][2], dist[1][3], dist[0][3], dist[1][2]);
    if (gap > out.twice_delta || out.witness.empty()) {
      out.twice_delta = std::max(out.twice_delta, gap);
      if (gap == out.twice_delta) out.witness.assign(v.begin(), v.end());
    }
  }
  out.quadruples = quadruples;
  return out;
}

}  // namespace souvlaki::diagnostics
