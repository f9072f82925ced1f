#include "souvlaki/electrical.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "souvlaki/errors.hpp"
#include "souvlaki/random.hpp"

namespace souvlaki::electrical {

LinearSolveResult solve_dirichlet(const Graph& g, const std::vector<std::optional<double>>& fixed,
                                  const std::vector<double>& injection, const SolverOptions& options) {
  const std::size_t n = g.num_vertices();
  if (fixed.size() != n || injection.size() != n) throw InvalidArgument("boundary data size mismatch");

  // Unknowns: interior vertices connected to the boundary.
  std::vector<int> seen(n, 0);
  std::vector<VertexId> stack;
  for (std::size_t v = 0; v < n; ++v) {
    if (fixed[v]) {
      seen[v] = 1;
      stack.push_back(static_cast<VertexId>(v));
    }
  }
  if (stack.empty()) throw InvalidArgument("Dirichlet problem needs a nonempty boundary");
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> slot(n, -1);
  int unknowns = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!fixed[v] && seen[v]) slot[v] = unknowns++;
    if (!fixed[v] && !seen[v] && injection[v] != 0) throw InvalidArgument("current injected into a floating component");
  }

  LinearSolveResult out;
  out.values.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (fixed[v]) out.values[v] = *fixed[v];
  }
  if (unknowns == 0) return out;

  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (std::size_t v = 0; v < n; ++v) {
    const int i = slot[v];
    if (i < 0) continue;
    triplets.emplace_back(i, i, g.degree(static_cast<VertexId>(v)));
    rhs[i] += injection[v];
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) {
      if (slot[w] >= 0) {
        triplets.emplace_back(i, slot[w], -1.0);
      } else {
        rhs[i] += *fixed[w];
      }
    }
  }
  Eigen::SparseMatrix<double> L(unknowns, unknowns);
  L.setFromTriplets(triplets.begin(), triplets.end());

  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0) return out;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  cg.setTolerance(options.tolerance);
  const long budget = options.max_iterations > 0 ? options.max_iterations : 10L * unknowns;
  cg.setMaxIterations(budget);
  cg.compute(L);
  Eigen::VectorXd x = cg.solve(rhs);
  out.iterations = cg.iterations();
  out.residual = (L * x - rhs).norm() / rhs_norm;
  // The recursively updated CG residual drifts from the true one; restart from the iterate.
  for (int restart = 0; restart < 4 && !(out.residual <= options.tolerance) && out.iterations < budget; ++restart) {
    cg.setMaxIterations(budget - out.iterations);
    x = cg.solveWithGuess(rhs, x);
    out.iterations += cg.iterations();
    out.residual = (L * x - rhs).norm() / rhs_norm;
  }
  if (!(out.residual <= options.tolerance)) {
    throw SolverError("conjugate gradient did not converge", out.residual, out.iterations);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (slot[v] >= 0) out.values[v] = x[slot[v]];
  }
  return out;
}

namespace {

// Terminal class per vertex: 0 for A, 1 for B, -1 otherwise.
std::vector<int> terminal_classes(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("terminal sets must be nonempty");
  std::vector<int> cls(g.num_vertices(), -1);
  for (int side = 0; side < 2; ++side) {
    for (VertexId v : side == 0 ? a : b) {
      if (v < 0 || static_cast<std::size_t>(v) >= g.num_vertices()) throw InvalidArgument("terminal out of range");
      if (cls[v] >= 0 && cls[v] != side) throw InvalidArgument("terminal sets must be disjoint");
      cls[v] = side;
    }
  }
  return cls;
}

bool terminals_connected(const Graph& g, const std::vector<int>& cls) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack;
  for (std::size_t v = 0; v < cls.size(); ++v) {
    if (cls[v] == 0) {
      seen[v] = 1;
      stack.push_back(static_cast<VertexId>(v));
    }
  }
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    if (cls[u] == 1) return true;
    for (VertexId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace

ResistanceResult effective_resistance(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                                      const SolverOptions& options) {
  // A held at potential 1 and B at 0 shorts each set without merging parallel edges.
  const std::vector<int> cls = terminal_classes(g, a, b);
  if (!terminals_connected(g, cls)) throw InvalidArgument("terminals are not connected");
  std::vector<std::optional<double>> fixed(g.num_vertices());
  for (std::size_t v = 0; v < cls.size(); ++v) {
    if (cls[v] >= 0) fixed[v] = cls[v] == 0 ? 1.0 : 0.0;
  }
  const LinearSolveResult solve = solve_dirichlet(g, fixed, std::vector<double>(g.num_vertices(), 0.0), options);
  double current = 0;
  for (std::size_t v = 0; v < cls.size(); ++v) {
    if (cls[v] != 0) continue;
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) current += 1.0 - solve.values[w];
  }
  return ResistanceResult{1.0 / current, solve.residual, solve.iterations};
}

Rational exact_effective_resistance(const Graph& g, std::span<const VertexId> a, std::span<const VertexId> b,
                                    std::size_t max_vertices) {
  if (g.num_vertices() > max_vertices) {
    throw BudgetExceeded("exact elimination", static_cast<double>(g.num_vertices()), static_cast<double>(max_vertices));
  }
  const std::vector<int> cls = terminal_classes(g, a, b);
  if (!terminals_connected(g, cls)) throw InvalidArgument("terminals are not connected");
  // Node 0 is A, node 1 is B, the rest keep their order; parallel edges add conductance.
  std::vector<VertexId> node(g.num_vertices());
  VertexId next = 2;
  for (std::size_t v = 0; v < cls.size(); ++v) node[v] = cls[v] >= 0 ? cls[v] : next++;
  const VertexId ta = 0;
  const VertexId tb = 1;
  const auto n = static_cast<std::size_t>(next);
  std::vector<std::map<VertexId, Rational>> c(n);
  for (const auto& [u, v] : g.edge_list()) {
    const VertexId x = node[u];
    const VertexId y = node[v];
    if (x == y) continue;
    c[x][y] += 1;
    c[y][x] += 1;
  }
  // Star-mesh elimination in minimum-degree order, keeping the two terminals.
  std::set<std::pair<std::size_t, VertexId>> queue;
  for (VertexId v = 2; v < next; ++v) queue.emplace(c[v].size(), v);
  while (!queue.empty()) {
    const VertexId v = queue.begin()->second;
    queue.erase(queue.begin());
    std::map<VertexId, Rational> star = std::move(c[v]);
    c[v].clear();
    Rational total = 0;
    for (const auto& [w, x] : star) total += x;
    for (const auto& [w, x] : star) {
      if (w != ta && w != tb) queue.erase({c[w].size(), w});
      c[w].erase(v);
    }
    for (auto i = star.begin(); i != star.end(); ++i) {
      for (auto j = std::next(i); j != star.end(); ++j) {
        const Rational add = i->second * j->second / total;
        c[i->first][j->first] += add;
        c[j->first][i->first] += add;
      }
    }
    for (const auto& [w, x] : star) {
      if (w != ta && w != tb) queue.emplace(c[w].size(), w);
    }
  }
  return 1 / c[ta].at(tb);
}

ContractedSpine contract_junctions(const assembly::Assembled& spine) {
  const int K = spine.souvlaki->top_level();
  std::vector<std::vector<VertexId>> classes;
  for (int k = 1; k <= K; ++k) classes.push_back(spine.junction(k));
  ContractedSpine out{contract(spine.graph, classes), {-1}, {0}};
  for (int k = 1; k <= K; ++k) {
    out.junction_vertex.push_back(out.contraction.class_vertices[k - 1]);
    out.degree.push_back(out.contraction.graph.degree(out.junction_vertex.back()));
  }
  return out;
}

std::vector<ProfileRow> junction_resistance_profile(const assembly::Assembled& spine, const SolverOptions& options) {
  const ContractedSpine cs = contract_junctions(spine);
  const int K = spine.souvlaki->top_level();
  std::vector<ProfileRow> rows;
  for (int k = 1; k < K; ++k) {
    const VertexId a = cs.junction_vertex[k];
    const VertexId b = cs.junction_vertex[k + 1];
    rows.push_back(ProfileRow{k, effective_resistance(cs.contraction.graph, std::span(&a, 1), std::span(&b, 1), options),
                              cs.degree[k]});
  }
  return rows;
}

TreeStrategy parse_tree_strategy(std::string_view text) {
  if (text == "bfs") return TreeStrategy::Bfs;
  if (text == "dfs") return TreeStrategy::Dfs;
  if (text == "random") return TreeStrategy::Random;
  throw InvalidArgument("unknown tree strategy '" + std::string(text) + "' (bfs|dfs|random)");
}

std::string to_string(TreeStrategy s) {
  switch (s) {
    case TreeStrategy::Bfs:
      return "bfs";
    case TreeStrategy::Dfs:
      return "dfs";
    case TreeStrategy::Random:
      return "random";
  }
  return "?";
}

namespace {

std::vector<VertexId> orient(const std::vector<std::vector<VertexId>>& adjacency, VertexId root) {
  std::vector<VertexId> parent(adjacency.size(), -2);
  parent[root] = -1;
  std::vector<VertexId> stack{root};
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : adjacency[u]) {
      if (parent[w] == -2) {
        parent[w] = u;
        stack.push_back(w);
      }
    }
  }
  return parent;
}

}  // namespace

std::vector<VertexId> spanning_tree(const Graph& g, VertexId root, TreeStrategy strategy, std::uint64_t seed) {
  const std::size_t n = g.num_vertices();
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw InvalidArgument("tree root out of range");
  if (!is_connected(g)) throw InvalidArgument("spanning tree needs a connected graph");
  std::vector<VertexId> parent(n, -2);
  parent[root] = -1;
  switch (strategy) {
    case TreeStrategy::Bfs: {
      std::vector<VertexId> queue{root};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (VertexId w : g.neighbors(queue[head])) {
          if (parent[w] == -2) {
            parent[w] = queue[head];
            queue.push_back(w);
          }
        }
      }
      return parent;
    }
    case TreeStrategy::Dfs: {
      // Iterative depth-first search; a vertex's parent is the vertex it was discovered from.
      std::vector<std::size_t> next(n, 0);
      std::vector<VertexId> stack{root};
      while (!stack.empty()) {
        const VertexId u = stack.back();
        const auto nb = g.neighbors(u);
        if (next[u] == nb.size()) {
          stack.pop_back();
          continue;
        }
        const VertexId w = nb[next[u]++];
        if (parent[w] == -2) {
          parent[w] = u;
          stack.push_back(w);
        }
      }
      return parent;
    }
    case TreeStrategy::Random: {
      auto edges = g.edge_list();
      Engine rng = substream(seed, 0);
      std::vector<std::pair<std::uint64_t, std::size_t>> order(edges.size());
      for (std::size_t i = 0; i < edges.size(); ++i) order[i] = {rng(), i};
      std::sort(order.begin(), order.end());
      std::vector<std::size_t> rank(n, 0);
      std::vector<std::size_t> up(n);
      std::iota(up.begin(), up.end(), 0);
      boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), up.data());
      std::vector<std::vector<VertexId>> adjacency(n);
      for (const auto& [w, i] : order) {
        const auto [u, v] = edges[i];
        if (sets.find_set(u) == sets.find_set(v)) continue;
        sets.link(sets.find_set(u), sets.find_set(v));
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
      }
      return orient(adjacency, root);
    }
  }
  return parent;
}

Graph tree_graph(const std::vector<VertexId>& parent) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] >= 0) edges.emplace_back(parent[v], static_cast<VertexId>(v));
  }
  return Graph::from_edges(parent.size(), std::move(edges));
}

double tree_resistance(const std::vector<VertexId>& parent, std::span<const VertexId> grounded) {
  const std::size_t n = parent.size();
  std::vector<std::vector<VertexId>> children(n);
  VertexId root = -1;
  for (std::size_t v = 0; v < n; ++v) {
    if (parent[v] == -1) {
      root = static_cast<VertexId>(v);
    } else if (parent[v] >= 0) {
      children[parent[v]].push_back(static_cast<VertexId>(v));
    }
  }
  if (root < 0) throw InvalidArgument("parent array has no root");
  std::vector<char> ground(n, 0);
  for (VertexId v : grounded) ground[v] = 1;
  // Post-order: resistance from each vertex down to the grounded vertices of its subtree.
  std::vector<VertexId> order{root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (VertexId c : children[order[i]]) order.push_back(c);
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> r(n, inf);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (ground[v]) {
      r[v] = 0;
      continue;
    }
    double conductance = 0;
    for (VertexId c : children[v]) {
      if (std::isfinite(r[c])) conductance += 1 / (1 + r[c]);
    }
    r[v] = conductance > 0 ? 1 / conductance : inf;
  }
  return r[root];
}

SubtreeContrast subtree_resistance_contrast(const assembly::Assembled& spine, TreeStrategy strategy, std::uint64_t seed,
                                            const SolverOptions& options) {
  const VertexId source = spine.source();
  const auto frontier = spine.frontier();
  SubtreeContrast out;
  out.tree = tree_resistance(spanning_tree(spine.graph, source, strategy, seed), frontier);
  out.graph_solve = effective_resistance(spine.graph, std::span(&source, 1), frontier, options);
  out.graph = out.graph_solve.value;
  return out;
}

}  // namespace souvlaki::electrical
