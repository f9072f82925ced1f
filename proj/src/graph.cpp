#include "souvlaki/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "souvlaki/errors.hpp"

namespace souvlaki {

Graph Graph::from_edges(std::size_t num_vertices, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.offsets_.assign(num_vertices + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || static_cast<std::size_t>(v) >= num_vertices) {
      throw InvalidArgument("edge endpoint out of range");
    }
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(edges.size() * 2);
  std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  // Edges were sorted by (u, v), so each adjacency list is already increasing.
  for (std::size_t v = 0; v < num_vertices; ++v) {
    std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
  }
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::max_degree() const {
  int best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(static_cast<VertexId>(v)));
  return best;
}

std::map<int, std::size_t> Graph::degree_histogram() const {
  std::map<int, std::size_t> hist;
  for (std::size_t v = 0; v < num_vertices(); ++v) ++hist[degree(static_cast<VertexId>(v))];
  return hist;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(static_cast<VertexId>(u))) {
      if (static_cast<VertexId>(u) < v) out.emplace_back(static_cast<VertexId>(u), v);
    }
  }
  return out;
}

void Graph::set_labels(std::vector<VertexLabel> labels) {
  if (labels.size() != num_vertices()) throw InvalidArgument("label count mismatch");
  labels_ = std::move(labels);
}

std::string Graph::name(VertexId v) const {
  if (naming_) return naming_->name(v);
  return std::to_string(v);
}

std::vector<int> bfs_distances(const Graph& g, VertexId source, int max_distance) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<VertexId> queue;
  queue.reserve(g.num_vertices());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    if (max_distance >= 0 && dist[u] >= max_distance) continue;
    for (VertexId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<int> connected_components(const Graph& g, int* count) {
  std::vector<int> comp(g.num_vertices(), -1);
  int next = 0;
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : g.neighbors(u)) {
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return comp;
}

bool is_connected(const Graph& g) {
  int count = 0;
  connected_components(g, &count);
  return count <= 1;
}

Graph remove_edge(const Graph& g, VertexId u, VertexId v) {
  auto edges = g.edge_list();
  const Edge target{std::min(u, v), std::max(u, v)};
  std::erase(edges, target);
  Graph out = Graph::from_edges(g.num_vertices(), std::move(edges));
  if (!g.labels().empty()) out.set_labels(g.labels());
  out.set_naming(g.naming());
  return out;
}

Contraction contract(const Graph& g, const std::vector<std::vector<VertexId>>& classes) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> class_of(n, -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw InvalidArgument("empty contraction class");
    for (VertexId v : classes[c]) {
      if (class_of[v] >= 0) throw InvalidArgument("contraction classes overlap");
      class_of[v] = static_cast<VertexId>(c);
    }
  }
  Contraction out;
  out.image.assign(n, -1);
  out.class_vertices.assign(classes.size(), -1);
  VertexId next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const VertexId c = class_of[v];
    if (c < 0) {
      out.image[v] = next++;
    } else if (out.class_vertices[c] < 0) {
      out.class_vertices[c] = next++;
      out.image[v] = out.class_vertices[c];
    } else {
      out.image[v] = out.class_vertices[c];
    }
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [u, v] : g.edge_list()) edges.emplace_back(out.image[u], out.image[v]);
  out.graph = Graph::from_edges(static_cast<std::size_t>(next), std::move(edges));
  return out;
}

Budget::Budget(double max_vertices) : max_vertices_(max_vertices) {
  if (!(max_vertices > 0)) throw InvalidArgument("budget must be positive");
}

Budget Budget::from_env() {
  if (const char* env = std::getenv("SOUVLAKI_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0)) {
      throw InvalidArgument("SOUVLAKI_BUDGET must be a positive number");
    }
    return Budget(value);
  }
  return Budget();
}

void Budget::check(double estimate, const std::string& what) const {
  if (estimate > max_vertices_) throw BudgetExceeded(what, estimate, max_vertices_);
}

}  // namespace souvlaki
