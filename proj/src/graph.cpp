#include "zuklab/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "zuklab/error.hpp"

namespace zuklab {

WeightedMultigraph WeightedMultigraph::build(std::size_t vertex_count,
                                             std::span<const Edge> raw_edges,
                                             std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count) {
    throw InvalidInput("label count " + std::to_string(labels.size()) +
                       " does not match vertex count " + std::to_string(vertex_count));
  }
  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (const Edge& e : raw_edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has a vertex index out of range");
    }
    if (e.u == e.v) throw InvalidInput("self-loop not supported");
    if (e.mult == 0) throw InvalidInput("edge multiplicity must be positive");
    edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.mult});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  WeightedMultigraph g;
  g.vertex_count_ = vertex_count;
  g.labels_ = std::move(labels);
  for (const Edge& e : edges) {
    if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v) {
      g.edges_.back().mult += e.mult;
    } else {
      g.edges_.push_back(e);
    }
  }
  return g;
}

std::uint64_t WeightedMultigraph::multiplicity(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, 0},
                             [](const Edge& a, const Edge& b) {
                               return a.u != b.u ? a.u < b.u : a.v < b.v;
                             });
  if (it != edges_.end() && it->u == u && it->v == v) return it->mult;
  return 0;
}

std::uint64_t WeightedMultigraph::total_multiplicity() const {
  std::uint64_t total = 0;
  for (const Edge& e : edges_) total += e.mult;
  return total;
}

std::vector<std::uint64_t> WeightedMultigraph::vertex_weights() const {
  std::vector<std::uint64_t> w(vertex_count_, 0);
  for (const Edge& e : edges_) {
    w[e.u] += e.mult;
    w[e.v] += e.mult;
  }
  return w;
}

std::uint64_t WeightedMultigraph::subset_weight(std::span<const std::size_t> subset) const {
  const auto w = vertex_weights();
  std::uint64_t total = 0;
  for (std::size_t v : subset) {
    if (v >= vertex_count_) throw InvalidInput("vertex index out of range");
    total += w[v];
  }
  return total;
}

std::vector<std::size_t> WeightedMultigraph::isolated_vertices() const {
  const auto w = vertex_weights();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (w[v] == 0) out.push_back(v);
  }
  return out;
}

WeightedMultigraph WeightedMultigraph::scaled(std::uint64_t factor) const {
  if (factor == 0) throw InvalidInput("scale factor must be positive");
  WeightedMultigraph g = *this;
  for (Edge& e : g.edges_) e.mult *= factor;
  return g;
}

Adjacency Adjacency::of(const WeightedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (const Edge& e : g.edges()) {
    ++adj.offsets[e.u + 1];
    ++adj.offsets[e.v + 1];
  }
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  adj.neighbors.resize(adj.offsets.back());
  adj.weights.resize(adj.offsets.back());
  std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const Edge& e : g.edges()) {
    adj.neighbors[cursor[e.u]] = e.v;
    adj.weights[cursor[e.u]++] = static_cast<double>(e.mult);
    adj.neighbors[cursor[e.v]] = e.u;
    adj.weights[cursor[e.v]++] = static_cast<double>(e.mult);
  }
  return adj;
}

namespace {

// Breadth-first 2-coloring. Returns the component id of every vertex and
// whether every component is bipartite; `color` receives the side.
struct Coloring {
  std::vector<std::size_t> component;
  std::vector<int> color;
  std::size_t components = 0;
  bool bipartite = true;
};

Coloring color_graph(const WeightedMultigraph& g) {
  const Adjacency adj = Adjacency::of(g);
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  Coloring c;
  c.component.assign(n, kUnseen);
  c.color.assign(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (c.component[s] != kUnseen) continue;
    c.component[s] = c.components;
    c.color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t i = adj.offsets[u]; i < adj.offsets[u + 1]; ++i) {
        const std::size_t v = adj.neighbors[i];
        if (c.component[v] == kUnseen) {
          c.component[v] = c.components;
          c.color[v] = 1 - c.color[u];
          queue.push_back(v);
        } else if (c.color[v] == c.color[u]) {
          c.bipartite = false;
        }
      }
    }
    ++c.components;
  }
  return c;
}

}  // namespace

std::size_t component_count(const WeightedMultigraph& g) { return color_graph(g).components; }

bool is_connected(const WeightedMultigraph& g) { return component_count(g) <= 1; }

std::optional<Bipartition> find_bipartition(const WeightedMultigraph& g) {
  const Coloring c = color_graph(g);
  if (!c.bipartite) return std::nullopt;
  Bipartition b;
  b.side_of = c.color;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    (c.color[v] == 0 ? b.side1 : b.side2).push_back(v);
  }
  return b;
}

WeightedMultigraph union_graphs(std::span<const WeightedMultigraph> graphs) {
  if (graphs.empty()) return {};
  const std::size_t n = graphs.front().vertex_count();
  std::vector<Edge> all;
  std::vector<std::string> labels;
  for (const auto& g : graphs) {
    if (g.vertex_count() != n) {
      throw InvalidInput("union_graphs: mismatched vertex counts " + std::to_string(n) + " and " +
                         std::to_string(g.vertex_count()));
    }
    all.insert(all.end(), g.edges().begin(), g.edges().end());
    if (labels.empty() && g.has_labels()) labels = g.labels();
  }
  return WeightedMultigraph::build(n, all, std::move(labels));
}

StrippedGraph strip_multi_edges(const WeightedMultigraph& g) {
  std::vector<Edge> simple;
  std::vector<Edge> removed;
  for (const Edge& e : g.edges()) {
    simple.push_back({e.u, e.v, 1});
    if (e.mult > 1) removed.push_back({e.u, e.v, e.mult - 1});
  }
  return {WeightedMultigraph::build(g.vertex_count(), simple, g.labels()),
          WeightedMultigraph::build(g.vertex_count(), removed, g.labels())};
}

WeightedMultigraph complete_bipartite(std::size_t left, std::size_t right) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < left; ++i) {
    for (std::size_t j = 0; j < right; ++j) edges.push_back({i, left + j, 1});
  }
  return WeightedMultigraph::build(left + right, edges);
}

WeightedMultigraph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1});
  return WeightedMultigraph::build(n, edges);
}

}  // namespace zuklab
