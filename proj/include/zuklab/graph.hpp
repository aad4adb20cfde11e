#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zuklab {

/// An undirected edge {u, v} carrying an integer multiplicity.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::uint64_t mult = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Finite multigraph with integer edge multiplicities.
 *
 * The edge list is canonical: every edge has u < v, each unordered pair
 * appears once carrying its total multiplicity, and edges are sorted by
 * (u, v). Self-loops are rejected. The multiplicity m(e) is the weight used
 * by the random walk; m(v) is the sum of m(e) over edges at v.
 */
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;

  /// Canonicalizes `raw_edges`; parallel edges are merged by summing
  /// multiplicity. `labels` is either empty or has one entry per vertex.
  static WeightedMultigraph build(std::size_t vertex_count, std::span<const Edge> raw_edges,
                                  std::vector<std::string> labels = {});

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  /// Multiplicity of {u, v}; zero when absent.
  std::uint64_t multiplicity(std::size_t u, std::size_t v) const;

  /// Sum of all edge multiplicities.
  std::uint64_t total_multiplicity() const;

  /// m(v) for every vertex.
  std::vector<std::uint64_t> vertex_weights() const;

  /// m(U) = sum of m(v) over v in `subset`.
  std::uint64_t subset_weight(std::span<const std::size_t> subset) const;

  std::vector<std::size_t> isolated_vertices() const;

  /// Same graph with every multiplicity multiplied by `factor` (>= 1).
  WeightedMultigraph scaled(std::uint64_t factor) const;

  friend bool operator==(const WeightedMultigraph&, const WeightedMultigraph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

/// Compressed adjacency view used by the spectral code.
struct Adjacency {
  std::vector<std::size_t> offsets;       // size vertex_count + 1
  std::vector<std::size_t> neighbors;
  std::vector<double> weights;

  static Adjacency of(const WeightedMultigraph& g);
};

/// Sides of a bipartite graph. `side_of[v]` is 0 for S1 and 1 for S2; in
/// every connected component the smallest vertex lies in S1.
struct Bipartition {
  std::vector<std::size_t> side1;
  std::vector<std::size_t> side2;
  std::vector<int> side_of;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

bool is_connected(const WeightedMultigraph& g);
std::size_t component_count(const WeightedMultigraph& g);
std::optional<Bipartition> find_bipartition(const WeightedMultigraph& g);

/// Multiplicity-summed union of graphs on a common vertex set. Labels are
/// taken from the first graph that has them.
WeightedMultigraph union_graphs(std::span<const WeightedMultigraph> graphs);

struct StrippedGraph {
  WeightedMultigraph simple;   // every surviving edge with multiplicity 1
  WeightedMultigraph removed;  // the excess multiplicity
};

StrippedGraph strip_multi_edges(const WeightedMultigraph& g);

// Small named graphs used throughout the tests and harness.
WeightedMultigraph complete_bipartite(std::size_t left, std::size_t right);
WeightedMultigraph cycle_graph(std::size_t n);

}  // namespace zuklab
