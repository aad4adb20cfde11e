#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "zuklab/graph.hpp"
#include "zuklab/rng.hpp"

namespace zuklab {

/// A simplex as a sorted list of vertex ids.
using Simplex = std::vector<std::size_t>;

/// Bit set over vertex types {0..n}; bit t set means type t is present.
using TypeSet = unsigned;

TypeSet type_set(std::initializer_list<int> types);
int type_count(TypeSet s);

/**
 * Finite pure n-dimensional partite complex, stored by its top cells.
 *
 * Lower-dimensional simplices are the faces of top cells, so the complex is
 * pure by construction. Every top cell has exactly one vertex of each type
 * 0..n.
 */
class PartiteComplex {
 public:
  PartiteComplex() = default;

  /// Validates and canonicalizes: each cell is sorted, has n+1 distinct
  /// vertices with pairwise distinct types, and appears once.
  static PartiteComplex build(int n, std::vector<int> vertex_types, std::vector<Simplex> top_cells);

  int dimension() const { return n_; }
  const std::vector<int>& vertex_types() const { return types_; }
  const std::vector<Simplex>& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }

  TypeSet type_of(const Simplex& s) const;

  /// X(k): all k-dimensional faces, sorted.
  std::vector<Simplex> faces(int k) const;

  /// Number of top cells containing `tau`.
  std::size_t coface_count(const Simplex& tau) const;

  bool contains(const Simplex& tau) const { return coface_count(tau) > 0; }

  /// m(tau) = (n-k)! * #{top cells containing tau}.
  double weight(const Simplex& tau) const;

  /// Indices of top cells that contain `tau`.
  std::vector<std::size_t> cells_containing(const Simplex& tau) const;

 private:
  int n_ = 0;
  std::vector<int> types_;
  std::vector<Simplex> cells_;
};

/// The 1-dimensional link of an (n-2)-simplex: graph vertex i is complex
/// vertex `vertices[i]`, edges come from top cells containing tau.
struct Link {
  WeightedMultigraph graph;
  std::vector<std::size_t> vertices;
};

Link link(const PartiteComplex& x, const Simplex& tau);

/// True iff the top cells are connected under "share an (n-1)-face".
bool is_gallery_connected(const PartiteComplex& x);

/// Complete partite complex on parts of the given sizes: every choice of one
/// vertex per part is a top cell. Vertices of part t get type t.
PartiteComplex complete_partite_complex(const std::vector<std::size_t>& parts);

/// Random partite 2-complex on parts (a, b, c); each of the a*b*c triangles
/// is included independently with probability q.
PartiteComplex random_partite_complex(const std::array<std::size_t, 3>& parts, double q, Rng& rng);

}  // namespace zuklab
