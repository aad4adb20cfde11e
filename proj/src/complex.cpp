#include "zuklab/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "zuklab/error.hpp"

namespace zuklab {

TypeSet type_set(std::initializer_list<int> types) {
  TypeSet s = 0;
  for (int t : types) {
    if (t < 0 || t > 30) throw InvalidInput("type out of range");
    s |= 1u << t;
  }
  return s;
}

int type_count(TypeSet s) { return __builtin_popcount(s); }

PartiteComplex PartiteComplex::build(int n, std::vector<int> vertex_types,
                                     std::vector<Simplex> top_cells) {
  if (n < 0 || n > 30) throw InvalidInput("dimension must lie in [0, 30]");
  for (int t : vertex_types) {
    if (t < 0 || t > n) throw InvalidInput("vertex type " + std::to_string(t) + " outside 0..n");
  }
  for (Simplex& cell : top_cells) {
    if (cell.size() != static_cast<std::size_t>(n + 1)) {
      throw InvalidInput("top cell with " + std::to_string(cell.size()) + " vertices, expected " +
                         std::to_string(n + 1));
    }
    std::sort(cell.begin(), cell.end());
    if (std::adjacent_find(cell.begin(), cell.end()) != cell.end()) {
      throw InvalidInput("top cell has a repeated vertex");
    }
    TypeSet seen = 0;
    for (std::size_t v : cell) {
      if (v >= vertex_types.size()) throw InvalidInput("vertex index out of range");
      const TypeSet bit = 1u << vertex_types[v];
      if (seen & bit) throw InvalidInput("not partite");
      seen |= bit;
    }
  }
  std::vector<Simplex> sorted = top_cells;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("duplicate top cell");
  }

  PartiteComplex x;
  x.n_ = n;
  x.types_ = std::move(vertex_types);
  x.cells_ = std::move(sorted);
  return x;
}

TypeSet PartiteComplex::type_of(const Simplex& s) const {
  TypeSet t = 0;
  for (std::size_t v : s) t |= 1u << types_.at(v);
  return t;
}

std::vector<Simplex> PartiteComplex::faces(int k) const {
  if (k < 0 || k > n_) return {};
  std::set<Simplex> out;
  const int size = n_ + 1;
  // Enumerate (k+1)-subsets of each cell by bitmask.
  for (const Simplex& cell : cells_) {
    for (unsigned mask = 0; mask < (1u << size); ++mask) {
      if (__builtin_popcount(mask) != k + 1) continue;
      Simplex face;
      for (int i = 0; i < size; ++i) {
        if (mask & (1u << i)) face.push_back(cell[static_cast<std::size_t>(i)]);
      }
      out.insert(std::move(face));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::size_t> PartiteComplex::cells_containing(const Simplex& tau) const {
  Simplex sorted = tau;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (std::includes(cells_[i].begin(), cells_[i].end(), sorted.begin(), sorted.end())) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t PartiteComplex::coface_count(const Simplex& tau) const {
  return cells_containing(tau).size();
}

double PartiteComplex::weight(const Simplex& tau) const {
  const int k = static_cast<int>(tau.size()) - 1;
  if (k < 0 || k > n_) throw InvalidInput("simplex dimension outside 0..n");
  double factorial = 1.0;
  for (int i = 2; i <= n_ - k; ++i) factorial *= i;
  return factorial * static_cast<double>(coface_count(tau));
}

Link link(const PartiteComplex& x, const Simplex& tau) {
  const int n = x.dimension();
  if (n < 1 || static_cast<int>(tau.size()) != n - 1) {
    throw InvalidInput("link: tau must be an (n-2)-simplex");
  }
  const auto containing = x.cells_containing(tau);
  if (containing.empty()) throw InvalidInput("link: simplex is not in the complex");

  Simplex sorted_tau = tau;
  std::sort(sorted_tau.begin(), sorted_tau.end());
  std::vector<std::array<std::size_t, 2>> pairs;
  std::set<std::size_t> vertex_set;
  for (std::size_t c : containing) {
    Simplex rest;
    std::set_difference(x.cells()[c].begin(), x.cells()[c].end(), sorted_tau.begin(),
                        sorted_tau.end(), std::back_inserter(rest));
    pairs.push_back({rest[0], rest[1]});
    vertex_set.insert(rest.begin(), rest.end());
  }

  Link out;
  out.vertices.assign(vertex_set.begin(), vertex_set.end());
  auto local = [&](std::size_t v) {
    return static_cast<std::size_t>(
        std::lower_bound(out.vertices.begin(), out.vertices.end(), v) - out.vertices.begin());
  };
  std::vector<Edge> edges;
  for (const auto& [a, b] : pairs) edges.push_back({local(a), local(b), 1});
  std::vector<std::string> labels;
  for (std::size_t v : out.vertices) labels.push_back("v" + std::to_string(v));
  out.graph = WeightedMultigraph::build(out.vertices.size(), edges, std::move(labels));
  return out;
}

bool is_gallery_connected(const PartiteComplex& x) {
  const auto& cells = x.cells();
  if (cells.size() <= 1) return true;
  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  // Cells sharing a codimension-1 face are joined through that face.
  std::map<Simplex, std::size_t> first_owner;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t drop = 0; drop < cells[i].size(); ++drop) {
      Simplex face = cells[i];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      auto [it, inserted] = first_owner.emplace(std::move(face), i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

PartiteComplex complete_partite_complex(const std::vector<std::size_t>& parts) {
  if (parts.empty()) throw InvalidInput("complete_partite_complex needs at least one part");
  std::vector<int> types;
  std::vector<std::size_t> first(parts.size());
  for (std::size_t t = 0; t < parts.size(); ++t) {
    first[t] = types.size();
    types.insert(types.end(), parts[t], static_cast<int>(t));
  }
  std::vector<Simplex> cells{Simplex{}};
  for (std::size_t t = 0; t < parts.size(); ++t) {
    std::vector<Simplex> next;
    for (const Simplex& partial : cells) {
      for (std::size_t i = 0; i < parts[t]; ++i) {
        Simplex s = partial;
        s.push_back(first[t] + i);
        next.push_back(std::move(s));
      }
    }
    cells = std::move(next);
  }
  return PartiteComplex::build(static_cast<int>(parts.size()) - 1, std::move(types), std::move(cells));
}

PartiteComplex random_partite_complex(const std::array<std::size_t, 3>& parts, double q, Rng& rng) {
  if (q < 0.0 || q > 1.0) throw InvalidInput("triangle probability must lie in [0, 1]");
  const auto [a, b, c] = parts;
  std::vector<int> types;
  types.insert(types.end(), a, 0);
  types.insert(types.end(), b, 1);
  types.insert(types.end(), c, 2);
  std::bernoulli_distribution keep(q);
  std::vector<Simplex> cells;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      for (std::size_t k = 0; k < c; ++k) {
        if (keep(rng)) cells.push_back({i, a + j, a + b + k});
      }
    }
  }
  return PartiteComplex::build(2, std::move(types), std::move(cells));
}

}  // namespace zuklab
