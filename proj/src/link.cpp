#include "zuklab/link.hpp"

#include <array>

#include "zuklab/error.hpp"

namespace zuklab {

std::size_t link_vertex(std::size_t m, int i, bool inverse) {
  if (i < 1 || static_cast<std::size_t>(i) > m) throw InvalidInput("generator index out of range");
  return static_cast<std::size_t>(i - 1) + (inverse ? m : 0);
}

LinkDecomposition build_link(const Presentation& p) {
  if (!p.positive_only) throw InvalidInput("link construction needs a positive presentation");
  p.validate();
  const auto m = static_cast<std::size_t>(p.alphabet_size);

  std::array<std::vector<Edge>, 3> parts;
  for (auto& part : parts) part.reserve(p.relators.size());
  for (const Word& r : p.relators) {
    const int i = r[0];
    const int j = r[1];
    const int k = r[2];
    parts[0].push_back({link_vertex(m, j, false), link_vertex(m, i, true), 1});
    parts[1].push_back({link_vertex(m, k, false), link_vertex(m, j, true), 1});
    parts[2].push_back({link_vertex(m, i, false), link_vertex(m, k, true), 1});
  }

  std::vector<std::string> labels;
  labels.reserve(2 * m);
  for (std::size_t i = 1; i <= m; ++i) labels.push_back("s" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i) labels.push_back("s" + std::to_string(i) + "^-1");

  LinkDecomposition out;
  out.L1 = WeightedMultigraph::build(2 * m, parts[0], labels);
  out.L2 = WeightedMultigraph::build(2 * m, parts[1], labels);
  out.L3 = WeightedMultigraph::build(2 * m, parts[2], labels);
  const std::array<WeightedMultigraph, 3> all{out.L1, out.L2, out.L3};
  out.full = union_graphs(all);
  out.isolated = out.full.isolated_vertices();
  return out;
}

}  // namespace zuklab
