#include "zuklab/graph_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "zuklab/error.hpp"

namespace zuklab {

void write_edge_list(std::ostream& out, const WeightedMultigraph& g) {
  out << "vertices " << g.vertex_count() << '\n';
  for (std::size_t v = 0; v < g.labels().size(); ++v) {
    out << "label " << v << ' ' << g.labels()[v] << '\n';
  }
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.mult << '\n';
}

WeightedMultigraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> vertex_count;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, std::string>> labels;

  auto fail = [&](const std::string& why) {
    throw InvalidInput("edge list line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!vertex_count) {
      std::string keyword;
      std::size_t n = 0;
      if (!(fields >> keyword >> n) || keyword != "vertices") fail("expected header 'vertices N'");
      vertex_count = n;
      continue;
    }
    if (line.compare(first, 6, "label ") == 0) {
      std::string keyword;
      std::size_t index = 0;
      std::string text;
      if (!(fields >> keyword >> index >> text)) fail("malformed label line");
      labels.emplace_back(index, text);
      continue;
    }
    long long u = 0, v = 0, mult = 0;
    if (!(fields >> u >> v >> mult)) fail("expected 'u v mult'");
    if (u < 0 || v < 0 || mult <= 0) fail("indices must be nonnegative and mult positive");
    edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v),
                     static_cast<std::uint64_t>(mult)});
  }
  if (!vertex_count) throw InvalidInput("edge list is missing the 'vertices N' header");

  std::vector<std::string> names;
  if (!labels.empty()) {
    names.assign(*vertex_count, "");
    for (auto& [index, text] : labels) {
      if (index >= *vertex_count) throw InvalidInput("label index out of range");
      names[index] = std::move(text);
    }
  }
  return WeightedMultigraph::build(*vertex_count, edges, std::move(names));
}

std::string to_edge_list(const WeightedMultigraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

WeightedMultigraph from_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace zuklab
