#pragma once

#include <initializer_list>
#include <utility>

#include "trailorient/multigraph.hpp"

namespace build {

using trailorient::EdgeId;
using trailorient::MultiGraph;
using trailorient::Trail;
using trailorient::TrailPartition;
using trailorient::VertexId;

inline MultiGraph edges(VertexId n, std::initializer_list<std::pair<VertexId, VertexId>> list) {
  MultiGraph g(n);
  for (const auto& [u, v] : list) g.add_edge(u, v);
  return g;
}

// Edge i joins i and i + 1 (mod n).
inline MultiGraph cycle(VertexId n) {
  MultiGraph g(n);
  for (VertexId i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Edge i joins i and i + 1.
inline MultiGraph path(VertexId edges) {
  MultiGraph g(edges + 1);
  for (VertexId i = 0; i < edges; ++i) g.add_edge(i, i + 1);
  return g;
}

// Edges in lexicographic order of (u, v), u < v.
inline MultiGraph complete(VertexId n) {
  MultiGraph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline TrailPartition singletons(const MultiGraph& g) {
  TrailPartition p;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).alive && g.edge(e).is_undirected()) p.push_back(Trail{g.edge(e).tail, {e}});
  }
  return p;
}

// Two K4-minus-an-edge blocks {0,1,2,3} and {4,5,6,7} (missing edges 0-1
// and 4-5) joined by the cut pair 0-4, 1-5. Those are edges 10 and 11.
inline MultiGraph two_blocks() {
  return edges(8, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                   {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7},
                   {0, 4}, {1, 5}});
}

}  // namespace build
