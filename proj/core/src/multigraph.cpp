#include "trailorient/multigraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace trailorient {

MultiGraph::MultiGraph(VertexId vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

VertexId MultiGraph::add_vertex() {
  adjacency_.emplace_back();
  return vertex_count() - 1;
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v, EdgeState state) {
  if (!valid_vertex(u) || !valid_vertex(v)) throw std::invalid_argument("edge endpoint out of range");
  const auto id = edge_count();
  edges_.push_back({u, v, state, true});
  adjacency_[u].push_back({id, 0});
  adjacency_[v].push_back({id, 1});
  ++live_edges_;
  return id;
}

void MultiGraph::remove_edge(EdgeId e) {
  if (!valid_edge(e)) throw std::invalid_argument("edge id out of range");
  auto& rec = edges_[e];
  if (!rec.alive) return;
  rec.alive = false;
  --live_edges_;
  for (VertexId v : {rec.tail, rec.head}) {
    auto& list = adjacency_[v];
    auto it = std::find_if(list.begin(), list.end(), [e](const Incidence& i) { return i.edge == e; });
    if (it != list.end()) list.erase(it);
  }
}

void MultiGraph::set_state(EdgeId e, EdgeState state) {
  if (!valid_edge(e)) throw std::invalid_argument("edge id out of range");
  edges_[e].state = state;
}

bool MultiGraph::has_fixed_edges() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const EdgeRecord& r) {
    return r.alive && r.state == EdgeState::FixedForward;
  });
}

bool operator==(const MultiGraph& a, const MultiGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    const auto& x = a.edge(e);
    const auto& y = b.edge(e);
    if (x.tail != y.tail || x.head != y.head || x.state != y.state || x.alive != y.alive) return false;
  }
  return true;
}

void Orientation::set(EdgeId e, Direction d) {
  if (e < 0) throw std::invalid_argument("negative edge id");
  if (static_cast<std::size_t>(e) >= dir_.size()) dir_.resize(static_cast<std::size_t>(e) + 1, kUnset);
  dir_[e] = static_cast<std::int8_t>(d);
}

std::size_t Orientation::assigned_count() const {
  return static_cast<std::size_t>(std::count_if(dir_.begin(), dir_.end(), [](std::int8_t d) { return d != kUnset; }));
}

Orientation reverse_all(Orientation o) {
  for (EdgeId e = 0; e < static_cast<EdgeId>(o.size()); ++e) {
    if (auto d = o.get(e)) o.set(e, opposite(*d));
  }
  return o;
}

std::vector<VertexId> trail_walk(const MultiGraph& g, const Trail& t) {
  if (!g.valid_vertex(t.start)) throw std::invalid_argument("trail start out of range");
  std::vector<VertexId> walk;
  walk.reserve(t.edges.size() + 1);
  walk.push_back(t.start);
  for (EdgeId e : t.edges) {
    if (!g.valid_edge(e)) throw std::invalid_argument("trail edge id out of range");
    const auto& rec = g.edge(e);
    const VertexId at = walk.back();
    if (rec.tail != at && rec.head != at) {
      throw std::invalid_argument("edge " + std::to_string(e) + " does not touch vertex " + std::to_string(at));
    }
    walk.push_back(rec.other(at));
  }
  return walk;
}

std::optional<Trail> make_trail(const MultiGraph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) return std::nullopt;
  for (EdgeId e : edges) {
    if (!g.valid_edge(e)) return std::nullopt;
  }
  const auto& first = g.edge(edges.front());
  for (VertexId start : {first.tail, first.head}) {
    Trail t{start, edges};
    try {
      trail_walk(g, t);
      return t;
    } catch (const std::invalid_argument&) {
    }
  }
  return std::nullopt;
}

TrailCheck validate_trails(const MultiGraph& g, const TrailPartition& p) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& t = p[i];
    auto fail = [&](const std::string& what) { return TrailCheck{false, "trail " + std::to_string(i) + ": " + what}; };
    if (t.edges.empty()) return fail("empty trail");
    if (!g.valid_vertex(t.start)) return fail("trail start out of range");
    VertexId at = t.start;
    for (EdgeId e : t.edges) {
      if (!g.valid_edge(e)) return fail("edge id " + std::to_string(e) + " out of range");
      const auto& rec = g.edge(e);
      if (!rec.alive) return fail("edge " + std::to_string(e) + " is deleted");
      if (!rec.is_undirected()) return fail("edge " + std::to_string(e) + " is not undirected");
      if (seen[e]) return fail("edge " + std::to_string(e) + " used more than once");
      seen[e] = 1;
      if (rec.tail != at && rec.head != at) {
        return fail("edge " + std::to_string(e) + " does not touch vertex " + std::to_string(at));
      }
      at = rec.other(at);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (rec.alive && rec.is_undirected() && seen[e] == 0) {
      return {false, "edge " + std::to_string(e) + " is not covered by any trail"};
    }
  }
  return {};
}

TrailCheck check_trail_consistency(const MultiGraph& g, const TrailPartition& p, const Orientation& o) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto walk = trail_walk(g, p[i]);
    std::optional<bool> along;
    for (std::size_t k = 0; k < p[i].edges.size(); ++k) {
      const EdgeId e = p[i].edges[k];
      const auto& rec = g.edge(e);
      if (rec.is_loop()) continue;
      const auto d = o.get(e);
      if (!d) continue;
      const bool forward = *d == walk_direction(rec, walk[k]);
      if (!along) {
        along = forward;
      } else if (*along != forward) {
        return {false, "trail " + std::to_string(i) + " is not traversed consistently at edge " + std::to_string(e)};
      }
    }
  }
  return {};
}

Orientation orient_along(const MultiGraph& g, const TrailPartition& p, std::span<const bool> reversed_trails) {
  Orientation o(static_cast<std::size_t>(g.edge_count()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool rev = i < reversed_trails.size() && reversed_trails[i];
    const auto walk = trail_walk(g, p[i]);
    for (std::size_t k = 0; k < p[i].edges.size(); ++k) {
      const EdgeId e = p[i].edges[k];
      const Direction d = walk_direction(g.edge(e), walk[k]);
      o.set(e, rev ? opposite(d) : d);
    }
  }
  return o;
}

MultiGraph apply_orientation(const MultiGraph& g, const Orientation& o) {
  MultiGraph out = g;
  for (EdgeId e = 0; e < static_cast<EdgeId>(o.size()); ++e) {
    const auto d = o.get(e);
    if (!d) continue;
    if (!g.valid_edge(e)) throw std::invalid_argument("orientation names unknown edge " + std::to_string(e));
    const auto& rec = g.edge(e);
    if (!rec.alive) throw std::invalid_argument("orientation assigns deleted edge " + std::to_string(e));
    if (!rec.is_undirected()) throw std::invalid_argument("orientation assigns non-undirected edge " + std::to_string(e));
    out.set_state(e, *d == Direction::Forward ? EdgeState::OrientedForward : EdgeState::OrientedReversed);
  }
  return out;
}

Contraction contract(const MultiGraph& g, std::span<const VertexId> block) {
  if (block.empty()) throw std::invalid_argument("contract: empty block");
  std::vector<char> in_block(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v : block) {
    if (!g.valid_vertex(v)) throw std::invalid_argument("contract: vertex out of range");
    in_block[v] = 1;
  }
  Contraction c;
  c.vertex_map.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  VertexId next = 0;
  VertexId block_vertex = -1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in_block[v]) {
      if (block_vertex < 0) block_vertex = next++;
      c.vertex_map[v] = block_vertex;
    } else {
      c.vertex_map[v] = next++;
    }
  }
  c.graph = MultiGraph(next);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    const EdgeId id = c.graph.add_edge(c.vertex_map[rec.tail], c.vertex_map[rec.head], rec.state);
    if (!rec.alive || (in_block[rec.tail] && in_block[rec.head])) c.graph.remove_edge(id);
  }
  return c;
}

}  // namespace trailorient
