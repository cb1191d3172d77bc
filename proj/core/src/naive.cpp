#include "trailorient/naive.hpp"

#include <algorithm>
#include <stdexcept>

#include "trailorient/connectivity.hpp"

namespace trailorient {
namespace {

struct Walk {
  VertexId start = 0;
  std::vector<EdgeId> edges;
};

Walk reversed(const MultiGraph& g, const Walk& w) {
  if (w.edges.empty()) return w;
  const auto verts = trail_walk(g, Trail{w.start, w.edges});
  return {verts.back(), std::vector<EdgeId>(w.edges.rbegin(), w.edges.rend())};
}

// Direction bits: 0 = Forward, 1 = Reversed.
std::uint8_t bit(Direction d) { return d == Direction::Forward ? 0 : 1; }

// Edges are named by global ids: the input edges first, then glue edges as
// splits create them. Every recursion step is a node; a side may be flipped
// after it is solved, which is recorded on its node and resolved at the end.
// An edge removed from the end of its trail copies the direction of an edge
// of the same trail that survives at that step (its decider).
class Solver {
 public:
  explicit Solver(EdgeId m)
      : owner_(static_cast<std::size_t>(m), -1), raw_(static_cast<std::size_t>(m), 0),
        link_(static_cast<std::size_t>(m), kNoEdge), link_rel_(static_cast<std::size_t>(m), 0) {}

  Orientation run(MultiGraph g, TrailPartition p) {
    const EdgeId m = g.edge_count();
    std::vector<EdgeId> ids(static_cast<std::size_t>(m));
    for (EdgeId e = 0; e < m; ++e) ids[e] = e;
    std::vector<Task> work;
    work.push_back({std::move(g), std::move(p), std::move(ids), new_node(-1)});
    while (!work.empty()) {
      Task t = std::move(work.back());
      work.pop_back();
      step(std::move(t), work);
    }
    resolve();
    Orientation out(static_cast<std::size_t>(m));
    for (EdgeId e = 0; e < m; ++e) {
      const auto [root, x] = find(owner_[e]);
      out.set(e, (raw_[e] ^ x) ? Direction::Reversed : Direction::Forward);
    }
    return out;
  }

 private:
  struct Task {
    MultiGraph graph;
    TrailPartition trails;
    std::vector<EdgeId> ids;  // local edge -> global edge
    std::int32_t node;
  };
  struct Node {
    std::int32_t parent = -1;
    std::vector<EdgeId> links;  // removed edges resolved at this node
    EdgeId probe = kNoEdge;     // first non-loop edge of the merged trail
    std::uint8_t probe_walk = 0;
    std::uint8_t want = 0;      // wanted direction of the merged trail
  };

  std::int32_t new_node(std::int32_t parent) {
    nodes_.push_back(Node{parent, {}, kNoEdge, 0, 0});
    uf_parent_.push_back(static_cast<std::int32_t>(uf_parent_.size()));
    uf_xor_.push_back(0);
    return static_cast<std::int32_t>(nodes_.size()) - 1;
  }

  EdgeId new_edge() {
    owner_.push_back(-1);
    raw_.push_back(0);
    link_.push_back(kNoEdge);
    link_rel_.push_back(0);
    return static_cast<EdgeId>(owner_.size()) - 1;
  }

  void assign(EdgeId e, std::int32_t node, std::uint8_t dir) {
    owner_[e] = node;
    raw_[e] = dir;
  }

  // Set root and XOR of flips from node up to it.
  std::pair<std::int32_t, std::uint8_t> find(std::int32_t node) {
    std::uint8_t x = 0;
    std::int32_t r = node;
    while (uf_parent_[r] != r) {
      x ^= uf_xor_[r];
      r = uf_parent_[r];
    }
    // Path compression.
    std::uint8_t rest = x;
    for (std::int32_t v = node; uf_parent_[v] != v;) {
      const std::int32_t next = uf_parent_[v];
      const std::uint8_t here = uf_xor_[v];
      uf_parent_[v] = r;
      uf_xor_[v] = rest;
      rest ^= here;
      v = next;
    }
    return {r, x};
  }

  void step(Task task, std::vector<Task>& work) {
    MultiGraph& g = task.graph;
    TrailPartition& p = task.trails;
    const std::int32_t node = task.node;
    const TrailPartition original = p;
    std::vector<std::int32_t> trail_of(static_cast<std::size_t>(g.edge_count()), -1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (EdgeId e : p[i].edges) trail_of[e] = static_cast<std::int32_t>(i);
    }

    std::vector<std::uint8_t> removed(static_cast<std::size_t>(g.edge_count()), 0);
    bool any_removed = false;
    EdgeId cut = kNoEdge;
    while (g.live_edge_count() > 0) {
      const EdgeId e = pick_end_edge(g, p);
      if (!is_two_edge_connected(g, e)) {
        cut = e;
        break;
      }
      auto& t = p[trail_of[e]];
      if (t.edges.front() == e) {
        t.start = g.edge(e).other(t.start);
        t.edges.erase(t.edges.begin());
      } else {
        t.edges.pop_back();
      }
      g.remove_edge(e);
      removed[e] = 1;
      any_removed = true;
    }

    if (any_removed) {
      for (const auto& t : original) {
        bool touched = false;
        for (EdgeId e : t.edges) touched = touched || removed[e];
        if (!touched) continue;
        const auto verts = trail_walk(g, t);
        EdgeId decider = kNoEdge;
        std::uint8_t decider_walk = 0;
        for (std::size_t k = 0; k < t.edges.size() && decider == kNoEdge; ++k) {
          const auto& rec = g.edge(t.edges[k]);
          if (removed[t.edges[k]] || rec.is_loop()) continue;
          decider = t.edges[k];
          decider_walk = bit(walk_direction(rec, verts[k]));
        }
        for (std::size_t k = 0; k < t.edges.size(); ++k) {
          const EdgeId e = t.edges[k];
          if (!removed[e]) continue;
          const std::uint8_t walk = bit(walk_direction(g.edge(e), verts[k]));
          const EdgeId ge = task.ids[e];
          if (decider == kNoEdge) {
            assign(ge, node, walk);
          } else {
            link_[ge] = task.ids[decider];
            link_rel_[ge] = walk ^ decider_walk;
            nodes_[node].links.push_back(ge);
          }
        }
      }
    }
    if (cut == kNoEdge) return;

    SplitResult split = split_on_cut(g, p, cut);
    const auto& rec = split.record;
    assign(task.ids[rec.cut_e], node, g.edge(rec.cut_e).tail == rec.u[0] ? 0 : 1);
    assign(task.ids[rec.cut_b], node, g.edge(rec.cut_b).tail == rec.w[1] ? 0 : 1);

    std::array<Task, 2> children;
    for (int s = 0; s < 2; ++s) {
      const std::int32_t child = new_node(node);
      std::vector<EdgeId> ids(split.parent_edge[s].size());
      for (std::size_t le = 0; le < ids.size(); ++le) {
        const EdgeId pe = split.parent_edge[s][le];
        ids[le] = pe == kNoEdge ? new_edge() : task.ids[pe];
      }
      const auto& side = split.graphs[s];
      const Trail& merged = split.trails[s][rec.merged_trail[s]];
      const auto verts = trail_walk(side, merged);
      for (std::size_t k = 0; k < merged.edges.size(); ++k) {
        const auto& er = side.edge(merged.edges[k]);
        if (er.is_loop()) continue;
        // Side 0 needs its glue edge as u1 -> w1, side 1 as w2 -> u2.
        nodes_[child].probe = ids[merged.edges[k]];
        nodes_[child].probe_walk = bit(walk_direction(er, verts[k]));
        nodes_[child].want = s == 0 ? 0 : 1;
        break;
      }
      children[s] = Task{std::move(split.graphs[s]), std::move(split.trails[s]), std::move(ids), child};
    }
    work.push_back(std::move(children[1]));
    work.push_back(std::move(children[0]));
  }

  // Direction of e relative to the frame of the unmerged set it belongs to.
  std::uint8_t relative(EdgeId e) { return raw_[e] ^ find(owner_[e]).second; }

  // Children are created after their parents, so walking nodes backwards
  // finishes every subtree before its root is flipped into its parent.
  void resolve() {
    for (auto c = static_cast<std::int32_t>(nodes_.size()) - 1; c >= 0; --c) {
      Node& nd = nodes_[c];
      for (auto it = nd.links.rbegin(); it != nd.links.rend(); ++it) {
        const EdgeId e = *it;
        assign(e, c, relative(link_[e]) ^ link_rel_[e]);
      }
      nd.links.clear();
      nd.links.shrink_to_fit();
      if (nd.parent < 0) continue;
      std::uint8_t flip = 0;
      if (nd.probe != kNoEdge) {
        const std::uint8_t along = relative(nd.probe) == nd.probe_walk ? 0 : 1;
        flip = along ^ nd.want;
      }
      uf_parent_[c] = nd.parent;
      uf_xor_[c] = flip;
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::int32_t> uf_parent_;
  std::vector<std::uint8_t> uf_xor_;
  std::vector<std::int32_t> owner_;
  std::vector<std::uint8_t> raw_;
  std::vector<EdgeId> link_;
  std::vector<std::uint8_t> link_rel_;
};

}  // namespace

EdgeId pick_end_edge(const MultiGraph& g, const TrailPartition& p) {
  EdgeId best = kNoEdge;
  for (const auto& t : p) {
    if (t.edges.empty()) continue;
    for (EdgeId e : {t.edges.front(), t.edges.back()}) {
      if (g.edge(e).alive && (best == kNoEdge || e < best)) best = e;
    }
  }
  if (best == kNoEdge) throw std::invalid_argument("pick_end_edge: graph has no edges");
  return best;
}

SplitResult split_on_cut(const MultiGraph& g, const TrailPartition& p, EdgeId e) {
  const auto bridges = find_bridges(g, e);
  if (bridges.empty()) throw std::logic_error("split_on_cut: g - e has no bridge");
  const EdgeId b = bridges.front();
  const auto& erec = g.edge(e);
  const auto& brec = g.edge(b);

  const VertexId n = g.vertex_count();
  std::vector<std::int8_t> side(static_cast<std::size_t>(n), 1);
  {
    std::vector<VertexId> stack{erec.tail};
    side[erec.tail] = 0;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(v)) {
        if (inc.edge == e || inc.edge == b) continue;
        const VertexId x = g.edge(inc.edge).other(v);
        if (side[x] == 1) {
          side[x] = 0;
          stack.push_back(x);
        }
      }
    }
  }
  if (side[erec.head] == 0 || side[brec.tail] == side[brec.head]) {
    throw std::logic_error("split_on_cut: {e, b} is not a two-edge cut");
  }

  SplitResult r;
  auto& rec = r.record;
  rec.cut_e = e;
  rec.cut_b = b;
  rec.u = {erec.tail, erec.head};
  rec.w = side[brec.tail] == 0 ? std::array<VertexId, 2>{brec.tail, brec.head}
                               : std::array<VertexId, 2>{brec.head, brec.tail};

  std::vector<VertexId> local(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    auto& members = rec.sides[side[v]];
    local[v] = static_cast<VertexId>(members.size());
    members.push_back(v);
  }
  std::vector<EdgeId> local_edge(static_cast<std::size_t>(g.edge_count()), kNoEdge);
  for (int s = 0; s < 2; ++s) r.graphs[s] = MultiGraph(static_cast<VertexId>(rec.sides[s].size()));
  for (EdgeId x = 0; x < g.edge_count(); ++x) {
    const auto& xr = g.edge(x);
    if (!xr.alive || x == e || x == b) continue;
    const int s = side[xr.tail];
    local_edge[x] = r.graphs[s].add_edge(local[xr.tail], local[xr.head]);
    r.parent_edge[s].push_back(x);
  }
  for (int s = 0; s < 2; ++s) {
    rec.glue[s] = r.graphs[s].add_edge(local[rec.u[s]], local[rec.w[s]]);
    r.parent_edge[s].push_back(kNoEdge);
  }

  auto translate = [&](const std::vector<EdgeId>& edges) {
    std::vector<EdgeId> out;
    out.reserve(edges.size());
    for (EdgeId x : edges) out.push_back(local_edge[x]);
    return out;
  };

  std::int32_t te = -1, tb = -1;
  rec.trail_home.assign(p.size(), {-1, -1});
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& t = p[i];
    if (t.edges.empty()) continue;
    const bool has_e = std::find(t.edges.begin(), t.edges.end(), e) != t.edges.end();
    const bool has_b = std::find(t.edges.begin(), t.edges.end(), b) != t.edges.end();
    if (has_e) te = static_cast<std::int32_t>(i);
    if (has_b) tb = static_cast<std::int32_t>(i);
    if (has_e || has_b) continue;
    const int s = side[t.start];
    rec.trail_home[i] = {s, static_cast<std::int32_t>(r.trails[s].size())};
    r.trails[s].push_back({local[t.start], translate(t.edges)});
  }
  if (te < 0 || tb < 0) throw std::invalid_argument("split_on_cut: cut edges are not covered by trails");

  // fe[s] ends at u[s]; fb[s] starts at w[s].
  std::array<Walk, 2> fe, fb;
  if (te != tb) {
    const Trail& t = p[te];
    const auto verts = trail_walk(g, t);
    Walk rest;
    if (t.edges.front() == e) {
      rest = reversed(g, Walk{verts[1], {t.edges.begin() + 1, t.edges.end()}});
    } else if (t.edges.back() == e) {
      rest = Walk{verts[0], {t.edges.begin(), t.edges.end() - 1}};
    } else {
      throw std::invalid_argument("split_on_cut: e is not at the end of its trail");
    }
    if (!rest.edges.empty()) {
      const auto end = trail_walk(g, Trail{rest.start, rest.edges}).back();
      fe[side[end]] = std::move(rest);
    }
    const Trail& tbr = p[tb];
    const auto bverts = trail_walk(g, tbr);
    const auto j = static_cast<std::size_t>(std::find(tbr.edges.begin(), tbr.edges.end(), b) - tbr.edges.begin());
    Walk before{bverts[0], {tbr.edges.begin(), tbr.edges.begin() + static_cast<std::ptrdiff_t>(j)}};
    Walk after{bverts[j + 1], {tbr.edges.begin() + static_cast<std::ptrdiff_t>(j) + 1, tbr.edges.end()}};
    if (!before.edges.empty()) fb[side[bverts[j]]] = reversed(g, before);
    if (!after.edges.empty()) fb[side[bverts[j + 1]]] = std::move(after);
  } else {
    Walk whole{p[te].start, p[te].edges};
    if (whole.edges.back() == e && whole.edges.front() != e) whole = reversed(g, whole);
    if (whole.edges.front() != e) throw std::invalid_argument("split_on_cut: e is not at the end of its trail");
    const auto verts = trail_walk(g, Trail{whole.start, whole.edges});
    const auto j = static_cast<std::size_t>(std::find(whole.edges.begin(), whole.edges.end(), b) - whole.edges.begin());
    const int s = side[verts[1]];
    Walk between{verts[1], {whole.edges.begin() + 1, whole.edges.begin() + static_cast<std::ptrdiff_t>(j)}};
    fe[s] = reversed(g, between);
    fb[1 - s] = Walk{verts[j + 1], {whole.edges.begin() + static_cast<std::ptrdiff_t>(j) + 1, whole.edges.end()}};
  }

  for (int s = 0; s < 2; ++s) {
    Trail merged;
    merged.start = local[fe[s].edges.empty() ? rec.u[s] : fe[s].start];
    merged.edges = translate(fe[s].edges);
    merged.edges.push_back(rec.glue[s]);
    for (EdgeId x : translate(fb[s].edges)) merged.edges.push_back(x);
    rec.merged_trail[s] = r.trails[s].size();
    r.trails[s].push_back(std::move(merged));
  }
  return r;
}

std::optional<Orientation> orient_trails(const MultiGraph& g, const TrailPartition& p) {
  for (const auto& rec : g.edges()) {
    if (rec.alive && !rec.is_undirected()) throw std::invalid_argument("orient_trails: graph has directed edges");
  }
  if (const auto check = validate_trails(g, p); !check) throw std::invalid_argument(check.message);
  if (!is_two_edge_connected(g)) return std::nullopt;
  return Solver(g.edge_count()).run(g, p);
}

}  // namespace trailorient
