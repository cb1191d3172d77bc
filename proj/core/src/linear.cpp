#include "trailorient/linear.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "trailorient/edge_list.hpp"

namespace trailorient {
namespace {

// Flat instance: edges are indices into `ends`, trails are CSR rows of `tedges`.
struct Inst {
  VertexId n = 0;
  std::vector<EdgeEnds> ends;
  std::vector<VertexId> tstart;
  std::vector<std::int32_t> toff{0};
  std::vector<EdgeId> tedges;

  EdgeId m() const { return static_cast<EdgeId>(ends.size()); }
  std::int32_t trail_count() const { return static_cast<std::int32_t>(tstart.size()); }
  std::span<const EdgeId> trail(std::int32_t t) const {
    return std::span(tedges).subspan(toff[t], toff[t + 1] - toff[t]);
  }
  void add_trail(VertexId start) {
    tstart.push_back(start);
    toff.push_back(static_cast<std::int32_t>(tedges.size()));
  }
  void push(EdgeId e) {
    tedges.push_back(e);
    ++toff.back();
  }
};

// Per-edge orientation relative to ends[e]: 0 keeps tail -> head.
using Bits = std::vector<std::uint8_t>;

VertexId other_end(const EdgeEnds& ee, VertexId v) { return ee[0] == v ? ee[1] : ee[0]; }

Inst to_inst(const MultiGraph& g, const TrailPartition& p) {
  Inst in;
  in.n = g.vertex_count();
  in.ends.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const auto& rec : g.edges()) in.ends.push_back({rec.tail, rec.head});
  for (const auto& t : p) {
    in.add_trail(t.start);
    for (EdgeId e : t.edges) in.push(e);
  }
  return in;
}

MultiGraph to_graph(const Inst& in) {
  MultiGraph g(in.n);
  for (const auto& ee : in.ends) g.add_edge(ee[0], ee[1]);
  return g;
}

TrailPartition to_trails(const Inst& in) {
  TrailPartition p;
  p.reserve(static_cast<std::size_t>(in.trail_count()));
  for (std::int32_t t = 0; t < in.trail_count(); ++t) {
    const auto edges = in.trail(t);
    p.push_back({in.tstart[t], {edges.begin(), edges.end()}});
  }
  return p;
}

bool cubic_loopless(const Inst& in) {
  std::vector<std::int32_t> deg(static_cast<std::size_t>(in.n), 0);
  for (const auto& ee : in.ends) {
    if (ee[0] == ee[1]) return false;
    ++deg[ee[0]];
    ++deg[ee[1]];
  }
  return std::all_of(deg.begin(), deg.end(), [](std::int32_t d) { return d == 3; });
}

// ---------------------------------------------------------------- reduction

struct Reduced {
  Inst inst;
  std::vector<std::int32_t> vertex_offset;  // original vertex -> first cycle vertex
  std::vector<std::int32_t> trail_map;
};

// End 2e + s of edge e: s = 0 at ends[e][0], s = 1 at ends[e][1].
Reduced reduce(const Inst& in) {
  const EdgeId m = in.m();
  const VertexId n = in.n;
  Reduced r;
  r.vertex_offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& ee : in.ends) {
    ++r.vertex_offset[ee[0] + 1];
    ++r.vertex_offset[ee[1] + 1];
  }
  for (VertexId v = 0; v < n; ++v) r.vertex_offset[v + 1] += r.vertex_offset[v];
  const auto& off = r.vertex_offset;

  // Trail transitions (arrival end, departure end) at each vertex.
  std::vector<std::int32_t> pairs(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> stub(2 * static_cast<std::size_t>(m), -1);
  auto for_each_transition = [&](auto&& fn) {
    for (std::int32_t t = 0; t < in.trail_count(); ++t) {
      const auto edges = in.trail(t);
      VertexId v = in.tstart[t];
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const EdgeId e = edges[k];
        const auto& ee = in.ends[e];
        const bool loop = ee[0] == ee[1];
        const int arrive_side = loop ? 1 : (ee[0] == v ? 1 : 0);
        v = other_end(ee, v);
        if (k + 1 < edges.size()) {
          const EdgeId f = edges[k + 1];
          const auto& fe = in.ends[f];
          const int depart_side = fe[0] == v ? 0 : 1;
          fn(v, 2 * e + arrive_side, 2 * f + depart_side);
        }
      }
    }
  };
  for_each_transition([&](VertexId v, std::int32_t a, std::int32_t d) {
    stub[a] = off[v] + 2 * pairs[v];
    stub[d] = off[v] + 2 * pairs[v] + 1;
    ++pairs[v];
  });
  {
    std::vector<std::int32_t> next(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) next[v] = off[v] + 2 * pairs[v];
    for (EdgeId e = 0; e < m; ++e) {
      for (int s = 0; s < 2; ++s) {
        if (stub[2 * e + s] < 0) stub[2 * e + s] = next[in.ends[e][s]]++;
      }
    }
  }

  Inst& out = r.inst;
  out.n = 2 * m;
  out.ends.resize(3 * static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) out.ends[e] = {stub[2 * e], stub[2 * e + 1]};
  for (VertexId v = 0; v < n; ++v) {
    const auto d = off[v + 1] - off[v];
    for (std::int32_t j = 0; j < d; ++j) out.ends[m + off[v] + j] = {off[v] + j, off[v] + (j + 1) % d};
  }

  std::vector<std::uint8_t> used(2 * static_cast<std::size_t>(m), 0);
  for (std::int32_t t = 0; t < in.trail_count(); ++t) {
    const auto edges = in.trail(t);
    r.trail_map.push_back(t);
    if (edges.empty()) {
      out.add_trail(0);
      continue;
    }
    const EdgeId first = edges.front();
    const auto& fe = in.ends[first];
    const bool loop = fe[0] == fe[1];
    const int start_side = loop ? 0 : (fe[0] == in.tstart[t] ? 0 : 1);
    out.add_trail(stub[2 * first + start_side]);
    VertexId v = in.tstart[t];
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const EdgeId e = edges[k];
      out.push(e);
      v = other_end(in.ends[e], v);
      if (k + 1 < edges.size()) {
        const EdgeId f = edges[k + 1];
        const auto& ff = in.ends[f];
        const int depart_side = ff[0] == v ? 0 : 1;
        const auto slot = stub[2 * f + depart_side] - 1;  // arrival stub of the pair
        out.push(m + slot);
        used[slot] = 1;
      }
    }
  }
  for (std::int32_t j = 0; j < 2 * m; ++j) {
    if (used[j]) continue;
    r.trail_map.push_back(-1);
    out.add_trail(out.ends[m + j][0]);
    out.push(m + j);
  }
  return r;
}

// ------------------------------------------------------------ spanning tree

// nullopt when the graph is disconnected.
std::optional<Bits> tree_mask(const Inst& in) {
  const EdgeId m = in.m();
  Bits interior(static_cast<std::size_t>(m), 0);
  for (std::int32_t t = 0; t < in.trail_count(); ++t) {
    const auto edges = in.trail(t);
    for (std::size_t k = 1; k + 1 < edges.size(); ++k) interior[edges[k]] = 1;
  }
  Bits tree(static_cast<std::size_t>(m), 0);
  DisjointSets sets(static_cast<std::size_t>(in.n));
  VertexId joined = 1;
  for (EdgeId e = 0; e < m; ++e) {
    if (!interior[e]) continue;
    if (!sets.unite(in.ends[e][0], in.ends[e][1])) {
      throw std::logic_error("trail_spanning_tree: interior trail edges contain a cycle");
    }
    tree[e] = 1;
    ++joined;
  }
  for (EdgeId e = 0; e < m; ++e) {
    if (!interior[e] && sets.unite(in.ends[e][0], in.ends[e][1])) {
      tree[e] = 1;
      ++joined;
    }
  }
  if (joined != in.n) return std::nullopt;
  return tree;
}

// ------------------------------------------------------- minimal subgraph

// Range add / range min over a fixed array.
class MinTree {
 public:
  explicit MinTree(const std::vector<std::int32_t>& values) : n_(static_cast<std::int32_t>(values.size())) {
    size_ = 1;
    while (size_ < n_) size_ *= 2;
    min_.assign(2 * static_cast<std::size_t>(size_), std::numeric_limits<std::int32_t>::max() / 2);
    add_.assign(2 * static_cast<std::size_t>(size_), 0);
    std::copy(values.begin(), values.end(), min_.begin() + size_);
    for (auto i = size_ - 1; i >= 1; --i) min_[i] = std::min(min_[2 * i], min_[2 * i + 1]);
  }
  std::int32_t min(std::int32_t l, std::int32_t r) const { return query(1, 0, size_ - 1, l, r); }
  void add(std::int32_t l, std::int32_t r, std::int32_t d) { update(1, 0, size_ - 1, l, r, d); }

 private:
  std::int32_t query(std::int32_t node, std::int32_t lo, std::int32_t hi, std::int32_t l, std::int32_t r) const {
    if (r < lo || hi < l) return std::numeric_limits<std::int32_t>::max();
    if (l <= lo && hi <= r) return min_[node];
    const auto mid = (lo + hi) / 2;
    return add_[node] + std::min(query(2 * node, lo, mid, l, r), query(2 * node + 1, mid + 1, hi, l, r));
  }
  void update(std::int32_t node, std::int32_t lo, std::int32_t hi, std::int32_t l, std::int32_t r, std::int32_t d) {
    if (r < lo || hi < l) return;
    if (l <= lo && hi <= r) {
      min_[node] += d;
      add_[node] += d;
      return;
    }
    const auto mid = (lo + hi) / 2;
    update(2 * node, lo, mid, l, r, d);
    update(2 * node + 1, mid + 1, hi, l, r, d);
    min_[node] = add_[node] + std::min(min_[2 * node], min_[2 * node + 1]);
  }

  std::int32_t n_;
  std::int32_t size_;
  std::vector<std::int32_t> min_, add_;
};

// Keep mask of an inclusion-minimal 2-edge-connected subgraph containing the
// tree. Links (usable non-tree edges) are chosen greedily bottom-up, each
// uncovered tree edge taking the link that climbs highest, then redundant
// links are dropped one at a time.
std::optional<Bits> minimal_keep(VertexId n, std::span<const EdgeEnds> ends, const Bits& tree, const Bits& usable) {
  const auto m = static_cast<EdgeId>(ends.size());
  const Csr adj = build_csr(n, ends, tree);

  std::vector<VertexId> parent(static_cast<std::size_t>(n), -1), order;
  std::vector<std::int32_t> depth(static_cast<std::size_t>(n), 0);
  order.reserve(static_cast<std::size_t>(n));
  {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto i = adj.begin(v); i < adj.end(v); ++i) {
        const VertexId w = adj.other[i];
        if (seen[w]) continue;
        seen[w] = 1;
        parent[w] = v;
        depth[w] = depth[v] + 1;
        stack.push_back(w);
      }
    }
    if (static_cast<VertexId>(order.size()) != n) throw std::invalid_argument("minimal_2ecc_subgraph: tree does not span");
  }

  // Lowest common ancestors of the links, offline: `order` is a preorder, so
  // a vertex's set is merged into its parent once the whole subtree is done.
  std::vector<EdgeId> links;
  for (EdgeId e = 0; e < m; ++e) {
    if (!tree[e] && usable[e] && ends[e][0] != ends[e][1]) links.push_back(e);
  }
  std::vector<VertexId> lca(static_cast<std::size_t>(m), -1);
  {
    Bits link_mask(static_cast<std::size_t>(m), 0);
    for (EdgeId e : links) link_mask[e] = 1;
    const Csr queries = build_csr(n, ends, link_mask);
    std::vector<std::int32_t> pos(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<std::int32_t>(i);
    std::vector<std::int32_t> subtree_end(static_cast<std::size_t>(n));
    {
      std::vector<std::int32_t> size(static_cast<std::size_t>(n), 1);
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];
      }
      for (VertexId v = 0; v < n; ++v) subtree_end[v] = pos[v] + size[v];
    }
    // With preorder positions, lca(a, b) is the deepest ancestor of a whose
    // subtree interval contains b. Walk each link up by union-find jumps over
    // finished subtrees, as in Tarjan's offline algorithm.
    DisjointSets sets(static_cast<std::size_t>(n));
    std::vector<VertexId> anchor(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) anchor[v] = v;
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(n), 0);
    std::vector<VertexId> path;  // current root path
    for (const VertexId v : order) {
      while (!path.empty() && subtree_end[path.back()] <= pos[v]) {
        const VertexId done = path.back();
        path.pop_back();
        const VertexId up = parent[done];
        sets.unite(done, up);
        anchor[sets.find(up)] = up;
      }
      path.push_back(v);
      visited[v] = 1;
      for (auto i = queries.begin(v); i < queries.end(v); ++i) {
        const EdgeId e = queries.edge[i];
        const VertexId u = queries.other[i];
        if (visited[u] && lca[e] < 0) lca[e] = anchor[sets.find(u)];
      }
    }
  }

  // best[v]: link incident to subtree(v) whose lca is shallowest.
  std::vector<EdgeId> best(static_cast<std::size_t>(n), kNoEdge);
  auto better = [&](EdgeId a, EdgeId b) {
    if (b == kNoEdge) return a;
    if (a == kNoEdge) return b;
    return depth[lca[a]] < depth[lca[b]] || (depth[lca[a]] == depth[lca[b]] && a < b) ? a : b;
  };
  for (EdgeId e : links) {
    best[ends[e][0]] = better(e, best[ends[e][0]]);
    best[ends[e][1]] = better(e, best[ends[e][1]]);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[*it] >= 0) best[parent[*it]] = better(best[*it], best[parent[*it]]);
  }

  // up.find(v): nearest ancestor-or-self whose parent edge is still uncovered.
  DisjointSets up_sets(static_cast<std::size_t>(n));
  std::vector<VertexId> up_top(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) up_top[v] = v;
  auto find_up = [&](VertexId v) { return up_top[up_sets.find(v)]; };
  auto cover = [&](VertexId a, VertexId top) {
    for (VertexId w = find_up(a); depth[w] > depth[top]; w = find_up(w)) {
      const VertexId p = parent[w];
      const VertexId keep_top = find_up(p);
      up_sets.unite(w, p);
      up_top[up_sets.find(w)] = keep_top;
    }
  };
  Bits chosen(static_cast<std::size_t>(m), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (parent[v] < 0 || find_up(v) != v) continue;
    const EdgeId x = best[v];
    if (x == kNoEdge || depth[lca[x]] >= depth[v]) {
      return std::nullopt;
    }
    chosen[x] = 1;
    cover(ends[x][0], lca[x]);
    cover(ends[x][1], lca[x]);
  }

  // Coverage counts of tree edges (indexed by lower endpoint).
  std::vector<std::int32_t> cnt(static_cast<std::size_t>(n), 0);
  for (EdgeId e : links) {
    if (!chosen[e]) continue;
    ++cnt[ends[e][0]];
    ++cnt[ends[e][1]];
    cnt[lca[e]] -= 2;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[*it] >= 0) cnt[parent[*it]] += cnt[*it];
  }
  // single[v]: tree edges with count 1 on the root path of v. A link whose
  // path has none is a removal candidate.
  std::vector<std::int32_t> single(static_cast<std::size_t>(n), 0);
  for (const VertexId v : order) {
    if (parent[v] >= 0) single[v] = single[parent[v]] + (cnt[v] == 1 ? 1 : 0);
  }
  std::vector<EdgeId> candidates;
  for (auto it = links.rbegin(); it != links.rend(); ++it) {
    const EdgeId x = *it;
    if (chosen[x] && single[ends[x][0]] + single[ends[x][1]] - 2 * single[lca[x]] == 0) candidates.push_back(x);
  }
  if (!candidates.empty()) {
    // Removing a candidate may push other paths down to count 1, so each one
    // is rechecked on a heavy-path decomposition with a min segment tree.
    std::vector<std::int32_t> size(static_cast<std::size_t>(n), 1);
    std::vector<VertexId> heavy(static_cast<std::size_t>(n), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId v = *it, p = parent[v];
      if (p < 0) continue;
      size[p] += size[v];
    }
    for (const VertexId v : order) {
      const VertexId p = parent[v];
      if (p >= 0 && (heavy[p] < 0 || size[v] > size[heavy[p]])) heavy[p] = v;
    }
    std::vector<VertexId> head(static_cast<std::size_t>(n));
    std::vector<std::int32_t> pos(static_cast<std::size_t>(n));
    std::vector<std::int32_t> base(static_cast<std::size_t>(n));
    std::int32_t next = 0;
    for (const VertexId v : order) {
      if (parent[v] >= 0 && heavy[parent[v]] == v) continue;
      for (VertexId u = v; u >= 0; u = heavy[u]) {
        head[u] = v;
        pos[u] = next;
        base[next++] = parent[u] >= 0 ? cnt[u] : std::numeric_limits<std::int32_t>::max() / 2;
      }
    }
    MinTree counts(base);
    auto for_path = [&](VertexId a, VertexId top, auto&& fn) {
      while (head[a] != head[top]) {
        fn(pos[head[a]], pos[a]);
        a = parent[head[a]];
      }
      if (a != top) fn(pos[top] + 1, pos[a]);
    };
    for (const EdgeId x : candidates) {
      const VertexId a = ends[x][0], b = ends[x][1], c = lca[x];
      std::int32_t low = std::numeric_limits<std::int32_t>::max();
      auto probe = [&](std::int32_t l, std::int32_t r) { low = std::min(low, counts.min(l, r)); };
      for_path(a, c, probe);
      for_path(b, c, probe);
      if (low < 2) continue;
      auto drop = [&](std::int32_t l, std::int32_t r) { counts.add(l, r, -1); };
      for_path(a, c, drop);
      for_path(b, c, drop);
      chosen[x] = 0;
    }
  }

  Bits keep(static_cast<std::size_t>(m), 0);
  for (EdgeId e = 0; e < m; ++e) keep[e] = tree[e] || chosen[e];
  return keep;
}

// ------------------------------------------------------------- gamma graphs

struct VirtualEdge {
  std::int32_t cycle;
  std::int32_t position;
  EdgeId gamma_edge;  // kNoEdge in singleton components
};

struct Gamma {
  Inst inst;
  std::vector<VertexId> host_vertex;
  std::vector<EdgeId> host_edge;  // kNoEdge for virtual edges
};

// Gamma graphs of the non-singleton components. Singletons carry no edges of
// their own: each sits on exactly one cactus cycle.
struct Gammas {
  std::vector<std::int32_t> part_of;        // component -> index in parts, -1 for singletons
  std::vector<Gamma> parts;
  std::vector<std::int32_t> virt_offset;    // component -> range in virt
  std::vector<VirtualEdge> virt;
  std::vector<EdgeId> virtual_at;           // per cycle slot (as cycle_node): gamma edge in that node
  std::vector<EdgeId> local_edge;           // host edge -> gamma edge of its node, for internal edges

  std::span<const VirtualEdge> virtuals(NodeId c) const {
    return std::span(virt).subspan(virt_offset[c], virt_offset[c + 1] - virt_offset[c]);
  }
};

// Trails of H are the instance trails without their deleted end edges.
Gammas build_gammas(const Inst& in, const Bits& keep, const Cactus& cactus, bool with_singletons = false) {
  const EdgeId m = in.m();
  const NodeId k = cactus.node_count;
  Gammas out;
  out.part_of.assign(static_cast<std::size_t>(k), -1);
  std::vector<VertexId> local(static_cast<std::size_t>(in.n));
  for (NodeId c = 0; c < k; ++c) {
    const auto members = cactus.node_members(c);
    if (members.size() == 1 && !with_singletons) continue;
    out.part_of[c] = static_cast<std::int32_t>(out.parts.size());
    auto& g = out.parts.emplace_back();
    g.inst.n = static_cast<VertexId>(members.size());
    g.host_vertex.assign(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<VertexId>(i);
  }

  out.local_edge.assign(static_cast<std::size_t>(m), kNoEdge);
  for (EdgeId e = 0; e < m; ++e) {
    if (!keep[e] || cactus.is_critical(e)) continue;
    auto& g = out.parts[out.part_of[cactus.vertex_to_node[in.ends[e][0]]]];
    out.local_edge[e] = g.inst.m();
    g.inst.ends.push_back({local[in.ends[e][0]], local[in.ends[e][1]]});
    g.host_edge.push_back(e);
  }

  // Virtual edge at position p of a cycle joins the end of the incoming cycle
  // edge to the end of the outgoing one.
  out.virt_offset.assign(static_cast<std::size_t>(k) + 1, 0);
  for (const NodeId c : cactus.cycle_node) ++out.virt_offset[c + 1];
  for (NodeId c = 0; c < k; ++c) out.virt_offset[c + 1] += out.virt_offset[c];
  out.virt.resize(cactus.cycle_node.size());
  out.virtual_at.assign(cactus.cycle_node.size(), kNoEdge);
  std::vector<std::int32_t> virt_of_end(2 * static_cast<std::size_t>(m), -1);  // critical end -> slot
  std::vector<std::array<std::int32_t, 2>> virt_ends(cactus.cycle_node.size());
  {
    std::vector<std::int32_t> fill(out.virt_offset.begin(), out.virt_offset.end() - 1);
    for (std::int32_t cy = 0; cy < cactus.cycle_count(); ++cy) {
      const auto edges = cactus.cycle_edges(cy);
      const auto nodes = cactus.cycle_nodes(cy);
      const auto len = static_cast<std::int32_t>(edges.size());
      for (std::int32_t p = 0; p < len; ++p) {
        const NodeId c = nodes[p];
        const EdgeId ein = edges[(p + len - 1) % len];
        const EdgeId eout = edges[p];
        const int sin = cactus.vertex_to_node[in.ends[ein][0]] == c ? 0 : 1;
        const int sout = cactus.vertex_to_node[in.ends[eout][0]] == c ? 0 : 1;
        if (cactus.vertex_to_node[in.ends[ein][sin]] != c || cactus.vertex_to_node[in.ends[eout][sout]] != c) {
          throw std::logic_error("gamma: cut edge does not touch its component");
        }
        EdgeId ge = kNoEdge;
        if (out.part_of[c] >= 0) {
          auto& g = out.parts[out.part_of[c]];
          ge = g.inst.m();
          g.inst.ends.push_back({local[in.ends[ein][sin]], local[in.ends[eout][sout]]});
          g.host_edge.push_back(kNoEdge);
        }
        out.virt[fill[c]++] = {cy, p, ge};
        const auto slot = cactus.cycle_offset[cy] + p;
        out.virtual_at[slot] = ge;
        virt_ends[slot] = {2 * ein + sin, 2 * eout + sout};
        virt_of_end[2 * ein + sin] = slot;
        virt_of_end[2 * eout + sout] = slot;
      }
    }
  }

  // Split the H trails into segments at critical edges.
  struct Seg {
    VertexId from, to;
    std::int32_t lo, hi;                      // range in seg_edges
    std::int32_t from_end = -1, to_end = -1;  // critical end, -1 at a trail end
  };
  std::vector<Seg> segs;
  std::vector<EdgeId> seg_edges;
  std::vector<std::int32_t> seg_of_end(2 * static_cast<std::size_t>(m), -1);
  segs.reserve(static_cast<std::size_t>(in.trail_count()) + cactus.cycle_edge.size());
  seg_edges.reserve(static_cast<std::size_t>(m));
  for (std::int32_t t = 0; t < in.trail_count(); ++t) {
    auto edges = in.trail(t);
    VertexId v = in.tstart[t];
    std::size_t lo = 0, hi = edges.size();
    while (lo < hi && !keep[edges[lo]]) v = other_end(in.ends[edges[lo++]], v);
    while (hi > lo && !keep[edges[hi - 1]]) --hi;
    if (lo == hi) continue;
    Seg cur{v, v, static_cast<std::int32_t>(seg_edges.size()), 0};
    for (std::size_t i = lo; i < hi; ++i) {
      const EdgeId e = edges[i];
      if (!keep[e]) throw std::logic_error("gamma: deleted edge inside a trail");
      const auto& ee = in.ends[e];
      const VertexId w = other_end(ee, v);
      if (cactus.is_critical(e)) {
        const int sv = ee[0] == v ? 0 : 1;
        cur.to = v;
        cur.hi = static_cast<std::int32_t>(seg_edges.size());
        cur.to_end = 2 * e + sv;
        seg_of_end[cur.to_end] = static_cast<std::int32_t>(segs.size());
        segs.push_back(cur);
        cur = Seg{w, w, static_cast<std::int32_t>(seg_edges.size()), 0};
        cur.from_end = 2 * e + (1 - sv);
        seg_of_end[cur.from_end] = static_cast<std::int32_t>(segs.size());
      } else {
        seg_edges.push_back(e);
      }
      v = w;
    }
    cur.to = v;
    cur.hi = static_cast<std::int32_t>(seg_edges.size());
    segs.push_back(cur);
  }

  // Chain segments through virtual edges into gamma trails, open chains first.
  std::vector<std::uint8_t> visited(segs.size(), 0);
  auto trace = [&](std::int32_t s, bool forward) {
    auto& g = out.parts[out.part_of[cactus.vertex_to_node[segs[s].from]]];
    g.inst.add_trail(local[forward ? segs[s].from : segs[s].to]);
    while (true) {
      visited[s] = 1;
      const Seg& sg = segs[s];
      if (forward) {
        for (auto i = sg.lo; i < sg.hi; ++i) g.inst.push(out.local_edge[seg_edges[i]]);
      } else {
        for (auto i = sg.hi; i > sg.lo; --i) g.inst.push(out.local_edge[seg_edges[i - 1]]);
      }
      const std::int32_t end = forward ? sg.to_end : sg.from_end;
      if (end < 0) return;
      const auto slot = virt_of_end[end];
      g.inst.push(out.virtual_at[slot]);
      const std::int32_t next_end = virt_ends[slot][0] == end ? virt_ends[slot][1] : virt_ends[slot][0];
      const std::int32_t ns = seg_of_end[next_end];
      if (visited[ns]) return;
      forward = segs[ns].from_end == next_end;
      s = ns;
    }
  };
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (out.part_of[cactus.vertex_to_node[segs[s].from]] < 0) visited[s] = 1;
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (!visited[s] && segs[s].from_end < 0) trace(static_cast<std::int32_t>(s), true);
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (!visited[s] && segs[s].to_end < 0) trace(static_cast<std::int32_t>(s), false);
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (!visited[s]) trace(static_cast<std::int32_t>(s), true);
  }
  return out;
}

// ------------------------------------------------------------- combination

// Host bits for the kept edges from the bits of every gamma part. For a
// virtual edge (x, y) at position p, traversing it x -> y stands for leaving
// through the incoming cycle edge and coming back through the outgoing one,
// so the cycle runs against its order.
Bits combine(std::span<const EdgeEnds> ends, const Bits& keep, const Cactus& cactus, const Gammas& gs,
             std::span<const Bits> part_bits) {
  const NodeId k = cactus.node_count;
  std::vector<std::int8_t> flip(static_cast<std::size_t>(k), -1);
  std::vector<std::int8_t> cyc_dir(static_cast<std::size_t>(cactus.cycle_count()), -1);
  // Singletons vote for the cycle order.
  auto virtual_bit = [&](NodeId c, EdgeId ge) -> int {
    return gs.part_of[c] < 0 ? 1 : part_bits[gs.part_of[c]][ge];
  };

  std::vector<NodeId> queue{0};
  queue.reserve(static_cast<std::size_t>(k));
  flip[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const NodeId c = queue[qi];
    for (const auto& ve : gs.virtuals(c)) {
      if (cyc_dir[ve.cycle] >= 0) continue;
      cyc_dir[ve.cycle] = static_cast<std::int8_t>(1 ^ virtual_bit(c, ve.gamma_edge) ^ flip[c]);
      const auto nodes = cactus.cycle_nodes(ve.cycle);
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        const NodeId d = nodes[q];
        if (flip[d] >= 0) {
          if (d != c) throw std::logic_error("combine: cactus cycles share an edge");
          continue;
        }
        const EdgeId ge = gs.virtual_at[cactus.cycle_offset[ve.cycle] + static_cast<std::int32_t>(q)];
        flip[d] = static_cast<std::int8_t>(gs.part_of[d] < 0 ? 0 : 1 ^ virtual_bit(d, ge) ^ cyc_dir[ve.cycle]);
        queue.push_back(d);
      }
    }
  }

  Bits bits(ends.size(), 0);
  for (EdgeId e = 0; e < static_cast<EdgeId>(ends.size()); ++e) {
    if (!keep[e]) continue;
    if (cactus.is_critical(e)) {
      const auto cy = cactus.edge_cycle[e];
      const NodeId from = cactus.cycle_nodes(cy)[cactus.edge_position[e]];
      bits[e] = static_cast<std::uint8_t>((cactus.vertex_to_node[ends[e][0]] == from ? 0 : 1) ^ cyc_dir[cy]);
    } else {
      const NodeId c = cactus.vertex_to_node[ends[e][0]];
      bits[e] = static_cast<std::uint8_t>(part_bits[gs.part_of[c]][gs.local_edge[e]] ^ flip[c]);
    }
  }
  return bits;
}

// Edges outside `keep` take the direction of their trail; trails with no
// oriented edge run forward along their walk.
void follow_trails(const Inst& in, const Bits& keep, Bits& bits) {
  for (std::int32_t t = 0; t < in.trail_count(); ++t) {
    const auto edges = in.trail(t);
    bool any_missing = false;
    int along = -1;
    VertexId v = in.tstart[t];
    for (EdgeId e : edges) {
      const auto& ee = in.ends[e];
      if (!keep[e]) {
        any_missing = true;
      } else if (along < 0 && ee[0] != ee[1]) {
        along = (ee[0] == v ? 0 : 1) == bits[e] ? 1 : 0;
      }
      v = other_end(ee, v);
    }
    if (!any_missing) continue;
    v = in.tstart[t];
    for (EdgeId e : edges) {
      const auto& ee = in.ends[e];
      if (!keep[e]) {
        const std::uint8_t forward = ee[0] == v ? 0 : 1;
        bits[e] = along == 0 ? forward ^ 1 : forward;
      }
      v = other_end(ee, v);
    }
  }
}

// ------------------------------------------------------------------ driver

void note_level(LinearStats* stats, int level, const Inst& in, const Bits& tree, const Bits& keep,
                const Cactus& cactus) {
  if (!stats) return;
  if (static_cast<int>(stats->levels.size()) <= level) stats->levels.resize(static_cast<std::size_t>(level) + 1);
  auto& ls = stats->levels[level];
  std::int64_t non_tree = 0, deleted = 0, large = 0;
  for (EdgeId e = 0; e < in.m(); ++e) {
    non_tree += tree[e] ? 0 : 1;
    deleted += keep[e] ? 0 : 1;
  }
  for (NodeId c = 0; c < cactus.node_count; ++c) {
    const auto size = static_cast<std::int64_t>(cactus.node_members(c).size());
    if (size >= LinearStats::kLargeComponent) large += size;
  }
  ++ls.instances;
  ls.vertices += in.n;
  ls.non_tree_edges += non_tree;
  ls.deleted_edges += deleted;
  ls.components += cactus.node_count;
  ls.large_component_vertices += large;
  if (5 * static_cast<std::int64_t>(cactus.node_count) < 2 * non_tree) ++ls.component_bound_misses;
  if (9 * large >= 8 * static_cast<std::int64_t>(in.n)) ++ls.mass_bound_misses;
}

constexpr VertexId kLocalizeMin = 1 << 14;

// Renumbers vertices in preorder of the spanning tree and edges by their
// lower endpoint, so that later passes touch memory roughly sequentially.
// edge_of[new id] = old id.
Inst localize(const Inst& in, const Bits& tree, std::vector<EdgeId>& edge_of) {
  const auto m = static_cast<std::size_t>(in.m());
  std::vector<VertexId> vnew(static_cast<std::size_t>(in.n), -1);
  {
    const Csr adj = build_csr(in.n, in.ends, tree);
    std::vector<VertexId> stack{0};
    VertexId next = 0;
    vnew[0] = 0;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      vnew[v] = next++;
      for (auto i = adj.begin(v); i < adj.end(v); ++i) {
        const VertexId w = adj.other[i];
        if (vnew[w] >= 0) continue;
        vnew[w] = 0;
        stack.push_back(w);
      }
    }
  }
  Inst out;
  out.n = in.n;
  std::vector<EdgeEnds> renamed(m);
  std::vector<std::int32_t> start(static_cast<std::size_t>(in.n) + 1, 0);
  for (std::size_t e = 0; e < m; ++e) {
    renamed[e] = {vnew[in.ends[e][0]], vnew[in.ends[e][1]]};
    ++start[std::min(renamed[e][0], renamed[e][1]) + 1];
  }
  for (VertexId v = 0; v < in.n; ++v) start[v + 1] += start[v];
  std::vector<EdgeId> enew(m);
  edge_of.resize(m);
  out.ends.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto pos = start[std::min(renamed[e][0], renamed[e][1])]++;
    enew[e] = pos;
    edge_of[pos] = static_cast<EdgeId>(e);
    out.ends[pos] = renamed[e];
  }
  out.tstart.resize(in.tstart.size());
  for (std::size_t t = 0; t < in.tstart.size(); ++t) out.tstart[t] = vnew[in.tstart[t]];
  out.toff = in.toff;
  out.tedges.resize(in.tedges.size());
  for (std::size_t i = 0; i < in.tedges.size(); ++i) out.tedges[i] = enew[in.tedges[i]];
  return out;
}

// nullopt when the instance is not 2-edge connected.
std::optional<Bits> solve(const Inst& in, int level, LinearStats* stats);

// `in` is cubic and loopless; `tree` is its trail spanning tree.
std::optional<Bits> solve_cubic(const Inst& in, const Bits& tree, int level, LinearStats* stats) {
  if (stats && level == 0) stats->reduced_vertices = in.n;
  const Bits usable(static_cast<std::size_t>(in.m()), 1);
  const auto found = minimal_keep(in.n, in.ends, tree, usable);
  if (!found) return std::nullopt;
  const Bits& keep = *found;
  const Cactus cactus = build_cactus(in.n, in.ends, keep);
  if (cactus.node_count == 1) throw std::logic_error("orient_linear: minimal subgraph is 3-edge connected");
  note_level(stats, level, in, tree, keep, cactus);

  const Gammas gs = build_gammas(in, keep, cactus);
  std::vector<Bits> gamma_bits(gs.parts.size());
  for (std::size_t i = 0; i < gs.parts.size(); ++i) {
    auto bits = solve(gs.parts[i].inst, level + 1, stats);
    if (!bits) throw std::logic_error("orient_linear: gamma graph is not 2-edge connected");
    gamma_bits[i] = std::move(*bits);
  }
  Bits bits = combine(in.ends, keep, cactus, gs, gamma_bits);
  follow_trails(in, keep, bits);
  return bits;
}

std::optional<Bits> solve(const Inst& in, int level, LinearStats* stats) {
  if (in.m() == 0) return Bits{};
  if (!cubic_loopless(in)) {
    const Reduced r = reduce(in);
    auto bits = solve(r.inst, level, stats);
    if (bits) bits->resize(static_cast<std::size_t>(in.m()));
    return bits;
  }
  const auto tree = tree_mask(in);
  if (!tree) return std::nullopt;
  if (in.n < kLocalizeMin) return solve_cubic(in, *tree, level, stats);
  std::vector<EdgeId> edge_of;
  const Inst li = localize(in, *tree, edge_of);
  Bits local_tree(edge_of.size());
  for (std::size_t e = 0; e < edge_of.size(); ++e) local_tree[e] = (*tree)[edge_of[e]];
  const auto local = solve_cubic(li, local_tree, level, stats);
  if (!local) return std::nullopt;
  Bits bits(static_cast<std::size_t>(in.m()));
  for (std::size_t e = 0; e < edge_of.size(); ++e) bits[edge_of[e]] = (*local)[e];
  return bits;
}

Orientation to_orientation(const Bits& bits, std::span<const EdgeId> ids, std::size_t size) {
  Orientation o(size);
  for (std::size_t i = 0; i < ids.size(); ++i) o.set(ids[i], bits[i] ? Direction::Reversed : Direction::Forward);
  return o;
}

void require_undirected(const MultiGraph& g, const char* what) {
  for (const auto& rec : g.edges()) {
    if (rec.alive && !rec.is_undirected()) throw std::invalid_argument(std::string(what) + ": graph has directed edges");
  }
}

// Instance over the live edges of g, renumbered densely; ids[i] is the g id.
Inst live_inst(const MultiGraph& g, const TrailPartition& p, std::vector<EdgeId>& ids) {
  std::vector<EdgeId> dense(static_cast<std::size_t>(g.edge_count()), kNoEdge);
  Inst in;
  in.n = g.vertex_count();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive) continue;
    dense[e] = static_cast<EdgeId>(ids.size());
    ids.push_back(e);
    in.ends.push_back({rec.tail, rec.head});
  }
  for (const auto& t : p) {
    in.add_trail(t.start);
    for (EdgeId e : t.edges) in.push(dense[e]);
  }
  return in;
}

}  // namespace

CubicReduction reduce_to_cubic(const MultiGraph& g, const TrailPartition& p) {
  require_undirected(g, "reduce_to_cubic");
  if (const auto check = validate_trails(g, p); !check) throw std::invalid_argument(check.message);
  if (!is_two_edge_connected(g)) throw std::invalid_argument("reduce_to_cubic: graph is not 2-edge connected");
  if (g.live_edge_count() != static_cast<std::size_t>(g.edge_count())) {
    throw std::invalid_argument("reduce_to_cubic: graph has deleted edges");
  }
  const Reduced r = reduce(to_inst(g, p));
  CubicReduction out{to_graph(r.inst), to_trails(r.inst), {}};
  const EdgeId m = g.edge_count();
  out.map.orig_edge_of.assign(static_cast<std::size_t>(3 * m), kNoEdge);
  for (EdgeId e = 0; e < m; ++e) out.map.orig_edge_of[e] = e;
  out.map.cycle_of_vertex.resize(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (auto s = r.vertex_offset[v]; s < r.vertex_offset[v + 1]; ++s) out.map.cycle_of_vertex[v].push_back(s);
  }
  out.map.trail_map = r.trail_map;
  return out;
}

Orientation pull_back(const CubicReduction& r, const Orientation& reduced) {
  EdgeId m = 0;
  for (EdgeId x : r.map.orig_edge_of) m = std::max(m, x + 1);
  Orientation o(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < static_cast<EdgeId>(r.map.orig_edge_of.size()); ++e) {
    const EdgeId x = r.map.orig_edge_of[e];
    if (x != kNoEdge && reduced.has(e)) o.set(x, reduced.at(e));
  }
  return o;
}

std::vector<EdgeId> trail_spanning_tree(const MultiGraph& g, const TrailPartition& p) {
  std::vector<EdgeId> ids;
  const Inst in = live_inst(g, p, ids);
  const auto tree = tree_mask(in);
  if (!tree) throw std::invalid_argument("trail_spanning_tree: graph is not connected");
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if ((*tree)[i]) out.push_back(ids[i]);
  }
  return out;
}

MinimalSubgraph minimal_2ecc_subgraph(const MultiGraph& g, std::span<const EdgeId> tree) {
  if (!is_two_edge_connected(g)) throw std::invalid_argument("minimal_2ecc_subgraph: graph is not 2-edge connected");
  const FlatGraph f = flatten(g);
  Bits in_tree(f.ends.size(), 0);
  for (EdgeId e : tree) {
    if (!g.valid_edge(e) || !f.alive[e]) throw std::invalid_argument("minimal_2ecc_subgraph: bad tree edge");
    in_tree[e] = 1;
  }
  const auto keep = minimal_keep(f.n, f.ends, in_tree, f.alive);
  if (!keep) throw std::invalid_argument("minimal_2ecc_subgraph: graph is not 2-edge connected");
  MinimalSubgraph out{g, {}};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (f.alive[e] && !(*keep)[e]) {
      out.graph.remove_edge(e);
      out.deleted.push_back(e);
    }
  }
  return out;
}

GammaGraph build_gamma(const MultiGraph& h, const TrailPartition& p, const Cactus& cactus, NodeId c) {
  if (c < 0 || c >= cactus.node_count) throw std::invalid_argument("build_gamma: no such component");
  const Inst in = to_inst(h, p);
  const FlatGraph f = flatten(h);
  const Gammas gs = build_gammas(in, f.alive, cactus, true);
  const Gamma& g = gs.parts[gs.part_of[c]];
  GammaGraph out;
  out.graph = to_graph(g.inst);
  out.trails = to_trails(g.inst);
  out.host_component = c;
  out.host_vertex = g.host_vertex;
  out.host_edge = g.host_edge;
  for (const auto& ve : gs.virtuals(c)) {
    const auto edges = cactus.cycle_edges(ve.cycle);
    const auto len = static_cast<std::int32_t>(edges.size());
    out.replaced_cuts.push_back(
        {{edges[(ve.position + len - 1) % len], edges[ve.position]}, ve.gamma_edge, ve.cycle, ve.position});
  }
  return out;
}

Orientation combine_components(const MultiGraph& h, const Cactus& cactus, std::span<const GammaGraph> gammas,
                               std::span<const Orientation> orientations) {
  const auto k = static_cast<std::size_t>(cactus.node_count);
  if (gammas.size() != k || orientations.size() != k) {
    throw std::invalid_argument("combine_components: need one gamma graph per component");
  }
  const FlatGraph f = flatten(h);
  Gammas gs;
  gs.part_of.assign(k, -1);
  gs.virt_offset.assign(k + 1, 0);
  gs.virtual_at.assign(cactus.cycle_node.size(), kNoEdge);
  gs.local_edge.assign(f.ends.size(), kNoEdge);
  std::vector<Bits> bits;
  for (std::size_t c = 0; c < k; ++c) {
    const auto& gg = gammas[c];
    for (const auto& rc : gg.replaced_cuts) {
      gs.virt.push_back({rc.cycle, rc.position, rc.gamma_edge});
      gs.virtual_at[cactus.cycle_offset[rc.cycle] + rc.position] = rc.gamma_edge;
    }
    gs.virt_offset[c + 1] = static_cast<std::int32_t>(gs.virt.size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(gg.host_edge.size()); ++e) {
      if (gg.host_edge[e] != kNoEdge) gs.local_edge[gg.host_edge[e]] = e;
    }
    if (gg.graph.vertex_count() > 1) {
      gs.part_of[c] = static_cast<std::int32_t>(bits.size());
      auto& b = bits.emplace_back(static_cast<std::size_t>(gg.graph.edge_count()));
      for (EdgeId e = 0; e < gg.graph.edge_count(); ++e) b[e] = orientations[c].at(e) == Direction::Reversed;
    }
  }
  const Bits out = combine(f.ends, f.alive, cactus, gs, bits);
  Orientation o(f.ends.size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(f.ends.size()); ++e) {
    if (f.alive[e]) o.set(e, out[e] ? Direction::Reversed : Direction::Forward);
  }
  return o;
}

std::optional<Orientation> orient_linear(const MultiGraph& g, const TrailPartition& p, LinearStats* stats) {
  require_undirected(g, "orient_linear");
  if (const auto check = validate_trails(g, p); !check) throw std::invalid_argument(check.message);
  std::vector<EdgeId> ids;
  const Inst in = live_inst(g, p, ids);
  if (in.n == 0) return std::nullopt;
  // A vertex of degree below 2 is either isolated or hangs on a bridge. Past
  // this point connectivity and bridges are found by the pipeline itself.
  if (in.n > 1) {
    std::vector<std::int32_t> deg(static_cast<std::size_t>(in.n), 0);
    for (const auto& ee : in.ends) {
      ++deg[ee[0]];
      ++deg[ee[1]];
    }
    if (std::any_of(deg.begin(), deg.end(), [](std::int32_t d) { return d < 2; })) return std::nullopt;
  }
  if (stats) *stats = LinearStats{};
  const auto bits = solve(in, 0, stats);
  if (!bits) {
    if (stats) *stats = LinearStats{};
    return std::nullopt;
  }
  return to_orientation(*bits, ids, static_cast<std::size_t>(g.edge_count()));
}

}  // namespace trailorient
