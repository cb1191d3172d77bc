#include "trailorient/connectivity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace trailorient {
namespace {

std::vector<std::uint8_t> live_mask(const MultiGraph& g, EdgeId skip) {
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) keep[e] = g.edge(e).alive && e != skip;
  return keep;
}

std::vector<EdgeEnds> all_ends(const MultiGraph& g) {
  std::vector<EdgeEnds> ends;
  ends.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const auto& rec : g.edges()) ends.push_back({rec.tail, rec.head});
  return ends;
}

// Iterative DFS over the kept edges. Non-tree edges are reported once, from the
// deeper endpoint (or once for a self-loop).
struct DfsForest {
  std::vector<std::int32_t> pre;
  std::vector<VertexId> order;
  std::vector<EdgeId> parent_edge;
  std::vector<VertexId> parent;
  std::vector<std::int32_t> depth;
  std::vector<std::pair<EdgeId, VertexId>> back_edges;  // (edge, deeper endpoint)
  std::int32_t roots = 0;
};

DfsForest dfs(VertexId n, const Csr& csr) {
  DfsForest f;
  f.pre.assign(static_cast<std::size_t>(n), -1);
  f.parent_edge.assign(static_cast<std::size_t>(n), kNoEdge);
  f.parent.assign(static_cast<std::size_t>(n), -1);
  f.depth.assign(static_cast<std::size_t>(n), 0);
  f.order.reserve(static_cast<std::size_t>(n));
  std::vector<std::int32_t> cursor(static_cast<std::size_t>(n));
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (f.pre[root] >= 0) continue;
    ++f.roots;
    f.pre[root] = static_cast<std::int32_t>(f.order.size());
    f.order.push_back(root);
    cursor[root] = csr.begin(root);
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      if (cursor[v] == csr.end(v)) {
        stack.pop_back();
        continue;
      }
      const auto pos = cursor[v]++;
      const EdgeId e = csr.edge[pos];
      if (e == f.parent_edge[v]) continue;
      const VertexId w = csr.other[pos];
      if (f.pre[w] < 0) {
        f.pre[w] = static_cast<std::int32_t>(f.order.size());
        f.order.push_back(w);
        f.parent_edge[w] = e;
        f.parent[w] = v;
        f.depth[w] = f.depth[v] + 1;
        cursor[w] = csr.begin(w);
        stack.push_back(w);
      } else if (f.pre[w] < f.pre[v] || (w == v && csr.slot[pos] == 0)) {
        f.back_edges.emplace_back(e, v);
      }
    }
  }
  return f;
}

}  // namespace

std::vector<CutPair> Cactus::cut_pairs() const {
  std::vector<CutPair> pairs;
  for (std::int32_t c = 0; c < cycle_count(); ++c) {
    const auto es = cycle_edges(c);
    const auto k = es.size();
    if (k == 2) {
      pairs.push_back({es[0], es[1]});
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) pairs.push_back({es[i], es[(i + 1) % k]});
  }
  return pairs;
}

namespace {

std::vector<EdgeId> bridges_of(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep,
                               std::int32_t& roots) {
  const Csr csr = build_csr(n, ends, keep);
  const DfsForest f = dfs(n, csr);
  roots = f.roots;
  std::vector<std::int32_t> low(f.pre);
  for (const auto& [e, v] : f.back_edges) {
    const VertexId w = ends[e][0] == v ? ends[e][1] : ends[e][0];
    low[v] = std::min(low[v], f.pre[w]);
  }
  std::vector<EdgeId> bridges;
  for (auto it = f.order.rbegin(); it != f.order.rend(); ++it) {
    const VertexId v = *it;
    const VertexId p = f.parent[v];
    if (p < 0) continue;
    if (low[v] > f.pre[p]) bridges.push_back(f.parent_edge[v]);
    low[p] = std::min(low[p], low[v]);
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

}  // namespace

std::vector<EdgeId> find_bridges(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep) {
  std::int32_t roots = 0;
  return bridges_of(n, ends, keep, roots);
}

bool is_two_edge_connected(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep) {
  if (n <= 0) return false;
  std::int32_t roots = 0;
  const auto bridges = bridges_of(n, ends, keep, roots);
  return roots == 1 && bridges.empty();
}

std::vector<EdgeId> find_bridges(const MultiGraph& g, EdgeId skip) {
  const auto ends = all_ends(g);
  const auto keep = live_mask(g, skip);
  return find_bridges(g.vertex_count(), ends, keep);
}

bool is_connected(const MultiGraph& g, EdgeId skip) {
  const VertexId n = g.vertex_count();
  if (n == 0) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  VertexId reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.incident(v)) {
      if (inc.edge == skip) continue;
      const VertexId w = g.edge(inc.edge).other(v);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

bool is_two_edge_connected(const MultiGraph& g, EdgeId skip) {
  const auto ends = all_ends(g);
  const auto keep = live_mask(g, skip);
  return is_two_edge_connected(g.vertex_count(), ends, keep);
}

bool is_strongly_connected(const MultiGraph& g, EdgeId skip) {
  const VertexId n = g.vertex_count();
  if (n == 0) return false;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n));
  std::vector<VertexId> stack;
  for (int pass = 0; pass < 2; ++pass) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[0] = 1;
    stack.assign(1, 0);
    VertexId reached = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(v)) {
        if (inc.edge == skip) continue;
        const auto& rec = g.edge(inc.edge);
        if (!rec.is_undirected()) {
          const VertexId from = pass == 0 ? rec.source() : rec.target();
          if (from != v) continue;
        }
        const VertexId w = rec.other(v);
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) return false;
  }
  return true;
}

Cactus build_cactus(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep) {
  if (n <= 0) throw std::invalid_argument("three_edge_components: empty graph");
  const auto m = static_cast<EdgeId>(ends.size());
  auto kept = [&](EdgeId e) { return keep.empty() || keep[e] != 0; };
  const Csr csr = build_csr(n, ends, keep);
  const DfsForest f = dfs(n, csr);
  if (f.roots != 1) throw std::invalid_argument("three_edge_components: graph is not connected");

  // Random 64-bit edge labels: a non-tree edge gets a fresh value, a tree edge
  // the XOR of the non-tree edges whose fundamental cycle covers it. Two edges
  // form a cut pair iff their labels agree; a zero label marks a bridge.
  constexpr std::uint64_t kSeed = 0x5eed'c0ff'ee11'7a11ULL;
  std::vector<std::uint64_t> label(static_cast<std::size_t>(m), 0);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(n), 0);
  for (const auto& [e, v] : f.back_edges) {
    const std::uint64_t r = splitmix64(kSeed ^ (static_cast<std::uint64_t>(e) * 0x9e3779b97f4a7c15ULL));
    label[e] = r;
    acc[ends[e][0]] ^= r;
    acc[ends[e][1]] ^= r;
  }
  for (auto it = f.order.rbegin(); it != f.order.rend(); ++it) {
    const VertexId v = *it;
    if (f.parent[v] < 0) continue;
    if (acc[v] == 0) throw std::invalid_argument("three_edge_components: graph has a bridge");
    label[f.parent_edge[v]] = acc[v];
    acc[f.parent[v]] ^= acc[v];
  }

  struct Key {
    std::uint64_t label;
    std::int32_t depth;
    EdgeId edge;
  };
  std::vector<Key> keys;
  keys.reserve(static_cast<std::size_t>(m));
  for (VertexId v = 0; v < n; ++v) {
    if (f.parent[v] >= 0) keys.push_back({label[f.parent_edge[v]], f.depth[v], f.parent_edge[v]});
  }
  for (const auto& [e, v] : f.back_edges) {
    if (ends[e][0] != ends[e][1]) keys.push_back({label[e], std::numeric_limits<std::int32_t>::max(), e});
  }
  // Labels are uniform, so a counting sort on the top bits leaves tiny
  // buckets to finish with a comparison sort.
  {
    int bits = 1;
    while ((std::size_t{1} << bits) < keys.size()) ++bits;
    const int shift = 64 - bits;
    std::vector<std::int32_t> start((std::size_t{1} << bits) + 1, 0);
    for (const Key& k : keys) ++start[(k.label >> shift) + 1];
    for (std::size_t b = 1; b < start.size(); ++b) start[b] += start[b - 1];
    std::vector<Key> sorted(keys.size());
    {
      std::vector<std::int32_t> fill(start.begin(), start.end() - 1);
      for (const Key& k : keys) sorted[fill[k.label >> shift]++] = k;
    }
    for (std::size_t b = 0; b + 1 < start.size(); ++b) {
      if (start[b + 1] - start[b] < 2) continue;
      std::sort(sorted.begin() + start[b], sorted.begin() + start[b + 1], [](const Key& x, const Key& y) {
        return std::tie(x.label, x.depth, x.edge) < std::tie(y.label, y.depth, y.edge);
      });
    }
    keys = std::move(sorted);
  }

  Cactus c;
  c.edge_cycle.assign(static_cast<std::size_t>(m), -1);
  c.edge_position.assign(static_cast<std::size_t>(m), -1);
  // Exit and entry vertex of every critical edge along its cycle: tree edges
  // run downward, the closing non-tree edge runs back up.
  std::vector<VertexId> exit_v, entry_v;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j].label == keys[i].label) ++j;
    if (j - i >= 2) {
      const auto cycle = c.cycle_count();
      for (std::size_t k = i; k < j; ++k) {
        const EdgeId e = keys[k].edge;
        VertexId a = ends[e][0];
        VertexId b = ends[e][1];
        if (f.depth[a] > f.depth[b]) std::swap(a, b);  // a is the upper endpoint
        const bool tree = keys[k].depth != std::numeric_limits<std::int32_t>::max();
        exit_v.push_back(tree ? a : b);
        entry_v.push_back(tree ? b : a);
        c.edge_cycle[e] = cycle;
        c.edge_position[e] = static_cast<std::int32_t>(k - i);
        c.cycle_edge.push_back(e);
      }
      c.cycle_offset.push_back(static_cast<std::int32_t>(c.cycle_edge.size()));
    }
    i = j;
  }

  DisjointSets sets(static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < m; ++e) {
    if (kept(e) && c.edge_cycle[e] < 0) sets.unite(ends[e][0], ends[e][1]);
  }
  for (std::int32_t cy = 0; cy < c.cycle_count(); ++cy) {
    const auto lo = c.cycle_offset[cy];
    const auto k = c.cycle_offset[cy + 1] - lo;
    for (std::int32_t i = 0; i < k; ++i) sets.unite(entry_v[lo + i], exit_v[lo + (i + 1) % k]);
  }

  c.vertex_to_node.assign(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> node_of_root(static_cast<std::size_t>(n), -1);
  for (VertexId v = 0; v < n; ++v) {
    const auto r = sets.find(v);
    if (node_of_root[r] < 0) node_of_root[r] = c.node_count++;
    c.vertex_to_node[v] = node_of_root[r];
  }
  c.member_offset.assign(static_cast<std::size_t>(c.node_count) + 1, 0);
  for (VertexId v = 0; v < n; ++v) ++c.member_offset[c.vertex_to_node[v] + 1];
  for (NodeId x = 0; x < c.node_count; ++x) c.member_offset[x + 1] += c.member_offset[x];
  c.members.resize(static_cast<std::size_t>(n));
  {
    std::vector<std::int32_t> fill(c.member_offset.begin(), c.member_offset.end() - 1);
    for (VertexId v = 0; v < n; ++v) c.members[fill[c.vertex_to_node[v]]++] = v;
  }

  c.cycle_node.resize(c.cycle_edge.size());
  c.edges.reserve(c.cycle_edge.size());
  for (std::int32_t cy = 0; cy < c.cycle_count(); ++cy) {
    const auto lo = c.cycle_offset[cy];
    const auto k = c.cycle_offset[cy + 1] - lo;
    for (std::int32_t i = 0; i < k; ++i) c.cycle_node[lo + i] = c.vertex_to_node[exit_v[lo + i]];
    for (std::int32_t i = 0; i < k; ++i) {
      c.edges.push_back({c.cycle_node[lo + i], c.cycle_node[lo + (i + 1) % k], c.cycle_edge[lo + i], cy, i});
    }
  }
  return c;
}

Cactus three_edge_components(const MultiGraph& h) {
  const auto ends = all_ends(h);
  const auto keep = live_mask(h, kNoEdge);
  return build_cactus(h.vertex_count(), ends, keep);
}

bool is_three_edge_connected(const MultiGraph& g) {
  if (!is_two_edge_connected(g)) return false;
  return three_edge_components(g).node_count == 1;
}

}  // namespace trailorient
