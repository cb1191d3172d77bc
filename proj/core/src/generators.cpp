#include "trailorient/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "trailorient/connectivity.hpp"

namespace trailorient {
namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw_below(rng, i)]);
}

bool coin(Rng& rng, double probability) {
  constexpr std::uint64_t kScale = 1ULL << 30;
  return static_cast<double>(draw_below(rng, kScale)) < probability * static_cast<double>(kScale);
}

using EdgePairs = std::vector<std::pair<VertexId, VertexId>>;

// Random vertex labels, edge order and endpoint order.
MultiGraph scramble(VertexId n, EdgePairs edges, Rng& rng) {
  std::vector<VertexId> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  shuffle(label, rng);
  shuffle(edges, rng);
  MultiGraph g(n);
  for (auto [u, v] : edges) {
    if (draw_below(rng, 2)) std::swap(u, v);
    g.add_edge(label[u], label[v]);
  }
  return g;
}

bool strictly_canonical(VertexId n, const std::vector<std::int32_t>& seq, const std::vector<std::int32_t>& degree,
                        const std::vector<std::vector<std::int32_t>>& pair_index,
                        const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  // Permutations that keep the (non-increasing) degree sequence in place.
  std::vector<VertexId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::int32_t, std::int32_t>> blocks;
  for (VertexId i = 0; i < n;) {
    VertexId j = i;
    while (j < n && degree[j] == degree[i]) ++j;
    if (j - i > 1) blocks.push_back({i, j});
    i = j;
  }
  std::vector<std::int32_t> mapped(seq.size());
  while (true) {
    std::size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto first = perm.begin() + blocks[b].first;
      auto last = perm.begin() + blocks[b].second;
      if (std::next_permutation(first, last)) break;
    }
    if (b == blocks.size()) return true;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto [u, v] = pairs[seq[i]];
      VertexId a = perm[u], c = perm[v];
      if (a > c) std::swap(a, c);
      mapped[i] = pair_index[a][c];
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped < seq) return false;
  }
}

}  // namespace

std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw_below: empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

void for_each_multigraph(VertexId max_n, EdgeId max_m, bool loops, bool up_to_isomorphism,
                         const std::function<bool(const MultiGraph&)>& fn) {
  bool stop = false;
  for (VertexId n = 1; n <= max_n && !stop; ++n) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<std::vector<std::int32_t>> pair_index(static_cast<std::size_t>(n),
                                                      std::vector<std::int32_t>(static_cast<std::size_t>(n), -1));
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = loops ? u : u + 1; v < n; ++v) {
        pair_index[u][v] = static_cast<std::int32_t>(pairs.size());
        pairs.push_back({u, v});
      }
    }
    const auto p = static_cast<std::int32_t>(pairs.size());
    for (EdgeId m = n - 1; m <= max_m && !stop; ++m) {
      if (m > 0 && p == 0) break;
      std::vector<std::int32_t> seq(static_cast<std::size_t>(m), 0);
      std::vector<std::int32_t> degree(static_cast<std::size_t>(n));
      // Odometer over non-decreasing sequences of pair indices.
      bool more = true;
      while (more && !stop) {
        std::fill(degree.begin(), degree.end(), 0);
        for (auto s : seq) {
          ++degree[pairs[s].first];
          ++degree[pairs[s].second];
        }
        bool ok = !up_to_isomorphism || std::is_sorted(degree.begin(), degree.end(), std::greater<>());
        if (ok) {
          DisjointSets sets(static_cast<std::size_t>(n));
          VertexId parts = n;
          for (auto s : seq) parts -= sets.unite(pairs[s].first, pairs[s].second) ? 1 : 0;
          ok = parts == 1;
        }
        if (ok && up_to_isomorphism) ok = strictly_canonical(n, seq, degree, pair_index, pairs);
        if (ok) {
          MultiGraph g(n);
          for (auto s : seq) g.add_edge(pairs[s].first, pairs[s].second);
          stop = !fn(g);
        }
        std::int32_t i = m - 1;
        while (i >= 0 && seq[i] == p - 1) --i;
        if (i < 0) {
          more = false;
        } else {
          const auto next = seq[i] + 1;
          for (auto j = i; j < m; ++j) seq[j] = next;
        }
      }
    }
  }
}

void for_each_trail_partition(const MultiGraph& g, const std::function<bool(const TrailPartition&)>& fn) {
  const VertexId n = g.vertex_count();
  const EdgeId m = g.edge_count();
  // End 2e + s sits at the tail (s = 0) or head (s = 1) of edge e.
  std::vector<std::vector<std::int32_t>> at(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> used_edge(static_cast<std::size_t>(m), 0);
  EdgeId live = 0;
  for (EdgeId e = 0; e < m; ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive || !rec.is_undirected()) continue;
    used_edge[e] = 1;
    ++live;
    at[rec.tail].push_back(2 * e);
    at[rec.head].push_back(2 * e + 1);
  }
  std::vector<std::int32_t> partner(2 * static_cast<std::size_t>(m), -1);
  std::vector<std::uint8_t> taken(2 * static_cast<std::size_t>(m), 0);
  bool stop = false;
  TrailPartition p;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(m));

  auto emit = [&] {
    p.clear();
    std::fill(seen.begin(), seen.end(), 0);
    EdgeId covered = 0;
    for (std::int32_t x = 0; x < 2 * m; ++x) {
      const EdgeId e = x / 2;
      if (!used_edge[e] || seen[e] || partner[x] >= 0) continue;
      Trail t;
      t.start = x % 2 == 0 ? g.edge(e).tail : g.edge(e).head;
      std::int32_t last = x;
      for (std::int32_t cur = x; cur >= 0; cur = partner[cur ^ 1]) {
        // Entering a loop by either end gives the same walk; keep the tail.
        if (cur % 2 == 1 && g.edge(cur / 2).is_loop()) return;
        seen[cur / 2] = 1;
        ++covered;
        t.edges.push_back(cur / 2);
        last = cur;
      }
      // A closed trail comes up once per visit it could be cut at; keep only
      // the cut at the tail of its lowest edge. If that edge is a loop, both
      // walk directions start there; keep the one with the lower second edge.
      const auto& end = g.edge(last / 2);
      if ((last % 2 == 0 ? end.head : end.tail) == t.start) {
        if (x != 2 * *std::min_element(t.edges.begin(), t.edges.end())) return;
        if (g.edge(e).is_loop() && t.edges.size() > 2 && t.edges[1] > t.edges.back()) return;
      }
      p.push_back(std::move(t));
    }
    if (covered == live) stop = !fn(p);
  };

  std::function<void(VertexId, std::size_t)> rec = [&](VertexId v, std::size_t i) {
    if (stop) return;
    if (v == n) {
      emit();
      return;
    }
    const auto& list = at[v];
    while (i < list.size() && taken[list[i]]) ++i;
    if (i >= list.size()) {
      rec(v + 1, 0);
      return;
    }
    const auto x = list[i];
    taken[x] = 1;
    rec(v, i + 1);  // x stays a trail end
    for (std::size_t j = i + 1; j < list.size() && !stop; ++j) {
      const auto y = list[j];
      if (taken[y]) continue;
      taken[y] = 1;
      partner[x] = y;
      partner[y] = x;
      rec(v, i + 1);
      partner[x] = partner[y] = -1;
      taken[y] = 0;
    }
    taken[x] = 0;
  };
  rec(0, 0);
}

void for_each_direction_pattern(const MultiGraph& g, const std::function<bool(const MultiGraph&)>& fn) {
  const EdgeId m = g.edge_count();
  std::vector<std::uint8_t> state(static_cast<std::size_t>(m), 0);
  while (true) {
    MultiGraph h(g.vertex_count());
    for (EdgeId e = 0; e < m; ++e) {
      const auto& rec = g.edge(e);
      if (state[e] == 0) {
        h.add_edge(rec.tail, rec.head);
      } else if (state[e] == 1) {
        h.add_edge(rec.tail, rec.head, EdgeState::FixedForward);
      } else {
        h.add_edge(rec.head, rec.tail, EdgeState::FixedForward);
      }
    }
    if (!fn(h)) return;
    EdgeId i = 0;
    while (i < m && state[i] == 2) state[i++] = 0;
    if (i == m) return;
    ++state[i];
  }
}

TrailPartition random_trails(const MultiGraph& g, Rng& rng) {
  const VertexId n = g.vertex_count();
  const EdgeId m = g.edge_count();
  auto vertex_of = [&](std::int32_t end) { return end % 2 == 0 ? g.edge(end / 2).tail : g.edge(end / 2).head; };

  std::vector<std::int32_t> offset(static_cast<std::size_t>(n) + 1, 0);
  std::vector<EdgeId> unused;
  for (EdgeId e = 0; e < m; ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive || !rec.is_undirected()) continue;
    unused.push_back(e);
    ++offset[rec.tail + 1];
    ++offset[rec.head + 1];
  }
  for (VertexId v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<std::int32_t> items(static_cast<std::size_t>(offset[n]));
  std::vector<std::int32_t> pos(2 * static_cast<std::size_t>(m), -1);
  std::vector<std::int32_t> count(static_cast<std::size_t>(n), 0);
  for (EdgeId e : unused) {
    for (std::int32_t x : {2 * e, 2 * e + 1}) {
      const VertexId v = vertex_of(x);
      pos[x] = offset[v] + count[v]++;
      items[pos[x]] = x;
    }
  }
  std::vector<std::int32_t> upos(static_cast<std::size_t>(m), -1);
  for (std::size_t i = 0; i < unused.size(); ++i) upos[unused[i]] = static_cast<std::int32_t>(i);

  auto drop_end = [&](std::int32_t x) {
    const VertexId v = vertex_of(x);
    const std::int32_t last = offset[v] + --count[v];
    const std::int32_t y = items[last];
    items[pos[x]] = y;
    pos[y] = pos[x];
    items[last] = x;
    pos[x] = last;
  };
  auto drop_edge = [&](EdgeId e) {
    drop_end(2 * e);
    drop_end(2 * e + 1);
    const EdgeId back = unused.back();
    unused[upos[e]] = back;
    upos[back] = upos[e];
    unused.pop_back();
  };
  auto extend = [&](VertexId v, std::vector<EdgeId>& out) {
    while (count[v] > 0) {
      const std::int32_t x = items[offset[v] + static_cast<std::int32_t>(draw_below(rng, count[v]))];
      drop_edge(x / 2);
      out.push_back(x / 2);
      v = vertex_of(x ^ 1);
    }
    return v;
  };

  TrailPartition p;
  std::vector<EdgeId> fwd, back;
  while (!unused.empty()) {
    const EdgeId e0 = unused[draw_below(rng, unused.size())];
    drop_edge(e0);
    fwd.clear();
    back.clear();
    extend(g.edge(e0).head, fwd);
    extend(g.edge(e0).tail, back);
    std::vector<EdgeId> edges(back.rbegin(), back.rend());
    edges.push_back(e0);
    edges.insert(edges.end(), fwd.begin(), fwd.end());
    p.push_back(*make_trail(g, std::move(edges)));
  }
  return p;
}

MultiGraph random_cubic(VertexId n, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("random_cubic: n must be even and at least 2");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<VertexId> stubs(3 * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<VertexId>(i / 3);
    shuffle(stubs, rng);
    EdgePairs edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
    bool clean = true;
    for (auto& e : edges) {
      if (e.first != e.second) continue;
      const VertexId a = e.first;
      bool fixed = false;
      for (int tries = 0; tries < 100 && !fixed; ++tries) {
        auto& f = edges[draw_below(rng, edges.size())];
        if (f.first == a || f.second == a || f.first == f.second) continue;
        const VertexId c = f.first, d = f.second;
        e = {a, c};
        f = {a, d};
        fixed = true;
      }
      clean = clean && fixed;
    }
    if (!clean) continue;
    MultiGraph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    if (is_two_edge_connected(g)) return g;
  }
  throw std::runtime_error("random_cubic: no 2-edge-connected sample found");
}

MultiGraph random_two_edge_connected(VertexId n, EdgeId m, Rng& rng, bool loops) {
  if (n < 1) throw std::invalid_argument("random_two_edge_connected: need a vertex");
  if (n == 1 && m > 0 && !loops) throw std::invalid_argument("random_two_edge_connected: one vertex needs loops");
  EdgePairs edges;
  VertexId next = 1;
  if (n > 1) {
    const VertexId first = std::min<VertexId>(n, 2 + static_cast<VertexId>(draw_below(rng, 3)));
    for (VertexId i = 0; i < first; ++i) edges.push_back({i, (i + 1) % first});
    next = first;
  }
  while (next < n) {
    const auto r = 1 + static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(std::min(n - next, 4))));
    const auto a = static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(next)));
    const auto b = static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(next)));
    VertexId prev = a;
    for (VertexId i = 0; i < r; ++i) {
      edges.push_back({prev, next + i});
      prev = next + i;
    }
    edges.push_back({prev, b});
    next += r;
  }
  while (static_cast<EdgeId>(edges.size()) < m) {
    const auto u = static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(n)));
    const auto v = static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(n)));
    if (u == v && !loops) continue;
    edges.push_back({u, v});
  }
  MultiGraph g = scramble(n, std::move(edges), rng);
  if (!is_two_edge_connected(g)) throw std::logic_error("random_two_edge_connected: certification failed");
  return g;
}

MultiGraph random_connected(VertexId n, EdgeId m, Rng& rng, bool loops) {
  if (n < 1 || m < n - 1) throw std::invalid_argument("random_connected: need m >= n - 1 >= 0");
  if (n == 1 && m > 0 && !loops) throw std::invalid_argument("random_connected: one vertex needs loops");
  EdgePairs edges;
  for (VertexId v = 1; v < n; ++v) {
    edges.push_back({static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(v))), v});
  }
  while (static_cast<EdgeId>(edges.size()) < m) {
    const auto u = static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(n)));
    const auto v = static_cast<VertexId>(draw_below(rng, static_cast<std::uint64_t>(n)));
    if (u == v && !loops) continue;
    edges.push_back({u, v});
  }
  return scramble(n, std::move(edges), rng);
}

Instance random_mixed(VertexId n, EdgeId m, double directed_fraction, Rng& rng) {
  const MultiGraph base = random_two_edge_connected(n, m, rng);
  Instance out{MultiGraph(n), {}};
  for (const auto& rec : base.edges()) {
    if (coin(rng, directed_fraction)) {
      if (draw_below(rng, 2)) {
        out.graph.add_edge(rec.head, rec.tail, EdgeState::FixedForward);
      } else {
        out.graph.add_edge(rec.tail, rec.head, EdgeState::FixedForward);
      }
    } else {
      out.graph.add_edge(rec.tail, rec.head);
    }
  }
  out.trails = random_trails(out.graph, rng);
  return out;
}

Instance fig1_instance() {
  Instance out{MultiGraph(5), {}};
  auto& g = out.graph;
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3, EdgeState::FixedForward);
  g.add_edge(3, 1, EdgeState::FixedForward);
  g.add_edge(2, 4, EdgeState::FixedForward);
  g.add_edge(4, 1, EdgeState::FixedForward);
  out.trails.push_back({0, {0, 1}});
  return out;
}

Instance fig1_attached(VertexId extra_vertices, EdgeId extra_edges, double directed_fraction, Rng& rng) {
  if (extra_vertices < 1) throw std::invalid_argument("fig1_attached: need at least one extra vertex");
  Instance side;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 1000) throw std::runtime_error("fig1_attached: no strongly connected attachment found");
    side = random_mixed(extra_vertices + 1, extra_edges, directed_fraction, rng);
    if (is_strongly_connected(side.graph)) break;
  }
  Instance out = fig1_instance();
  constexpr VertexId kB = 1;
  auto map = [&](VertexId v) { return v == 0 ? kB : 4 + v; };
  for (VertexId v = 0; v < extra_vertices; ++v) out.graph.add_vertex();
  const EdgeId shift = out.graph.edge_count();
  for (const auto& rec : side.graph.edges()) out.graph.add_edge(map(rec.tail), map(rec.head), rec.state);
  for (auto t : side.trails) {
    t.start = map(t.start);
    for (auto& e : t.edges) e += shift;
    out.trails.push_back(std::move(t));
  }
  return out;
}

Instance path_instance(EdgeId length) {
  if (length < 0) throw std::invalid_argument("path_instance: negative length");
  Instance out{MultiGraph(length + 1), {}};
  Trail t{0, {}};
  for (EdgeId i = 0; i < length; ++i) t.edges.push_back(out.graph.add_edge(i, i + 1));
  if (length > 0) out.trails.push_back(std::move(t));
  return out;
}

void gen_instances(const InstanceSpec& spec, const std::function<bool(const Instance&)>& sink) {
  if (spec.vertices < 1 || spec.edges < 0 || spec.count < 0) throw std::invalid_argument("gen_instances: bad bounds");
  if (spec.kind == GenKind::Exhaustive) {
    bool stop = false;
    for_each_multigraph(spec.vertices, spec.edges, spec.loops, spec.up_to_isomorphism, [&](const MultiGraph& g) {
      for_each_trail_partition(g, [&](const TrailPartition& p) {
        stop = !sink(Instance{g, p});
        return !stop;
      });
      return !stop;
    });
    return;
  }
  Rng rng(spec.seed);
  for (std::int64_t i = 0; i < spec.count; ++i) {
    Instance inst;
    switch (spec.kind) {
      case GenKind::RandomCubic:
        inst.graph = random_cubic(spec.vertices, rng);
        inst.trails = random_trails(inst.graph, rng);
        break;
      case GenKind::Random2ecc:
        inst.graph = random_two_edge_connected(spec.vertices, spec.edges, rng, spec.loops);
        inst.trails = random_trails(inst.graph, rng);
        break;
      case GenKind::MixedRandom:
        inst = spec.forced_cut_motif ? fig1_attached(spec.vertices, spec.edges, spec.directed_fraction, rng)
                                     : random_mixed(spec.vertices, spec.edges, spec.directed_fraction, rng);
        break;
      case GenKind::Exhaustive:
        break;
    }
    if (!sink(inst)) return;
  }
}

}  // namespace trailorient
