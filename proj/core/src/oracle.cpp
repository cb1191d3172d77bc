#include "trailorient/oracle.hpp"

#include <stdexcept>
#include <vector>

namespace trailorient {
namespace {

struct Arc {
  VertexId from, to;
};

bool reaches_all(VertexId n, const std::vector<Arc>& arcs, bool backward) {
  std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(n));
  for (const auto& a : arcs) {
    if (backward) {
      adj[a.to].push_back(a.from);
    } else {
      adj[a.from].push_back(a.to);
    }
  }
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  VertexId count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

bool strongly_connected(VertexId n, const std::vector<Arc>& arcs) {
  if (n <= 1) return true;
  return reaches_all(n, arcs, false) && reaches_all(n, arcs, true);
}

// Bitmask reachability for graphs with at most 64 vertices.
bool strongly_connected_small(VertexId n, const std::uint64_t* out, const std::uint64_t* in) {
  if (n <= 1) return true;
  const std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;
  for (const std::uint64_t* adj : {out, in}) {
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[__builtin_ctzll(f)];
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen != all) return false;
  }
  return true;
}

std::string edge_text(EdgeId e) { return "edge " + std::to_string(e); }

}  // namespace

Verdict verify(const MultiGraph& g, const TrailPartition& p, const Orientation& o) {
  if (const auto check = validate_trails(g, p); !check) return {false, "invalid trail partition: " + check.message};
  std::vector<Arc> arcs;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive) continue;
    if (rec.is_undirected()) {
      if (!o.has(e)) return {false, edge_text(e) + " is not oriented"};
      const bool fwd = o.at(e) == Direction::Forward;
      arcs.push_back(fwd ? Arc{rec.tail, rec.head} : Arc{rec.head, rec.tail});
    } else {
      const Direction fixed = rec.state == EdgeState::OrientedReversed ? Direction::Reversed : Direction::Forward;
      if (o.has(e) && o.at(e) != fixed) return {false, edge_text(e) + " contradicts its fixed direction"};
      arcs.push_back({rec.source(), rec.target()});
    }
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& t = p[i];
    VertexId v = t.start;
    int along = -1;
    for (EdgeId e : t.edges) {
      const auto& rec = g.edge(e);
      if (!rec.is_loop()) {
        const int here = (rec.tail == v) == (o.at(e) == Direction::Forward) ? 1 : 0;
        if (along < 0) {
          along = here;
        } else if (along != here) {
          return {false, "trail " + std::to_string(i) + " is not oriented one way at " + edge_text(e)};
        }
      }
      v = rec.other(v);
    }
  }
  if (!strongly_connected(g.vertex_count(), arcs)) return {false, "not strongly connected"};
  return {};
}

std::optional<Orientation> brute_force_feasible(const MultiGraph& g, const TrailPartition& p, int cap) {
  const auto t = static_cast<int>(p.size());
  if (t > cap) {
    throw std::invalid_argument("brute_force_feasible: " + std::to_string(t) + " trails exceed the cap of " +
                                std::to_string(cap));
  }
  if (const auto check = validate_trails(g, p); !check) throw std::invalid_argument(check.message);

  // Walk direction of every trail edge; reversing a trail flips all of them.
  std::vector<std::vector<std::pair<EdgeId, Direction>>> walks(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    VertexId v = p[i].start;
    for (EdgeId e : p[i].edges) {
      const auto& rec = g.edge(e);
      walks[i].push_back({e, walk_direction(rec, v)});
      v = rec.other(v);
    }
  }
  auto build = [&](std::uint64_t mask) {
    Orientation o(static_cast<std::size_t>(g.edge_count()));
    for (std::size_t i = 0; i < walks.size(); ++i) {
      const bool rev = (mask >> i) & 1U;
      for (const auto& [e, d] : walks[i]) o.set(e, rev ? opposite(d) : d);
    }
    return o;
  };

  const VertexId n = g.vertex_count();
  if (n <= 64) {
    std::uint64_t base_out[64] = {}, base_in[64] = {};
    for (const auto& rec : g.edges()) {
      if (!rec.alive || rec.is_undirected()) continue;
      base_out[rec.source()] |= 1ULL << rec.target();
      base_in[rec.target()] |= 1ULL << rec.source();
    }
    for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
      std::uint64_t out[64], in[64];
      std::copy(base_out, base_out + n, out);
      std::copy(base_in, base_in + n, in);
      for (std::size_t i = 0; i < walks.size(); ++i) {
        const bool rev = (mask >> i) & 1U;
        for (const auto& [e, d] : walks[i]) {
          const auto& rec = g.edge(e);
          const bool fwd = (d == Direction::Forward) != rev;
          const VertexId a = fwd ? rec.tail : rec.head;
          const VertexId b = fwd ? rec.head : rec.tail;
          out[a] |= 1ULL << b;
          in[b] |= 1ULL << a;
        }
      }
      if (strongly_connected_small(n, out, in)) return build(mask);
    }
    return std::nullopt;
  }
  for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
    Orientation o = build(mask);
    if (verify(g, p, o)) return o;
  }
  return std::nullopt;
}

}  // namespace trailorient
