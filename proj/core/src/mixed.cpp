#include "trailorient/mixed.hpp"

#include <stdexcept>

#include "trailorient/connectivity.hpp"

namespace trailorient {
namespace {

EdgeState state_for(Direction d) {
  return d == Direction::Forward ? EdgeState::OrientedForward : EdgeState::OrientedReversed;
}

void set_trail(MultiGraph& g, const Trail& t, bool reversed) {
  const auto verts = trail_walk(g, t);
  for (std::size_t k = 0; k < t.edges.size(); ++k) {
    const Direction d = walk_direction(g.edge(t.edges[k]), verts[k]);
    g.set_state(t.edges[k], state_for(reversed ? opposite(d) : d));
  }
}

void clear_trail(MultiGraph& g, const Trail& t) {
  for (EdgeId e : t.edges) g.set_state(e, EdgeState::Undirected);
}

}  // namespace

std::vector<ForcedStatus> forced_edges(const MultiGraph& g) {
  MultiGraph w = g;
  std::vector<ForcedStatus> out;
  for (EdgeId e = 0; e < w.edge_count(); ++e) {
    const auto& rec = w.edge(e);
    if (!rec.alive || !rec.is_undirected()) continue;
    ForcedStatus st{e, Forcing::Either};
    if (!is_strongly_connected(w, e)) {
      w.set_state(e, EdgeState::OrientedForward);
      const bool fwd = is_strongly_connected(w);
      w.set_state(e, EdgeState::OrientedReversed);
      const bool rev = is_strongly_connected(w);
      w.set_state(e, EdgeState::Undirected);
      st.forced_direction = fwd ? Forcing::Forward : rev ? Forcing::Reversed : Forcing::Neither;
    }
    out.push_back(st);
  }
  return out;
}

bool check_robust(const MultiGraph& g) {
  if (!is_strongly_connected(g)) return false;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (rec.alive && rec.is_undirected() && !is_strongly_connected(g, e)) return false;
  }
  return true;
}

std::optional<Orientation> orient_mixed(const MultiGraph& g, const TrailPartition& p) {
  if (const auto check = validate_trails(g, p); !check) throw std::invalid_argument(check.message);
  if (!is_two_edge_connected(g) || !is_strongly_connected(g)) return std::nullopt;

  MultiGraph w = g;
  std::vector<std::int32_t> trail_of(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<std::uint8_t> done(p.size(), 0);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (EdgeId e : p[i].edges) trail_of[e] = static_cast<std::int32_t>(i);
    if (p[i].edges.empty()) {
      done[i] = 1;
    } else {
      ++remaining;
    }
  }

  for (; remaining > 0; --remaining) {
    std::int32_t forced = -1;
    for (EdgeId e = 0; e < w.edge_count() && forced < 0; ++e) {
      const auto& rec = w.edge(e);
      if (rec.alive && rec.is_undirected() && !is_strongly_connected(w, e)) forced = trail_of[e];
    }
    if (forced >= 0) {
      const Trail& t = p[forced];
      set_trail(w, t, false);
      if (!is_strongly_connected(w)) {
        clear_trail(w, t);
        set_trail(w, t, true);
        if (!is_strongly_connected(w)) return std::nullopt;
      }
      done[forced] = 1;
    } else {
      std::size_t i = 0;
      while (done[i]) ++i;
      set_trail(w, p[i], false);
      done[i] = 1;
    }
  }

  Orientation out(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive || !rec.is_undirected()) continue;
    out.set(e, w.edge(e).state == EdgeState::OrientedForward ? Direction::Forward : Direction::Reversed);
  }
  return out;
}

}  // namespace trailorient
