#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trailorient {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;

enum class EdgeState : std::uint8_t {
  Undirected,
  FixedForward,
  OrientedForward,
  OrientedReversed,
};

/// Direction of an edge relative to its stored (tail, head) order.
enum class Direction : std::uint8_t { Forward, Reversed };

constexpr Direction opposite(Direction d) {
  return d == Direction::Forward ? Direction::Reversed : Direction::Forward;
}

struct EdgeRecord {
  VertexId tail = 0;
  VertexId head = 0;
  EdgeState state = EdgeState::Undirected;
  bool alive = true;

  bool is_loop() const { return tail == head; }
  bool is_undirected() const { return state == EdgeState::Undirected; }
  VertexId other(VertexId v) const { return v == tail ? head : tail; }

  // Arc actually realised by the edge, if it has a direction.
  VertexId source() const { return state == EdgeState::OrientedReversed ? head : tail; }
  VertexId target() const { return state == EdgeState::OrientedReversed ? tail : head; }
};

/// One end of an edge at a vertex. slot 0 is the tail end, slot 1 the head end.
struct Incidence {
  EdgeId edge;
  std::uint8_t slot;
};

/// Mixed multigraph with stable edge ids. Deleted edges keep their record
/// (alive == false) and vanish from the incidence lists.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(VertexId vertex_count);

  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v, EdgeState state = EdgeState::Undirected);
  void remove_edge(EdgeId e);
  void set_state(EdgeId e, EdgeState state);

  VertexId vertex_count() const { return static_cast<VertexId>(adjacency_.size()); }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  std::size_t live_edge_count() const { return live_edges_; }

  const EdgeRecord& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const EdgeRecord> edges() const { return edges_; }
  std::span<const Incidence> incident(VertexId v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  std::size_t degree(VertexId v) const { return incident(v).size(); }

  bool valid_vertex(VertexId v) const { return v >= 0 && v < vertex_count(); }
  bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }
  bool has_fixed_edges() const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b);

 private:
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::size_t live_edges_ = 0;
};

/// A trail given by its starting vertex and its edges in walk order.
struct Trail {
  VertexId start = 0;
  std::vector<EdgeId> edges;

  friend bool operator==(const Trail&, const Trail&) = default;
};

using TrailPartition = std::vector<Trail>;

/// Per-edge direction assignment, possibly partial.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::size_t edge_count) : dir_(edge_count, kUnset) {}

  std::size_t size() const { return dir_.size(); }
  void resize(std::size_t edge_count) { dir_.resize(edge_count, kUnset); }

  bool has(EdgeId e) const { return e >= 0 && static_cast<std::size_t>(e) < dir_.size() && dir_[e] != kUnset; }
  std::optional<Direction> get(EdgeId e) const {
    if (!has(e)) return std::nullopt;
    return static_cast<Direction>(dir_[e]);
  }
  Direction at(EdgeId e) const { return static_cast<Direction>(dir_.at(e)); }
  void set(EdgeId e, Direction d);
  void clear(EdgeId e) { dir_.at(e) = kUnset; }
  std::size_t assigned_count() const;

  friend bool operator==(const Orientation&, const Orientation&) = default;

 private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> dir_;
};

Orientation reverse_all(Orientation o);

/// Direction an edge gets when a walk traverses it leaving vertex `from`.
inline Direction walk_direction(const EdgeRecord& e, VertexId from) {
  return e.tail == from ? Direction::Forward : Direction::Reversed;
}

struct TrailCheck {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Vertex sequence v0..vk of the trail's walk; throws std::invalid_argument
/// if consecutive edges do not share the connecting vertex.
std::vector<VertexId> trail_walk(const MultiGraph& g, const Trail& t);

/// Builds a trail from an edge sequence, choosing the start vertex that makes
/// it a valid walk (the tail of the first edge when both work).
std::optional<Trail> make_trail(const MultiGraph& g, std::vector<EdgeId> edges);

/// True iff `p` partitions the live undirected edges of `g` into trails.
TrailCheck validate_trails(const MultiGraph& g, const TrailPartition& p);

/// Within each trail all assigned non-loop edges follow one traversal direction.
TrailCheck check_trail_consistency(const MultiGraph& g, const TrailPartition& p,
                                   const Orientation& o);

/// Orientation obtained by traversing every trail forward (or backward).
Orientation orient_along(const MultiGraph& g, const TrailPartition& p,
                         std::span<const bool> reversed_trails = {});

/// Copy of `g` with the assigned undirected edges oriented.
/// Throws std::invalid_argument for assignments on fixed or dead edges.
MultiGraph apply_orientation(const MultiGraph& g, const Orientation& o);

struct Contraction {
  MultiGraph graph;
  std::vector<VertexId> vertex_map;  // old vertex -> new vertex
};

/// Collapses `block` to one vertex. Edges inside the block are dropped (kept as
/// dead records) so surviving edges keep their ids.
Contraction contract(const MultiGraph& g, std::span<const VertexId> block);

}  // namespace trailorient
