#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "trailorient/multigraph.hpp"

namespace trailorient {

/// Bookkeeping for one split of a graph along a two-edge cut {e, b}.
///
/// Side i holds G[V_i] plus a glue edge (u_i, w_i), where e = (u_1, u_2) and
/// b = (w_1, w_2). Each side gets one merged trail: the part of e's trail
/// ending at u_i, then the glue edge traversed u_i -> w_i, then the part of
/// b's trail starting at w_i.
struct SplitRecord {
  EdgeId cut_e = kNoEdge;
  EdgeId cut_b = kNoEdge;
  std::array<std::vector<VertexId>, 2> sides;  // parent vertex ids, ascending
  std::array<VertexId, 2> u{};                 // parent ids of e's endpoints
  std::array<VertexId, 2> w{};                 // parent ids of b's endpoints
  std::array<EdgeId, 2> glue{};                // glue edge id inside each side graph
  std::array<std::size_t, 2> merged_trail{};   // index of the merged trail in each side
  // For every parent trail: side index and trail index in that side; {-1, -1}
  // for the trails of e and b, which continue in the merged trails.
  std::vector<std::array<std::int32_t, 2>> trail_home;
};

struct SplitResult {
  std::array<MultiGraph, 2> graphs;
  std::array<TrailPartition, 2> trails;
  std::array<std::vector<EdgeId>, 2> parent_edge;  // side edge -> parent edge, kNoEdge for glue
  SplitRecord record;
};

/// Lowest-id live edge that is first or last in its trail.
/// Throws std::invalid_argument when the graph has no edges.
EdgeId pick_end_edge(const MultiGraph& g, const TrailPartition& p);

/// Splits (g, p) along {e, b} where b is the lowest-id bridge of g - e.
/// Throws std::logic_error when g - e has no bridge.
SplitResult split_on_cut(const MultiGraph& g, const TrailPartition& p, EdgeId e);

/// Strong trail orientation of an undirected multigraph, built by the
/// inductive two-edge-cut construction. Returns nullopt iff g is not
/// 2-edge connected. Throws std::invalid_argument for an invalid partition or
/// a graph with directed edges.
std::optional<Orientation> orient_trails(const MultiGraph& g, const TrailPartition& p);

}  // namespace trailorient
