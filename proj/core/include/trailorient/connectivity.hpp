#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trailorient/edge_list.hpp"
#include "trailorient/multigraph.hpp"

namespace trailorient {

using NodeId = std::int32_t;

/// Two edges whose joint removal disconnects the host graph.
struct CutPair {
  EdgeId e = kNoEdge;
  EdgeId f = kNoEdge;
  friend bool operator==(const CutPair&, const CutPair&) = default;
};

struct CactusEdge {
  NodeId a = 0;
  NodeId b = 0;
  EdgeId host_edge = kNoEdge;
  std::int32_t cycle = -1;
  std::int32_t position = -1;
};

/// Quotient of a 2-edge-connected graph by its 3-edge-connected components.
///
/// Every cactus edge is a host edge that belongs to some 2-edge cut. The
/// cactus edges are grouped into cycles; within cycle c, edge i joins
/// cycle_nodes(c)[i] to cycle_nodes(c)[(i + 1) % k]. Any two edges of one
/// cycle form a cut pair.
struct Cactus {
  std::int32_t node_count = 0;
  std::vector<NodeId> vertex_to_node;
  std::vector<std::int32_t> member_offset;
  std::vector<VertexId> members;
  std::vector<CactusEdge> edges;
  std::vector<std::int32_t> cycle_offset{0};
  std::vector<EdgeId> cycle_edge;
  std::vector<NodeId> cycle_node;
  // Per host edge record: cycle id and position, -1 for non-critical edges.
  std::vector<std::int32_t> edge_cycle;
  std::vector<std::int32_t> edge_position;

  std::span<const VertexId> node_members(NodeId c) const {
    return std::span(members).subspan(member_offset[c], member_offset[c + 1] - member_offset[c]);
  }
  std::int32_t cycle_count() const { return static_cast<std::int32_t>(cycle_offset.size()) - 1; }
  std::span<const EdgeId> cycle_edges(std::int32_t c) const {
    return std::span(cycle_edge).subspan(cycle_offset[c], cycle_offset[c + 1] - cycle_offset[c]);
  }
  std::span<const NodeId> cycle_nodes(std::int32_t c) const {
    return std::span(cycle_node).subspan(cycle_offset[c], cycle_offset[c + 1] - cycle_offset[c]);
  }
  bool is_critical(EdgeId e) const { return edge_cycle[e] >= 0; }

  /// Consecutive edge pairs of every cycle (one pair for a 2-cycle).
  std::vector<CutPair> cut_pairs() const;
};

std::vector<EdgeId> find_bridges(const MultiGraph& g, EdgeId skip = kNoEdge);
std::vector<EdgeId> find_bridges(VertexId n, std::span<const EdgeEnds> ends,
                                 std::span<const std::uint8_t> keep = {});

/// Connectivity of the underlying undirected graph, ignoring `skip`.
bool is_connected(const MultiGraph& g, EdgeId skip = kNoEdge);

/// Connected and bridgeless; a single vertex qualifies.
bool is_two_edge_connected(const MultiGraph& g, EdgeId skip = kNoEdge);
bool is_two_edge_connected(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep = {});

/// Mixed-graph strong connectivity: undirected edges are usable both ways.
bool is_strongly_connected(const MultiGraph& g, EdgeId skip = kNoEdge);

bool is_three_edge_connected(const MultiGraph& g);

/// Throws std::invalid_argument unless `h` is 2-edge connected.
Cactus three_edge_components(const MultiGraph& h);

/// Same on a flat edge list restricted to keep[e] != 0.
Cactus build_cactus(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep = {});

}  // namespace trailorient
