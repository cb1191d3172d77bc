#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trailorient/connectivity.hpp"
#include "trailorient/multigraph.hpp"

namespace trailorient {

/// How a cubic reduction relates to the graph it came from. Original edge e
/// keeps id e; the cycle edges that replace vertices come after.
struct ReductionMap {
  std::vector<EdgeId> orig_edge_of;                    // reduced edge -> original edge or kNoEdge
  std::vector<std::vector<VertexId>> cycle_of_vertex;  // original vertex -> its cycle, in order
  std::vector<std::int32_t> trail_map;                 // reduced trail -> original trail or -1
};

struct CubicReduction {
  MultiGraph graph;
  TrailPartition trails;
  ReductionMap map;
};

/// Replaces every vertex v by a cycle of length deg(v) so that consecutive
/// edges of a trail meet at adjacent cycle vertices; the cycle edge between
/// them joins the trail. Result: 2m vertices, 3m edges, cubic.
/// Throws std::invalid_argument unless g is 2-edge connected and undirected.
CubicReduction reduce_to_cubic(const MultiGraph& g, const TrailPartition& p);

/// Restriction of an orientation of the reduced graph to the original edges.
Orientation pull_back(const CubicReduction& r, const Orientation& reduced);

/// Spanning tree containing every edge that is not first or last in its
/// trail, as sorted edge ids. Throws std::logic_error if those edges contain a
/// cycle, std::invalid_argument if g is disconnected.
std::vector<EdgeId> trail_spanning_tree(const MultiGraph& g, const TrailPartition& p);

struct MinimalSubgraph {
  MultiGraph graph;            // same ids as the input; deleted edges are dead
  std::vector<EdgeId> deleted;  // ascending
};

/// Inclusion-minimal 2-edge-connected subgraph containing `tree`: dropping
/// any kept non-tree edge creates a bridge.
/// Throws std::invalid_argument if g is not 2-edge connected.
MinimalSubgraph minimal_2ecc_subgraph(const MultiGraph& g, std::span<const EdgeId> tree);

struct ReplacedCut {
  CutPair cut;         // host edges leaving the component, in cycle order
  EdgeId gamma_edge;   // edge of the gamma graph standing for the pair
  std::int32_t cycle;  // cactus cycle and the component's position on it
  std::int32_t position;
};

/// A 3-edge-connected component with each of its 2-edge cuts closed by a new
/// edge, and the trails of the host restricted to it.
struct GammaGraph {
  MultiGraph graph;
  TrailPartition trails;
  NodeId host_component = 0;
  std::vector<VertexId> host_vertex;  // gamma vertex -> host vertex
  std::vector<EdgeId> host_edge;      // gamma edge -> host edge, kNoEdge for new edges
  std::vector<ReplacedCut> replaced_cuts;
};

/// Gamma graph of component c of h. `cactus` must come from
/// three_edge_components(h) and `p` must partition the live edges of h.
GammaGraph build_gamma(const MultiGraph& h, const TrailPartition& p, const Cactus& cactus, NodeId c);

/// Orientation of h from strong trail orientations of every non-singleton
/// gamma graph (indexed by component): each component is flipped so that
/// every cactus cycle becomes a directed cycle.
Orientation combine_components(const MultiGraph& h, const Cactus& cactus,
                               std::span<const GammaGraph> gammas,
                               std::span<const Orientation> orientations);

struct LevelStats {
  std::int64_t instances = 0;
  std::int64_t vertices = 0;
  std::int64_t non_tree_edges = 0;
  std::int64_t deleted_edges = 0;
  std::int64_t components = 0;
  std::int64_t large_component_vertices = 0;  // in components with >= kLargeComponent vertices
  std::int64_t component_bound_misses = 0;    // instances with 5 * components < 2 * non-tree edges
  std::int64_t mass_bound_misses = 0;         // instances with 9 * large mass >= 8 * vertices
};

struct LinearStats {
  static constexpr std::int64_t kLargeComponent = 10;
  std::int64_t reduced_vertices = 0;
  std::vector<LevelStats> levels;
  int depth() const { return static_cast<int>(levels.size()); }
};

/// Strong trail orientation via cubic reduction and recursion over the
/// 3-edge-connected components of a minimal 2-edge-connected subgraph.
/// Returns nullopt iff g is not 2-edge connected. Throws
/// std::invalid_argument for an invalid partition or directed edges.
std::optional<Orientation> orient_linear(const MultiGraph& g, const TrailPartition& p,
                                         LinearStats* stats = nullptr);

}  // namespace trailorient
