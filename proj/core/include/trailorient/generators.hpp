#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "trailorient/multigraph.hpp"

namespace trailorient {

struct Instance {
  MultiGraph graph;
  TrailPartition trails;
};

using Rng = std::mt19937_64;

/// Uniform draw in [0, bound); same sequence on every platform.
std::uint64_t draw_below(Rng& rng, std::uint64_t bound);

enum class GenKind { Exhaustive, RandomCubic, Random2ecc, MixedRandom };

struct InstanceSpec {
  GenKind kind = GenKind::Random2ecc;
  VertexId vertices = 8;  // bound for exhaustive, exact for random kinds
  EdgeId edges = 12;      // bound for exhaustive, minimum for random-2ecc and mixed
  std::uint64_t seed = 1;
  std::int64_t count = 1;  // instances per random run
  bool loops = false;
  bool up_to_isomorphism = false;
  double directed_fraction = 0.3;
  bool forced_cut_motif = false;  // mixed: include the trail gadget that cannot be oriented
};

/// Streams instances until `sink` returns false. Exhaustive mode pairs every
/// connected multigraph within the bounds with every trail partition.
/// Throws std::invalid_argument for impossible bounds.
void gen_instances(const InstanceSpec& spec, const std::function<bool(const Instance&)>& sink);

/// Connected multigraphs with 1..max_n vertices and at most max_m edges, one
/// labelled copy each (or one per isomorphism class).
void for_each_multigraph(VertexId max_n, EdgeId max_m, bool loops, bool up_to_isomorphism,
                         const std::function<bool(const MultiGraph&)>& fn);

/// Every partition of the live undirected edges into trails, each exactly
/// once. A closed trail starts at the tail of its lowest edge.
void for_each_trail_partition(const MultiGraph& g, const std::function<bool(const TrailPartition&)>& fn);

/// Every way to leave each edge undirected or fix it in one of two directions.
void for_each_direction_pattern(const MultiGraph& g, const std::function<bool(const MultiGraph&)>& fn);

/// Partition of the undirected edges into maximal random trails.
TrailPartition random_trails(const MultiGraph& g, Rng& rng);

/// Random cubic multigraph without loops, certified 2-edge connected. n even.
MultiGraph random_cubic(VertexId n, Rng& rng);

/// Random 2-edge-connected multigraph grown from ears, with at least m edges.
MultiGraph random_two_edge_connected(VertexId n, EdgeId m, Rng& rng, bool loops = false);

/// Random connected multigraph with exactly m >= n - 1 edges.
MultiGraph random_connected(VertexId n, EdgeId m, Rng& rng, bool loops = false);

/// Random 2-edge-connected mixed multigraph; each edge is fixed in a random
/// direction with probability `directed_fraction`.
Instance random_mixed(VertexId n, EdgeId m, double directed_fraction, Rng& rng);

/// Five vertices a..e = 0..4: trail a-b-c, fixed edges a->d->b and c->e->b.
/// Strongly connected and bridgeless, but no orientation of the trail works.
Instance fig1_instance();

/// The gadget above sharing vertex b with a random strongly connected mixed graph.
Instance fig1_attached(VertexId extra_vertices, EdgeId extra_edges, double directed_fraction, Rng& rng);

/// Path with `length` edges as a single trail.
Instance path_instance(EdgeId length);

}  // namespace trailorient
