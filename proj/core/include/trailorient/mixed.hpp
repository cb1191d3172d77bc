#pragma once

#include <optional>
#include <vector>

#include "trailorient/multigraph.hpp"

namespace trailorient {

/// Either: G - e stays strongly connected. Forward / Reversed: G - e does not,
/// and only that direction of e keeps G strongly connected. Neither: no
/// direction does.
enum class Forcing : std::uint8_t { Either, Forward, Reversed, Neither };

struct ForcedStatus {
  EdgeId edge = kNoEdge;
  Forcing forced_direction = Forcing::Either;
};

/// Classification of every live undirected edge, in edge id order.
std::vector<ForcedStatus> forced_edges(const MultiGraph& g);

/// g is strongly connected and so is g - e for every undirected e.
bool check_robust(const MultiGraph& g);

/// Greedy trail orientation for mixed multigraphs: orient the trail of a
/// forced edge in the direction that keeps g strongly connected, otherwise
/// orient the lowest remaining trail forward. Directed edges stay as given.
/// Throws std::invalid_argument for an invalid partition.
std::optional<Orientation> orient_mixed(const MultiGraph& g, const TrailPartition& p);

}  // namespace trailorient
