#pragma once

#include <optional>
#include <string>

#include "trailorient/multigraph.hpp"

namespace trailorient {

/// Outcome of checking a proposed strong trail orientation.
struct Verdict {
  bool pass = true;
  std::string reason;  // first violated check, empty on pass
  explicit operator bool() const { return pass; }
};

/// Checks that `o` orients every undirected edge, agrees with every directed
/// edge it mentions, runs each trail one way, and yields a strongly connected
/// digraph. Uses plain reachability only.
Verdict verify(const MultiGraph& g, const TrailPartition& p, const Orientation& o);

inline constexpr int kDefaultTrailCap = 20;

/// Tries all 2^t orientations of the trails and returns the first that
/// passes verify, nullopt if none does. Throws std::invalid_argument when
/// t exceeds `cap`.
std::optional<Orientation> brute_force_feasible(const MultiGraph& g, const TrailPartition& p,
                                                int cap = kDefaultTrailCap);

}  // namespace trailorient
