#pragma once

// Flat graph views used by the hot paths. Edge ids are indices into `ends`.

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "trailorient/multigraph.hpp"

namespace trailorient {

using EdgeEnds = std::array<VertexId, 2>;

/// Compressed adjacency: for vertex v, entries [offset[v], offset[v+1]) of
/// `edge` / `slot` list the incident edge ends.
struct Csr {
  std::vector<std::int32_t> offset;
  std::vector<EdgeId> edge;
  std::vector<std::uint8_t> slot;
  std::vector<VertexId> other;  // endpoint opposite to the slot

  std::int32_t begin(VertexId v) const { return offset[v]; }
  std::int32_t end(VertexId v) const { return offset[v + 1]; }
};

/// Builds the adjacency of the edges with keep[e] != 0 (all edges if keep is empty).
Csr build_csr(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep = {});

/// Endpoints of every edge record of `g`, plus a liveness mask.
struct FlatGraph {
  VertexId n = 0;
  std::vector<EdgeEnds> ends;
  std::vector<std::uint8_t> alive;
};

FlatGraph flatten(const MultiGraph& g);

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace trailorient
