#include "trailorient/edge_list.hpp"

namespace trailorient {

Csr build_csr(VertexId n, std::span<const EdgeEnds> ends, std::span<const std::uint8_t> keep) {
  Csr csr;
  csr.offset.assign(static_cast<std::size_t>(n) + 1, 0);
  const auto m = static_cast<EdgeId>(ends.size());
  auto kept = [&](EdgeId e) { return keep.empty() || keep[e] != 0; };
  for (EdgeId e = 0; e < m; ++e) {
    if (!kept(e)) continue;
    ++csr.offset[ends[e][0] + 1];
    ++csr.offset[ends[e][1] + 1];
  }
  for (VertexId v = 0; v < n; ++v) csr.offset[v + 1] += csr.offset[v];
  csr.edge.resize(static_cast<std::size_t>(csr.offset[n]));
  csr.slot.resize(csr.edge.size());
  csr.other.resize(csr.edge.size());
  std::vector<std::int32_t> fill(csr.offset.begin(), csr.offset.end() - 1);
  for (EdgeId e = 0; e < m; ++e) {
    if (!kept(e)) continue;
    for (std::uint8_t s = 0; s < 2; ++s) {
      const auto pos = fill[ends[e][s]]++;
      csr.edge[pos] = e;
      csr.slot[pos] = s;
      csr.other[pos] = ends[e][1 - s];
    }
  }
  return csr;
}

FlatGraph flatten(const MultiGraph& g) {
  FlatGraph f;
  f.n = g.vertex_count();
  f.ends.reserve(static_cast<std::size_t>(g.edge_count()));
  f.alive.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const auto& rec : g.edges()) {
    f.ends.push_back({rec.tail, rec.head});
    f.alive.push_back(rec.alive ? 1 : 0);
  }
  return f;
}

}  // namespace trailorient
