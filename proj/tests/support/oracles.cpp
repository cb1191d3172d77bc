#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <string>
#include <thread>

namespace oracle {

int components(const MultiGraph& g, const std::set<EdgeId>& skip) {
  const VertexId n = g.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& rec = g.edge(e);
        if (!rec.alive || skip.count(e)) continue;
        VertexId w = -1;
        if (rec.tail == v) w = rec.head;
        else if (rec.head == v) w = rec.tail;
        if (w >= 0 && comp[w] < 0) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return count;
}

std::set<EdgeId> bridges(const MultiGraph& g) {
  std::set<EdgeId> out;
  const int base = components(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).alive && components(g, {e}) > base) out.insert(e);
  }
  return out;
}

bool two_edge_connected(const MultiGraph& g) {
  return g.vertex_count() > 0 && components(g) == 1 && bridges(g).empty();
}

int edge_connectivity(const MultiGraph& g, VertexId u, VertexId v) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (const auto& rec : g.edges()) {
    if (!rec.alive || rec.is_loop()) continue;
    ++cap[rec.tail][rec.head];
    ++cap[rec.head][rec.tail];
  }
  int flow = 0;
  while (true) {
    std::vector<int> prev(n, -1);
    prev[u] = u;
    std::queue<int> q;
    q.push(u);
    while (!q.empty() && prev[v] < 0) {
      const int x = q.front();
      q.pop();
      for (std::size_t y = 0; y < n; ++y) {
        if (prev[y] < 0 && cap[x][y] > 0) {
          prev[y] = x;
          q.push(static_cast<int>(y));
        }
      }
    }
    if (prev[v] < 0) return flow;
    for (int y = v; y != u; y = prev[y]) {
      --cap[prev[y]][y];
      ++cap[y][prev[y]];
    }
    ++flow;
  }
}

std::vector<int> three_edge_classes(const MultiGraph& g) {
  const VertexId n = g.vertex_count();
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (cls[v] >= 0) continue;
    cls[v] = next;
    for (VertexId w = v + 1; w < n; ++w) {
      if (cls[w] < 0 && edge_connectivity(g, v, w) >= 3) cls[w] = next;
    }
    ++next;
  }
  return cls;
}

std::vector<std::pair<EdgeId, EdgeId>> two_cuts(const MultiGraph& g) {
  std::vector<std::pair<EdgeId, EdgeId>> out;
  const int base = components(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!g.edge(e).alive || components(g, {e}) > base) continue;
    for (EdgeId f = e + 1; f < g.edge_count(); ++f) {
      if (!g.edge(f).alive || components(g, {f}) > base) continue;
      if (components(g, {e, f}) > base) out.emplace_back(e, f);
    }
  }
  return out;
}

bool strongly_connected(const MultiGraph& g, EdgeId skip) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (n == 0) return false;
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v) reach[v][v] = 1;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive || e == skip) continue;
    if (rec.is_undirected()) {
      reach[rec.tail][rec.head] = reach[rec.head][rec.tail] = 1;
    } else {
      reach[rec.source()][rec.target()] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) reach[i][j] |= reach[k][j];
    }
  }
  for (const auto& row : reach) {
    if (std::find(row.begin(), row.end(), 0) != row.end()) return false;
  }
  return true;
}

std::vector<int> degrees(const MultiGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& rec : g.edges()) {
    if (!rec.alive) continue;
    ++deg[rec.tail];
    ++deg[rec.head];
  }
  return deg;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("TRAIL_ORIENT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(thread_cap(), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace oracle
