#include "trailorient/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace trailorient {
namespace {

// Line reader that skips blank lines and tracks line numbers.
class Lines {
 public:
  explicit Lines(std::istream& in) : in_(in) {}

  bool next(std::istringstream& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  }
  std::istringstream need(const char* what) {
    std::istringstream fields;
    if (!next(fields)) throw ParseError(number_ + 1, std::string("missing ") + what);
    return fields;
  }
  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

template <typename T>
T read_int(std::istringstream& fields, const Lines& lines, const char* what) {
  long long v = 0;
  if (!(fields >> v)) throw ParseError(lines.number(), std::string("expected ") + what);
  return static_cast<T>(v);
}

void expect_end(std::istringstream& fields, const Lines& lines) {
  std::string rest;
  if (fields >> rest) throw ParseError(lines.number(), "unexpected token '" + rest + "'");
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Lines lines(in);
  auto header = lines.need("header");
  const auto n = read_int<long long>(header, lines, "vertex count");
  const auto m = read_int<long long>(header, lines, "edge count");
  expect_end(header, lines);
  if (n < 0 || m < 0 || n > (1LL << 30) || m > (1LL << 30)) throw ParseError(lines.number(), "bad header");

  Instance inst{MultiGraph(static_cast<VertexId>(n)), {}};
  for (long long i = 0; i < m; ++i) {
    auto f = lines.need("edge line");
    const auto u = read_int<long long>(f, lines, "endpoint");
    const auto v = read_int<long long>(f, lines, "endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lines.number(), "endpoint out of range");
    EdgeState state = EdgeState::Undirected;
    std::string mark;
    if (f >> mark) {
      if (mark != "d") throw ParseError(lines.number(), "unknown edge mark '" + mark + "'");
      state = EdgeState::FixedForward;
    }
    expect_end(f, lines);
    inst.graph.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v), state);
  }

  auto count_line = lines.need("trail count");
  const auto t = read_int<long long>(count_line, lines, "trail count");
  expect_end(count_line, lines);
  if (t < 0 || t > m) throw ParseError(lines.number(), "bad trail count");
  std::vector<int> owner(static_cast<std::size_t>(m), 0);
  for (long long i = 0; i < t; ++i) {
    auto f = lines.need("trail line");
    const auto k = read_int<long long>(f, lines, "trail length");
    if (k < 1 || k > m) throw ParseError(lines.number(), "bad trail length");
    std::vector<EdgeId> edges;
    for (long long j = 0; j < k; ++j) {
      const auto e = read_int<long long>(f, lines, "edge id");
      if (e < 0 || e >= m) throw ParseError(lines.number(), "edge id out of range");
      if (!inst.graph.edge(static_cast<EdgeId>(e)).is_undirected()) {
        throw ParseError(lines.number(), "directed edge " + std::to_string(e) + " in a trail");
      }
      if (owner[e]++) throw ParseError(lines.number(), "edge " + std::to_string(e) + " used twice");
      edges.push_back(static_cast<EdgeId>(e));
    }
    expect_end(f, lines);
    auto trail = make_trail(inst.graph, std::move(edges));
    if (!trail) throw ParseError(lines.number(), "edges do not form a trail");
    inst.trails.push_back(std::move(*trail));
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(m); ++e) {
    if (inst.graph.edge(e).is_undirected() && owner[e] == 0) {
      throw ParseError(lines.number(), "undirected edge " + std::to_string(e) + " is in no trail");
    }
  }
  std::istringstream extra;
  if (lines.next(extra)) throw ParseError(lines.number(), "trailing content");
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  const auto& g = inst.graph;
  out << g.vertex_count() << ' ' << g.live_edge_count() << '\n';
  if (g.live_edge_count() != static_cast<std::size_t>(g.edge_count())) {
    throw std::invalid_argument("write_instance: graph has deleted edges");
  }
  for (const auto& rec : g.edges()) {
    out << rec.source() << ' ' << rec.target();
    if (!rec.is_undirected()) out << " d";
    out << '\n';
  }
  out << inst.trails.size() << '\n';
  for (const auto& t : inst.trails) {
    out << t.edges.size();
    for (EdgeId e : t.edges) out << ' ' << e;
    out << '\n';
  }
}

std::string instance_text(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

void write_orientation(std::ostream& out, const MultiGraph& g, const std::optional<Orientation>& o) {
  if (!o) {
    out << "INFEASIBLE\n";
    return;
  }
  out << "FEASIBLE\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (!rec.alive) continue;
    VertexId a = rec.source(), b = rec.target();
    if (rec.is_undirected() && o->has(e) && o->at(e) == Direction::Reversed) std::swap(a, b);
    out << e << ' ' << a << ' ' << b << '\n';
  }
}

std::string orientation_text(const MultiGraph& g, const std::optional<Orientation>& o) {
  std::ostringstream out;
  write_orientation(out, g, o);
  return out.str();
}

std::optional<Orientation> parse_orientation(std::istream& in, const MultiGraph& g) {
  Lines lines(in);
  auto head = lines.need("FEASIBLE or INFEASIBLE");
  std::string word;
  head >> word;
  expect_end(head, lines);
  if (word == "INFEASIBLE") {
    std::istringstream extra;
    if (lines.next(extra)) throw ParseError(lines.number(), "trailing content");
    return std::nullopt;
  }
  if (word != "FEASIBLE") throw ParseError(lines.number(), "expected FEASIBLE or INFEASIBLE");
  Orientation o(static_cast<std::size_t>(g.edge_count()));
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.edge_count()), 0);
  std::size_t count = 0;
  std::istringstream f;
  while (lines.next(f)) {
    const auto e = read_int<long long>(f, lines, "edge id");
    const auto a = read_int<long long>(f, lines, "tail");
    const auto b = read_int<long long>(f, lines, "head");
    expect_end(f, lines);
    if (e < 0 || e >= g.edge_count() || !g.edge(static_cast<EdgeId>(e)).alive) {
      throw ParseError(lines.number(), "edge id out of range");
    }
    if (seen[e]++) throw ParseError(lines.number(), "edge " + std::to_string(e) + " listed twice");
    const auto& rec = g.edge(static_cast<EdgeId>(e));
    if (a == rec.tail && b == rec.head) {
      o.set(static_cast<EdgeId>(e), Direction::Forward);
    } else if (a == rec.head && b == rec.tail) {
      o.set(static_cast<EdgeId>(e), Direction::Reversed);
    } else {
      throw ParseError(lines.number(), "endpoints do not match edge " + std::to_string(e));
    }
    ++count;
  }
  if (count != g.live_edge_count()) {
    throw ParseError(lines.number(), "expected " + std::to_string(g.live_edge_count()) + " edges, got " +
                                         std::to_string(count));
  }
  return o;
}

}  // namespace trailorient
