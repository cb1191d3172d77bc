// Acceptance sweeps. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Arguments: criterion numbers to run (default all),
// and --cli PATH to also check determinism across separate processes.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/cactus_checks.hpp"
#include "support/oracles.hpp"
#include "trailorient/cli.hpp"
#include "trailorient/connectivity.hpp"
#include "trailorient/generators.hpp"
#include "trailorient/io.hpp"
#include "trailorient/linear.hpp"
#include "trailorient/mixed.hpp"
#include "trailorient/naive.hpp"
#include "trailorient/oracle.hpp"

using namespace trailorient;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Thread-safe failure tally that keeps the first few descriptions.
class Failures {
 public:
  void add(const std::string& what) {
    ++count_;
    std::lock_guard<std::mutex> lock(mu_);
    if (examples_.size() < 3) examples_.push_back(what);
  }
  long count() const { return count_; }
  std::string summary() const {
    std::string s = std::to_string(count_.load()) + " failures";
    for (const auto& e : examples_) s += "; " + e;
    return s;
  }

 private:
  std::atomic<long> count_{0};
  std::mutex mu_;
  std::vector<std::string> examples_;
};

std::string describe(const MultiGraph& g, const TrailPartition& p) {
  Instance inst{g, p};
  std::string text = instance_text(inst);
  std::replace(text.begin(), text.end(), '\n', '|');
  return text;
}

std::vector<MultiGraph> collect_graphs(VertexId n, EdgeId m, bool loops) {
  std::vector<MultiGraph> out;
  for_each_multigraph(n, m, loops, true, [&](const MultiGraph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

// Undirected instance: both algorithms answer exactly when the oracle says
// 2-edge connected, and their answers verify.
void check_undirected(const MultiGraph& g, const TrailPartition& p, bool two_ec, Failures& fails) {
  const auto naive = orient_trails(g, p);
  const auto linear = orient_linear(g, p);
  if (naive.has_value() != two_ec) fails.add("naive feasibility wrong on " + describe(g, p));
  if (linear.has_value() != two_ec) fails.add("linear feasibility wrong on " + describe(g, p));
  if (naive && !verify(g, p, *naive)) fails.add("naive answer fails verify on " + describe(g, p));
  if (linear && !verify(g, p, *linear)) fails.add("linear answer fails verify on " + describe(g, p));
}

Outcome undirected_equivalence() {
  Failures fails;
  const auto graphs = collect_graphs(6, 8, true);
  std::atomic<long> exhaustive{0};
  oracle::parallel_for(graphs.size(), [&](std::size_t i) {
    const auto& g = graphs[i];
    const bool two_ec = oracle::two_edge_connected(g);
    for_each_trail_partition(g, [&](const TrailPartition& p) {
      ++exhaustive;
      check_undirected(g, p, two_ec, fails);
      return true;
    });
  });

  constexpr std::size_t kRandom = 10000;
  std::atomic<long> random_2ec{0};
  oracle::parallel_for(kRandom, [&](std::size_t i) {
    Rng rng(1000 + i);
    const auto n = static_cast<VertexId>(2 + draw_below(rng, 11));
    const auto m = static_cast<EdgeId>(n - 1 + draw_below(rng, 2 * static_cast<std::uint64_t>(n)));
    const auto g = random_connected(n, m, rng, i % 4 == 0);
    const auto p = random_trails(g, rng);
    const bool two_ec = oracle::two_edge_connected(g);
    random_2ec += two_ec;
    check_undirected(g, p, two_ec, fails);
  });

  std::ostringstream detail;
  detail << graphs.size() << " graphs, " << exhaustive << " exhaustive instances, " << kRandom << " random ("
         << random_2ec << " 2-edge connected); " << fails.summary();
  return {fails.count() == 0 && exhaustive > 0, detail.str()};
}

Outcome mixed_agreement() {
  Failures fails;
  const auto graphs = collect_graphs(5, 7, true);
  std::atomic<long> instances{0}, feasible{0};
  oracle::parallel_for(graphs.size(), [&](std::size_t i) {
    for_each_direction_pattern(graphs[i], [&](const MultiGraph& h) {
      for_each_trail_partition(h, [&](const TrailPartition& p) {
        ++instances;
        const auto greedy = orient_mixed(h, p);
        const auto brute = brute_force_feasible(h, p);
        feasible += brute.has_value();
        if (greedy.has_value() != brute.has_value()) {
          fails.add(std::string(greedy ? "greedy feasible, brute force not" : "brute force feasible, greedy not") +
                    " on " + describe(h, p));
        }
        if (greedy && !verify(h, p, *greedy)) fails.add("greedy answer fails verify on " + describe(h, p));
        return true;
      });
      return true;
    });
  });
  std::ostringstream detail;
  detail << instances << " instances (" << feasible << " feasible); " << fails.summary();
  return {fails.count() == 0 && instances > 0, detail.str()};
}

Outcome fig1_counterexample() {
  std::ostringstream gen_out, gen_err;
  const char* argv[] = {"trail-orient", "gen", "--fig1"};
  if (cli::run(3, argv, gen_out, gen_err) != 0) return {false, "gen --fig1 failed: " + gen_err.str()};
  const auto inst = parse_instance_text(gen_out.str());
  const auto& g = inst.graph;

  const bool strong = is_strongly_connected(g) && oracle::strongly_connected(g);
  const bool bridgeless = oracle::two_edge_connected(g) && is_two_edge_connected(g);
  const auto greedy = orient_mixed(g, inst.trails);
  const auto brute = brute_force_feasible(g, inst.trails);

  std::istringstream in(gen_out.str());
  std::ostringstream out, err;
  const int code = cli::cmd_orient(in, "mixed", out, err);

  std::ostringstream detail;
  detail << "strongly connected=" << strong << " bridgeless=" << bridgeless << " orient_mixed="
         << (greedy ? "FEASIBLE" : "INFEASIBLE") << " oracle=" << (brute ? "FEASIBLE" : "INFEASIBLE")
         << " cli exit=" << code;
  const bool pass = strong && bridgeless && !greedy && !brute && code == cli::kInfeasible && out.str() == "INFEASIBLE\n";
  return {pass, detail.str()};
}

bool oracle_robust(const MultiGraph& g) {
  if (!oracle::strongly_connected(g)) return false;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& rec = g.edge(e);
    if (rec.alive && rec.is_undirected() && !oracle::strongly_connected(g, e)) return false;
  }
  return true;
}

Outcome robust_extension() {
  constexpr std::size_t kWanted = 1000;
  Failures fails;
  std::vector<Instance> pool;
  long drawn = 0;
  for (std::uint64_t seed = 0; pool.size() < kWanted; ++seed) {
    Rng rng(50000 + seed);
    const auto n = static_cast<VertexId>(4 + draw_below(rng, 9));
    const auto m = static_cast<EdgeId>(n + 2 + draw_below(rng, 2 * static_cast<std::uint64_t>(n)));
    auto inst = random_mixed(n, m, 0.2, rng);
    ++drawn;
    const bool robust = check_robust(inst.graph);
    if (robust != oracle_robust(inst.graph)) fails.add("check_robust disagrees with deletion on " + describe(inst.graph, inst.trails));
    if (robust) pool.push_back(std::move(inst));
  }

  std::atomic<long> extensions{0}, missed{0}, absent{0};
  oracle::parallel_for(pool.size(), [&](std::size_t i) {
    const auto& g = pool[i].graph;
    TrailPartition singles;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.edge(e).is_undirected()) singles.push_back(Trail{g.edge(e).tail, {e}});
    }
    for (const auto* partition : {&pool[i].trails, &singles}) {
      const auto& p = *partition;
      for (std::size_t t = 0; t < p.size(); ++t) {
        TrailPartition rest;
        for (std::size_t u = 0; u < p.size(); ++u) {
          if (u != t) rest.push_back(p[u]);
        }
        for (const bool flip : {false, true}) {
          ++extensions;
          const bool flips[] = {flip};
          const auto fixed = orient_along(g, TrailPartition{p[t]}, flips);
          MultiGraph w = g;
          for (EdgeId e : p[t].edges) {
            w.set_state(e, fixed.at(e) == Direction::Forward ? EdgeState::OrientedForward : EdgeState::OrientedReversed);
          }
          const auto ext = orient_mixed(w, rest);
          if (!ext) {
            if (rest.size() > static_cast<std::size_t>(kDefaultTrailCap)) {
              fails.add("orient_mixed found no extension, too many trails to confirm, on " + describe(g, p));
            } else if (brute_force_feasible(w, rest)) {
              ++missed;
              fails.add("extension exists but orient_mixed found none, trail " + std::to_string(t) + " on " + describe(g, p));
            } else {
              ++absent;
              fails.add("no extension of trail " + std::to_string(t) + " exists on " + describe(g, p));
            }
            continue;
          }
          Orientation full = *ext;
          for (EdgeId e : p[t].edges) full.set(e, fixed.at(e));
          if (!verify(g, p, full)) fails.add("extension fails verify on " + describe(g, p));
        }
      }
    }
  });
  std::ostringstream detail;
  detail << pool.size() << " robust instances out of " << drawn << " drawn, " << extensions
         << " trail orientations over drawn and all-singleton partitions (" << missed << " missed by greedy, "
         << absent << " without any extension); " << fails.summary();
  return {fails.count() == 0, detail.str()};
}

Outcome cubic_reduction_counts() {
  constexpr std::size_t kInstances = 1000;
  Failures fails;
  std::atomic<long> edges{0};
  oracle::parallel_for(kInstances, [&](std::size_t i) {
    Rng rng(70000 + i);
    const auto n = static_cast<VertexId>(2 + draw_below(rng, 29));
    const auto m = static_cast<EdgeId>(n + draw_below(rng, 2 * static_cast<std::uint64_t>(n) + 1));
    const auto g = random_two_edge_connected(n, m, rng, i % 3 == 0);
    const auto p = random_trails(g, rng);
    const auto r = reduce_to_cubic(g, p);
    const std::int64_t mm = g.live_edge_count();
    edges += mm;
    const auto deg = oracle::degrees(r.graph);
    if (r.graph.vertex_count() != 2 * mm) fails.add("vertex count " + std::to_string(r.graph.vertex_count()) + " for m=" + std::to_string(mm));
    if (static_cast<std::int64_t>(r.graph.live_edge_count()) != 3 * mm) fails.add("edge count " + std::to_string(r.graph.live_edge_count()) + " for m=" + std::to_string(mm));
    if (!std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; })) fails.add("degree other than 3 on " + describe(g, p));
    if (!validate_trails(r.graph, r.trails)) fails.add("reduced trails invalid on " + describe(g, p));
    const auto o = orient_trails(r.graph, r.trails);
    if (!o) {
      fails.add("reduced instance infeasible on " + describe(g, p));
      return;
    }
    if (!verify(g, p, pull_back(r, *o))) fails.add("pull-back fails verify on " + describe(g, p));
  });
  std::ostringstream detail;
  detail << kInstances << " instances, " << edges << " edges; " << fails.summary();
  return {fails.count() == 0, detail.str()};
}

Outcome level_bounds() {
  constexpr std::size_t kInstances = 1000;
  Failures fails;
  std::mutex mu;
  double min_component_ratio = 1e9, max_large_fraction = 0;
  int max_depth = 0;
  oracle::parallel_for(kInstances, [&](std::size_t i) {
    Rng rng(90000 + i);
    const auto n = static_cast<VertexId>(2 * (50 + draw_below(rng, 1951)));
    const auto g = random_cubic(n, rng);
    const auto p = random_trails(g, rng);

    LinearStats stats;
    const auto o = orient_linear(g, p, &stats);
    if (!o || !verify(g, p, *o)) fails.add("orient_linear failed on cubic instance " + std::to_string(i));
    for (int l = 0; l < stats.depth(); ++l) {
      const auto& ls = stats.levels[static_cast<std::size_t>(l)];
      if (ls.component_bound_misses) fails.add("component bound missed at level " + std::to_string(l) + " of instance " + std::to_string(i));
      if (ls.mass_bound_misses) fails.add("mass bound missed at level " + std::to_string(l) + " of instance " + std::to_string(i));
    }

    // Top level recomputed through the public pieces.
    const auto tree = trail_spanning_tree(g, p);
    const auto sub = minimal_2ecc_subgraph(g, tree);
    const auto cactus = three_edge_components(sub.graph);
    const std::int64_t non_tree = g.live_edge_count() - static_cast<std::int64_t>(tree.size());
    std::vector<std::int64_t> size(static_cast<std::size_t>(cactus.node_count), 0);
    for (VertexId v = 0; v < n; ++v) ++size[cactus.vertex_to_node[v]];
    std::int64_t large = 0;
    for (auto s : size) large += s >= LinearStats::kLargeComponent ? s : 0;
    if (5 * static_cast<std::int64_t>(cactus.node_count) < 2 * non_tree) fails.add("fewer than 2/5 |X| components in instance " + std::to_string(i));
    if (9 * large >= 8 * static_cast<std::int64_t>(n)) fails.add("large components hold 8/9 of the vertices in instance " + std::to_string(i));

    std::lock_guard<std::mutex> lock(mu);
    min_component_ratio = std::min(min_component_ratio, static_cast<double>(cactus.node_count) / static_cast<double>(non_tree));
    max_large_fraction = std::max(max_large_fraction, static_cast<double>(large) / n);
    for (const auto& ls : stats.levels) max_large_fraction = std::max(max_large_fraction, static_cast<double>(ls.large_component_vertices) / static_cast<double>(ls.vertices));
    max_depth = std::max(max_depth, stats.depth());
  });
  std::ostringstream detail;
  detail << kInstances << " cubic instances, min components/|X| at top level " << min_component_ratio
         << " (need >= 0.4), max large-component mass " << max_large_fraction << " (need < 0.889), max depth "
         << max_depth << "; " << fails.summary();
  return {fails.count() == 0, detail.str()};
}

// Cactus shape, max-flow partition, and 2-cuts lying on one cycle.
void check_cactus(const MultiGraph& g, bool with_flow, Failures& fails) {
  const auto c = three_edge_components(g);
  if (const auto problem = oracle::cactus_shape_problem(g, c); !problem.empty()) {
    fails.add(problem + " on " + describe(g, {}));
    return;
  }
  if (!with_flow) return;
  if (!oracle::same_partition(c.vertex_to_node, oracle::three_edge_classes(g))) {
    fails.add("partition differs from max-flow classes on " + describe(g, {}));
  }
  std::vector<std::int32_t> cycle_of(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::int32_t cy = 0; cy < c.cycle_count(); ++cy) {
    for (EdgeId e : c.cycle_edges(cy)) cycle_of[e] = cy;
  }
  for (const auto& [e, f] : oracle::two_cuts(g)) {
    if (cycle_of[e] < 0 || cycle_of[e] != cycle_of[f]) fails.add("2-cut not on one cactus cycle on " + describe(g, {}));
  }
}

Outcome cactus_suite() {
  Failures fails;
  const auto graphs = collect_graphs(5, 7, true);
  std::atomic<long> exhaustive{0};
  oracle::parallel_for(graphs.size(), [&](std::size_t i) {
    if (!oracle::two_edge_connected(graphs[i])) return;
    ++exhaustive;
    check_cactus(graphs[i], true, fails);
  });

  constexpr std::size_t kSmall = 3000, kLarge = 200;
  oracle::parallel_for(kSmall + kLarge, [&](std::size_t i) {
    Rng rng(110000 + i);
    const bool small = i < kSmall;
    const auto n = static_cast<VertexId>(small ? 2 + draw_below(rng, 9) : 20 + draw_below(rng, 300));
    const auto m = static_cast<EdgeId>(n + draw_below(rng, 2 * static_cast<std::uint64_t>(n)));
    check_cactus(random_two_edge_connected(n, m, rng, i % 3 == 0), small, fails);
  });
  std::ostringstream detail;
  detail << exhaustive << " exhaustive 2-edge-connected graphs, " << kSmall << " random with max-flow, " << kLarge
         << " larger random; " << fails.summary();
  return {fails.count() == 0 && exhaustive > 0, detail.str()};
}

Outcome scaling() {
  cli::BenchOptions opts;
  opts.sizes = {10000, 100000, 1000000};
  const auto rows = cli::run_bench(opts);
  double lo = 1e300, hi = 0;
  bool depth_ok = true;
  std::ostringstream detail;
  detail.setf(std::ios::fixed);
  detail.precision(1);
  for (const auto& r : rows) {
    lo = std::min(lo, r.ns_per_edge);
    hi = std::max(hi, r.ns_per_edge);
    depth_ok = depth_ok && r.depth <= r.depth_bound;
    detail << "n=" << r.n << " " << r.ns_per_edge << " ns/edge depth " << r.depth << "/" << r.depth_bound << "; ";
  }
  detail.precision(2);
  detail << "per-edge ratio " << hi / lo << " (need < 2), median of " << opts.repeats << " runs";
  return {hi / lo < 2.0 && depth_ok, detail.str()};
}

std::string orient_output(const std::string& instance, const std::string& algo) {
  std::istringstream in(instance);
  std::ostringstream out, err;
  cli::cmd_orient(in, algo, out, err);
  return out.str() + err.str();
}

std::string gen_output(std::vector<const char*> args) {
  args.insert(args.begin(), "trail-orient");
  std::ostringstream out, err;
  cli::run(static_cast<int>(args.size()), args.data(), out, err);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli_path) {
  struct Case {
    std::string label, instance;
    std::vector<std::string> algos;
  };
  std::vector<Case> cases{
      {"cubic", gen_output({"gen", "--cubic", "-n", "20000", "--seed", "7"}), {"linear"}},
      {"small-cubic", gen_output({"gen", "--cubic", "-n", "2000", "--seed", "8"}), {"linear", "naive"}},
      {"random-2ecc", gen_output({"gen", "--random-2ecc", "-n", "500", "-m", "900", "--seed", "3"}), {"linear", "naive"}},
      {"path", gen_output({"gen", "--path", "5"}), {"linear", "naive"}},
      {"mixed", gen_output({"gen", "--mixed", "-n", "12", "-m", "20", "--seed", "5"}), {"mixed"}},
      {"fig1", gen_output({"gen", "--fig1"}), {"mixed"}},
  };
  Failures fails;
  int compared = 0;
  if (gen_output({"gen", "--cubic", "-n", "20000", "--seed", "7"}) != cases[0].instance) fails.add("gen output differs between runs");

  const auto dir = std::filesystem::temp_directory_path() / "trailorient_acceptance";
  if (!cli_path.empty()) std::filesystem::create_directories(dir);
  for (const auto& c : cases) {
    if (c.instance.empty()) fails.add("empty instance for " + c.label);
    const auto file = (dir / (c.label + ".txt")).string();
    if (!cli_path.empty()) std::ofstream(file, std::ios::binary) << c.instance;
    for (const auto& algo : c.algos) {
      const auto first = orient_output(c.instance, algo);
      ++compared;
      if (orient_output(c.instance, algo) != first) fails.add(c.label + "/" + algo + " differs between in-process runs");
      if (cli_path.empty()) continue;
      for (int run = 0; run < 2; ++run) {
        const auto out = (dir / (c.label + "." + algo + "." + std::to_string(run) + ".out")).string();
        const auto cmd = "\"" + cli_path + "\" orient \"" + file + "\" --algo " + algo + " > \"" + out + "\"";
        const int status = std::system(cmd.c_str());
        if (status == -1) fails.add("could not start " + cli_path);
        ++compared;
        if (read_file(out) != first) fails.add(c.label + "/" + algo + " differs in process run " + std::to_string(run));
      }
    }
  }
  std::ostringstream detail;
  detail << compared << " orientation files compared" << (cli_path.empty() ? " (in-process only)" : " (in-process and separate processes)")
         << "; " << fails.summary();
  return {fails.count() == 0, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  std::string cli_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli_path = argv[++i];
    } else {
      wanted.insert(std::stoi(a));
    }
  }

  const std::vector<Criterion> criteria{
      {1, "undirected: feasible iff 2-edge connected, answers verify", undirected_equivalence},
      {2, "mixed: greedy feasibility equals brute force", mixed_agreement},
      {3, "fig1 gadget: strongly connected, bridgeless, infeasible", fig1_counterexample},
      {4, "robust mixed graphs: every orientation of every trail extends", robust_extension},
      {5, "cubic reduction: 2m vertices, 3m edges, cubic, pull-backs verify", cubic_reduction_counts},
      {6, "recursion levels: component count and large-component mass bounds", level_bounds},
      {7, "cactus: shape, max-flow partition, 2-cuts on one cycle", cactus_suite},
      {8, "scaling: per-edge time within 2x from 1e4 to 1e6, depth bound", scaling},
      {9, "determinism: identical inputs give byte-identical orientations", [&] { return determinism(cli_path); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s [%d] %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
