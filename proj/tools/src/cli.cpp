#include "trailorient/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "trailorient/connectivity.hpp"
#include "trailorient/generators.hpp"
#include "trailorient/io.hpp"
#include "trailorient/linear.hpp"
#include "trailorient/mixed.hpp"
#include "trailorient/naive.hpp"
#include "trailorient/oracle.hpp"

namespace trailorient::cli {
namespace {

bool load(std::istream& in, Instance& inst, std::ostream& err) {
  try {
    inst = parse_instance(in);
    return true;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return false;
  }
}

// Opens `path` ("-" is stdin) and runs fn on the stream.
template <typename Fn>
int with_input(const std::string& path, std::ostream& err, Fn&& fn) {
  if (path == "-") return fn(std::cin);
  std::ifstream file(path);
  if (!file) {
    err << "cannot open " << path << '\n';
    return kInputError;
  }
  return fn(file);
}

}  // namespace

int cmd_orient(std::istream& instance, const std::string& algo, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (!load(instance, inst, err)) return kInputError;
  if (algo != "mixed" && inst.graph.has_fixed_edges()) {
    err << "input error: directed edges need --algo mixed\n";
    return kInputError;
  }
  std::optional<Orientation> o;
  if (algo == "naive") {
    o = orient_trails(inst.graph, inst.trails);
  } else if (algo == "linear") {
    o = orient_linear(inst.graph, inst.trails);
  } else if (algo == "mixed") {
    o = orient_mixed(inst.graph, inst.trails);
  } else {
    err << "input error: unknown algorithm '" << algo << "'\n";
    return kInputError;
  }
  if (o) {
    if (const auto v = verify(inst.graph, inst.trails, *o); !v) {
      err << "self-check failed: " << v.reason << '\n';
      return kSelfCheckFailed;
    }
  }
  write_orientation(out, inst.graph, o);
  return o ? kFeasible : kInfeasible;
}

int cmd_verify(std::istream& instance, std::istream& orientation, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (!load(instance, inst, err)) return kInputError;
  std::optional<Orientation> o;
  try {
    o = parse_orientation(orientation, inst.graph);
  } catch (const ParseError& e) {
    err << "input error: orientation " << e.what() << '\n';
    return kInputError;
  }
  if (!o) {
    out << "orientation file reports INFEASIBLE\n";
    return kInfeasible;
  }
  const auto v = verify(inst.graph, inst.trails, *o);
  if (!v) {
    out << "FAIL: " << v.reason << '\n';
    return kInfeasible;
  }
  out << "OK\n";
  return kFeasible;
}

int cmd_oracle(std::istream& instance, int cap, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (!load(instance, inst, err)) return kInputError;
  std::optional<Orientation> o;
  try {
    o = brute_force_feasible(inst.graph, inst.trails, cap);
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
  write_orientation(out, inst.graph, o);
  return o ? kFeasible : kInfeasible;
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.algo != "naive" && opts.algo != "linear") {
    throw std::invalid_argument("bench: algorithm must be naive or linear");
  }
  if (opts.repeats < 1) throw std::invalid_argument("bench: repeats must be positive");
  std::vector<Instance> insts;
  for (const auto n : opts.sizes) {
    Rng rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(n));
    Instance inst;
    inst.graph = random_cubic(static_cast<VertexId>(n), rng);
    inst.trails = random_trails(inst.graph, rng);
    insts.push_back(std::move(inst));
  }

  // Rounds visit every size once, so slow phases of a shared machine hit all
  // sizes alike; the median round counts.
  std::vector<std::vector<double>> times(insts.size());
  std::vector<LinearStats> stats(insts.size());
  for (int round = 0; round < opts.repeats; ++round) {
    for (std::size_t i = 0; i < insts.size(); ++i) {
      const auto& inst = insts[i];
      const auto start = std::chrono::steady_clock::now();
      const auto o = opts.algo == "naive" ? orient_trails(inst.graph, inst.trails)
                                          : orient_linear(inst.graph, inst.trails, &stats[i]);
      const auto stop = std::chrono::steady_clock::now();
      if (!o || !verify(inst.graph, inst.trails, *o)) throw std::logic_error("bench: orientation failed verification");
      times[i].push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
  }

  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const auto n = opts.sizes[i];
    std::sort(times[i].begin(), times[i].end());
    BenchRow row;
    row.n = n;
    row.m = insts[i].graph.edge_count();
    row.wall_ms = times[i][times[i].size() / 2];
    row.ns_per_edge = row.wall_ms * 1e6 / static_cast<double>(row.m);
    row.depth = stats[i].depth();
    row.depth_bound = std::log(static_cast<double>(n)) / std::log(9.0 / 8.0) + 3;
    for (const auto& level : stats[i].levels) {
      const double frac = static_cast<double>(level.large_component_vertices) / static_cast<double>(level.vertices);
      row.large_fraction.push_back(frac);
      row.max_large_fraction = std::max(row.max_large_fraction, frac);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<BenchRow> rows;
  try {
    rows = run_bench(opts);
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    err << e.what() << '\n';
    return kSelfCheckFailed;
  }
  out << "# algo=" << opts.algo << " seed=" << opts.seed << " repeats=" << opts.repeats << " large component = "
      << LinearStats::kLargeComponent << "+ vertices, shrink bound 8/9\n";
  out << "n\tm\twall_ms\tns_per_edge\tdepth\tdepth_bound\tmax_shrink\n";
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.n << '\t' << r.m << '\t' << std::setprecision(3) << r.wall_ms << '\t' << std::setprecision(1)
        << r.ns_per_edge << '\t' << r.depth << '\t' << std::setprecision(1) << r.depth_bound << '\t'
        << std::setprecision(4) << r.max_large_fraction << '\n';
  }
  out << "# per-level shrink (vertices in large components / vertices)\n";
  out << "n\tlevel\tshrink\n";
  for (const auto& r : rows) {
    for (std::size_t l = 0; l < r.large_fraction.size(); ++l) {
      out << r.n << '\t' << l << '\t' << std::setprecision(4) << r.large_fraction[l] << '\n';
    }
  }
  return 0;
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Rng rng(opts.seed);
    Instance inst;
    if (opts.kind == "cubic") {
      inst.graph = random_cubic(static_cast<VertexId>(opts.vertices), rng);
      inst.trails = random_trails(inst.graph, rng);
    } else if (opts.kind == "fig1") {
      inst = fig1_instance();
    } else if (opts.kind == "path") {
      inst = path_instance(static_cast<EdgeId>(opts.path_length));
    } else if (opts.kind == "random-2ecc") {
      inst.graph = random_two_edge_connected(static_cast<VertexId>(opts.vertices), static_cast<EdgeId>(opts.edges), rng);
      inst.trails = random_trails(inst.graph, rng);
    } else if (opts.kind == "mixed") {
      const auto n = static_cast<VertexId>(opts.vertices);
      const auto m = static_cast<EdgeId>(opts.edges);
      inst = opts.motif ? fig1_attached(n, m, opts.directed_fraction, rng)
                        : random_mixed(n, m, opts.directed_fraction, rng);
    } else {
      err << "input error: unknown generator '" << opts.kind << "'\n";
      return kInputError;
    }
    write_instance(out, inst);
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strong trail orientations of multigraphs"};
  app.require_subcommand(1);

  std::string input = "-", orientation_path, algo = "linear";
  auto* orient = app.add_subcommand("orient", "Orient the trails of an instance");
  orient->add_option("input", input, "Instance file, - for stdin");
  orient->add_option("--algo", algo, "naive, linear or mixed")->check(CLI::IsMember({"naive", "linear", "mixed"}));

  auto* verify_cmd = app.add_subcommand("verify", "Check an orientation file against an instance");
  verify_cmd->add_option("input", input, "Instance file")->required();
  verify_cmd->add_option("orientation", orientation_path, "Orientation file")->required();

  int cap = kDefaultTrailCap;
  auto* oracle = app.add_subcommand("oracle", "Brute-force search over all trail orientations");
  oracle->add_option("input", input, "Instance file, - for stdin");
  oracle->add_option("--cap-trails", cap, "Refuse instances with more trails");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Time random cubic instances");
  bench->add_option("--sizes", bench_opts.sizes, "Vertex counts, ascending")->delimiter(',');
  bench->add_option("--seed", bench_opts.seed);
  bench->add_option("--algo", bench_opts.algo)->check(CLI::IsMember({"naive", "linear"}));
  bench->add_option("--repeats", bench_opts.repeats, "Timed runs per size; the median is reported")
      ->check(CLI::PositiveNumber);

  GenOptions gen_opts;
  bool cubic = false, fig1 = false, two_ecc = false, mixed = false;
  std::optional<std::int64_t> path;
  auto* gen = app.add_subcommand("gen", "Write a generated instance");
  gen->add_flag("--cubic", cubic, "Random cubic 2-edge-connected graph");
  gen->add_flag("--fig1", fig1, "Mixed gadget without a strong trail orientation");
  gen->add_option("--path", path, "Path with N edges");
  gen->add_flag("--random-2ecc", two_ecc, "Random 2-edge-connected multigraph");
  gen->add_flag("--mixed", mixed, "Random mixed multigraph");
  gen->add_flag("--motif", gen_opts.motif, "With --mixed: attach the gadget");
  gen->add_option("-n", gen_opts.vertices, "Vertices");
  gen->add_option("-m", gen_opts.edges, "Minimum edges");
  gen->add_option("--seed", gen_opts.seed);
  gen->add_option("--directed", gen_opts.directed_fraction, "Fraction of fixed edges for --mixed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  if (orient->parsed()) {
    return with_input(input, err, [&](std::istream& in) { return cmd_orient(in, algo, out, err); });
  }
  if (verify_cmd->parsed()) {
    return with_input(input, err, [&](std::istream& in) {
      return with_input(orientation_path, err, [&](std::istream& o) { return cmd_verify(in, o, out, err); });
    });
  }
  if (oracle->parsed()) {
    return with_input(input, err, [&](std::istream& in) { return cmd_oracle(in, cap, out, err); });
  }
  if (bench->parsed()) {
    if (!std::is_sorted(bench_opts.sizes.begin(), bench_opts.sizes.end())) {
      err << "input error: --sizes must be ascending\n";
      return kInputError;
    }
    return cmd_bench(bench_opts, out, err);
  }
  const int chosen = int{cubic} + int{fig1} + int{two_ecc} + int{mixed} + int{path.has_value()};
  if (chosen != 1) {
    err << "input error: gen needs exactly one of --cubic, --fig1, --path, --random-2ecc, --mixed\n";
    return kInputError;
  }
  if (cubic) gen_opts.kind = "cubic";
  if (fig1) gen_opts.kind = "fig1";
  if (two_ecc) gen_opts.kind = "random-2ecc";
  if (mixed) gen_opts.kind = "mixed";
  if (path) {
    gen_opts.kind = "path";
    gen_opts.path_length = *path;
  }
  return cmd_gen(gen_opts, out, err);
}

}  // namespace trailorient::cli
