#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace trailorient::cli {

enum ExitCode : int { kFeasible = 0, kInfeasible = 1, kInputError = 2, kSelfCheckFailed = 3 };

int cmd_orient(std::istream& instance, const std::string& algo, std::ostream& out, std::ostream& err);
int cmd_verify(std::istream& instance, std::istream& orientation, std::ostream& out, std::ostream& err);
int cmd_oracle(std::istream& instance, int cap, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<std::int64_t> sizes{10000, 100000, 1000000};
  std::uint64_t seed = 1;
  std::string algo = "linear";
  int repeats = 3;
};

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double wall_ms = 0;  // median over repeats
  double ns_per_edge = 0;
  int depth = 0;
  double depth_bound = 0;        // log_{9/8}(n) + 3
  double max_large_fraction = 0;  // over levels: vertices in components >= 10 / vertices
  std::vector<double> large_fraction;
};

/// Orients one random cubic instance per size `repeats` times and reports
/// timing and recursion shape.
std::vector<BenchRow> run_bench(const BenchOptions& opts);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string kind = "cubic";  // cubic | fig1 | path | random-2ecc | mixed
  std::int64_t vertices = 1000;
  std::int64_t edges = 0;
  std::int64_t path_length = 2;
  std::uint64_t seed = 1;
  double directed_fraction = 0.3;
  bool motif = false;
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

/// Full command line: trail-orient <orient|verify|bench|gen|oracle> ...
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trailorient::cli
