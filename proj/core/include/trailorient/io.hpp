#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "trailorient/generators.hpp"
#include "trailorient/multigraph.hpp"

namespace trailorient {

/// Malformed input; what() names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Instance text: "n m", m lines "u v" or "u v d" (d: fixed u -> v), "t",
/// t lines "k e_1 ... e_k". Every undirected edge lies in exactly one trail,
/// directed edges in none.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
void write_instance(std::ostream& out, const Instance& inst);
std::string instance_text(const Instance& inst);

/// Orientation text: "INFEASIBLE", or "FEASIBLE" followed by one line
/// "edge_id tail head" per edge giving its final direction.
void write_orientation(std::ostream& out, const MultiGraph& g, const std::optional<Orientation>& o);
std::string orientation_text(const MultiGraph& g, const std::optional<Orientation>& o);

/// Reads an orientation file for `g`; nullopt means INFEASIBLE.
std::optional<Orientation> parse_orientation(std::istream& in, const MultiGraph& g);

}  // namespace trailorient
