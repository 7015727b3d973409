#pragma once

// Bipartite incidence graph of lattices: "lines" and the "points" where they
// meet. RP: lines are Pi^-1-modular, points unimodular. RU: lines are
// unimodular of norm inside pi_0 O_F, points Pi-modular.

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rzlab/neighbors.hpp"

namespace rzlab {

enum class VertexKind { Line, Point };

std::string to_string(VertexKind kind);

struct VertexInfo {
  VertexKind kind = VertexKind::Line;
  int ell = 0;
  bool hyperbolic = false;
  /// Number of line layers between this vertex and the base line.
  int layer = 0;
  /// Points on the outermost layer whose lines were not enumerated.
  bool frontier = false;

  bool operator==(const VertexInfo&) const = default;
};

struct FiberGraph {
  ExtKind kind = ExtKind::RP;
  int q = 0;
  int hyperbolic_ell = 0;
  int radius = 0;
  std::map<LatticeKey, VertexInfo> vertices;
  /// (line, point) pairs.
  std::set<std::pair<LatticeKey, LatticeKey>> edges;

  bool operator==(const FiberGraph&) const = default;

  std::size_t count(VertexKind kind) const;
  /// Neighbors of a vertex, sorted.
  std::vector<LatticeKey> adjacent(const LatticeKey& key) const;
};

/// Modularities of lines and points for the extension type.
int line_modularity(const Extension& ext);
int point_modularity(const Extension& ext);
/// True if lat is a line vertex for ext.
bool is_line_vertex(const Lattice& lat);

/// RP: span(e1, Pi^-1 e2). RU: O_E^2. Both hyperbolic.
Lattice default_base_line(const Extension& ext);

/// Smallest field precision build_ball accepts for the radius.
int required_precision(const Extension& ext, int radius);

/// Breadth-first ball: radius 0 is the base line with its q+1 points; each
/// further layer adds the lines through the previous points and their
/// points. Layers are expanded on `jobs` threads and merged in key order,
/// so the result does not depend on `jobs`.
FiberGraph build_ball(const Lattice& base, int radius, int jobs = 1);

/// Induced subgraph on hyperbolic vertices.
FiberGraph hyperbolic_core(const FiberGraph& g);

struct TailInfo {
  /// The smallest hyperbolic neighbor; see `attachments` for how many.
  LatticeKey attachment;
  int attachments = 0;
  int lines = 0;
  int points = 0;
  /// hyperbolic_ell minus the smallest norm exponent in the component.
  int max_drop = 0;
  /// False if the component reaches an unexpanded frontier point.
  bool closed = true;
};

/// Connected components of the non-hyperbolic subgraph, sorted by
/// attachment then smallest key. With require_closed, a component touching
/// the frontier raises TruncatedTail.
std::vector<TailInfo> tails_report(const FiberGraph& g, bool require_closed = false);

struct ClassKey {
  VertexKind kind;
  int ell;
  bool hyperbolic;
  auto operator<=>(const ClassKey&) const = default;
};

struct GraphStats {
  std::map<ClassKey, int> vertices;
  /// Degree histogram per class over fully expanded vertices.
  std::map<ClassKey, std::map<int, int>> degrees;
  std::size_t edges = 0;
  int frontier = 0;
};

GraphStats graph_stats(const FiberGraph& g);

void write_dot(std::ostream& os, const FiberGraph& g);
void write_json(std::ostream& os, const FiberGraph& g);
/// Inverse of write_json. Raises FormatError.
FiberGraph read_json(std::istream& is);

}  // namespace rzlab
