#pragma once

// JSON descriptors for fields and lattices, and the machine-readable reports
// shared by the command-line tool and the Python module.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rzlab/graph.hpp"
#include "rzlab/neighbors.hpp"
#include "rzlab/padic.hpp"
#include "rzlab/tangent.hpp"

namespace rzlab {

using Json = nlohmann::json;

/// {"f", "e", "eisenstein", "precision", "ext": {"kind", "t"}}. O_F elements
/// are e x f integer arrays; the Eisenstein polynomial is e+1 f-vectors.
struct FieldSpec {
  int f = 1;
  int e = 1;
  std::vector<IntPoly> eisenstein;
  int precision = kDefaultPrecision;
  IntPoly unram;  // empty selects the default
  ExtKind kind = ExtKind::RP;
  std::vector<IntPoly> t;  // RU only

  /// Default Eisenstein polynomial and t = pi_0^vt.
  static FieldSpec shorthand(int f, int e, ExtKind kind, int vt, int precision = kDefaultPrecision);
  static FieldSpec from_json(const Json& j);
  Json to_json() const;

  /// Raises the field and extension validation errors.
  std::shared_ptr<const Extension> build() const;
};

/// {"basis": [[a, b], [a, b]] per column, "shift": k} describes Pi^k times
/// the span of the columns; each entry is a + b Pi with a, b in O_F.
Lattice lattice_from_json(const Extension& ext, const Json& j);
Json lattice_to_json(const Lattice& lat);

Json of_to_json(const OF& x);
OF of_from_json(const Field& field, const Json& j);

Json describe_field(const Extension& ext);
Json classify_lattice(const Lattice& lat);
Json neighbors_json(const Lattice& lat, int from_i, int to_i);
Json props_json(const PropsReport& rep);
Json walks_json(const WalkReport& rep);
/// Discriminant, gamma relation and non-norm verdicts; "pass" summarizes.
Json quat_check(const std::shared_ptr<const Extension>& ext, int digits = 16);
Json tangent_json(const Extension& ext);
Json stats_json(const FiberGraph& g);

}  // namespace rzlab
