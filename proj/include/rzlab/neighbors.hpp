#pragma once

// Index-1 neighbors between Pi^i- and Pi^(i+-1)-modular lattices.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rzlab/lattice.hpp"

namespace rzlab {

/// Isometry class of a Pi^i-modular lattice for supported i.
struct NormClass {
  int ell = 0;
  bool hyperbolic = false;

  auto operator<=>(const NormClass&) const = default;
  bool operator==(const NormClass&) const = default;
};

NormClass norm_class(const Lattice& lat, int i);

struct NeighborTally {
  std::map<NormClass, int> counts;
  int total = 0;
  /// The Pi^to_i-modular neighbors, sorted by key.
  std::vector<Lattice> neighbors;
};

/// All Pi^to_i-modular lattices M at index 1 from lat: M < lat when
/// to_i = from_i + 1 and M > lat when to_i = from_i - 1. Raises
/// UnsupportedModularity if lat is not Pi^from_i-modular or either index
/// is outside the classified range.
NeighborTally modular_neighbors(const Lattice& lat, int from_i, int to_i);

/// The counts the classification predicts for a Pi^from_i-modular lattice
/// of class `source`. Raises UnsupportedModularity for other steps.
std::map<NormClass, int> expected_neighbor_tally(const Extension& ext, int from_i, int to_i,
                                                 const NormClass& source);

struct CaseCheck {
  NormClass source;
  std::map<NormClass, int> expected;
  std::map<NormClass, int> observed;
  bool pass() const { return expected == observed; }
};

struct CaseReport {
  std::string id;  // "RP.1" ... "RU.4"
  std::string statement;
  int from_i = 0;
  int to_i = 0;
  bool applicable = true;
  std::string note;
  std::vector<CaseCheck> checks;
  bool pass() const;
};

struct PropsReport {
  std::string extension;
  int q = 0;
  int e = 0;
  int vt = 0;  // 0 for RP
  std::vector<CaseReport> cases;  // sorted by id
  bool pass() const;
};

/// The case ids for the extension type of ext, in order.
std::vector<std::string> neighbor_case_ids(const Extension& ext);

/// Runs one case on a witness lattice of every norm class it covers.
/// Raises CaseInapplicable if the case has no lattices for this extension.
CaseReport run_neighbor_case(const Extension& ext, const std::string& id);

/// Runs every case; inapplicable ones are listed with applicable = false.
PropsReport verify_neighbor_props(const Extension& ext);

struct WalkFailure {
  LatticeKey key;
  int from_i = 0;
  int to_i = 0;
  CaseCheck check;
};

struct WalkReport {
  std::uint64_t seed = 0;
  int samples = 0;
  int steps = 0;
  int checks = 0;
  std::vector<WalkFailure> failures;
  bool pass() const { return failures.empty(); }
};

/// Random walks alternating between the two supported modularities, each
/// starting at the witness of a random class. Every visited lattice has its
/// neighbor tally compared with the prediction. Deterministic in `seed`.
WalkReport sample_neighbor_walks(const Extension& ext, int samples, std::uint64_t seed, int steps = 4);

}  // namespace rzlab
