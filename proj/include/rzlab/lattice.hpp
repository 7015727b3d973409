#pragma once

// O_E-lattices in the split hermitian plane (C, h), C = E^2 with
// h(x, y) = x1 * conj(y2) + x2 * conj(y1).

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "rzlab/padic.hpp"

namespace rzlab {

using Vec2 = std::array<EElem, 2>;
/// Two generators, basis[j] is the j-th column.
using Basis = std::array<Vec2, 2>;
using Gram = std::array<std::array<EElem, 2>, 2>;

EElem herm(const Vec2& x, const Vec2& y);
/// h(x, x) as an element of F.
FElem herm_norm(const Vec2& x);

/// Column Hermite normal form [[Pi^a, c], [0, Pi^b]] with
/// c = sum_j digits[j] Pi^(start + j), start <= j < a, digits[0] != 0.
/// c = 0 is encoded by start == a and no digits.
struct LatticeKey {
  int a = 0;
  int b = 0;
  int start = 0;
  std::vector<std::uint32_t> digits;

  auto operator<=>(const LatticeKey&) const = default;
  bool operator==(const LatticeKey&) const = default;

  LatticeKey shifted(int n) const;
  std::string to_string() const;
  static LatticeKey parse(const std::string& s);
};

class Lattice {
 public:
  /// Raises DegenerateLattice if the generators are dependent to precision.
  static Lattice from_basis(const Extension& ext, const Basis& basis);
  static Lattice from_key(const Extension& ext, const LatticeKey& key);
  /// O_E^2.
  static Lattice standard(const Extension& ext);

  const Extension& ext() const { return *ext_; }
  const LatticeKey& key() const { return key_; }
  /// The canonical (Hermite normal form) basis, rebuilt exactly from the key.
  const Basis& basis() const { return basis_; }

  /// Pi^n * this.
  Lattice scaled(int n) const { return from_key(*ext_, key_.shifted(n)); }

  bool operator==(const Lattice& o) const { return key_ == o.key_; }
  bool operator<(const Lattice& o) const { return key_ < o.key_; }

 private:
  const Extension* ext_ = nullptr;
  LatticeKey key_;
  Basis basis_;
};

/// Coordinates of v in the canonical basis of the lattice.
Vec2 coordinates(const Lattice& lat, const Vec2& v);
bool contains(const Lattice& outer, const Vec2& v);
bool contains(const Lattice& outer, const Lattice& inner);

Gram gram(const Extension& ext, const Basis& basis);
Gram gram(const Lattice& lat);

Lattice dual_lattice(const Lattice& lat);
bool is_pi_modular(const Lattice& lat, int i);
/// The unique i with lat Pi^i-modular, if any.
std::optional<int> modularity(const Lattice& lat);

/// Exponent l with Nm(lat) = pi_0^l O_F, from the generators
/// G11, G22, Tr(G12), Tr(Pi G12).
int norm_exponent(const Lattice& lat);

/// Modularities handled by the classification: RP {0, -1}, RU {0, 1}.
bool supported_modularity(const Extension& ext, int i);
/// The norm exponent of hyperbolic Pi^i-modular lattices (v(2) for RP, v(t) for RU).
int hyperbolic_norm_exponent(const Extension& ext);
/// Raises UnsupportedModularity unless lat is Pi^i-modular with i supported.
bool is_hyperbolic(const Lattice& lat, int i);

/// A primitive isotropic vector of lat. For hyperbolic lattices the first
/// coordinate in `preferred` (default: the canonical basis) is a unit.
Vec2 find_isotropic_vector(const Lattice& lat, const Basis* preferred = nullptr);

struct NormalForm {
  Basis basis;  // (f1, f2) with Gram [[x, conj(Pi)^i], [Pi^i, 0]]
  FElem x;
  Gram gram;
};

/// Raises UnsupportedModularity if lat is not Pi^i-modular.
NormalForm normal_form_basis(const Lattice& lat, int i);

/// span(e1 + y e2, Pi^i e2) whose Gram is [[x, conj(Pi)^i], [Pi^i, 0]] with
/// x = pi_0^ell, or x = 0 when ell is empty (the hyperbolic lattice).
Lattice witness_lattice(const Extension& ext, int i, std::optional<int> ell);

/// Representatives of the q+1 lines of lat / Pi lat.
std::vector<Vec2> residue_lines(const Lattice& lat);
/// The q+1 lattices M with Pi lat < M < lat, in residue-line order.
std::vector<Lattice> sublattices_index1(const Lattice& lat);
/// The q+1 lattices M with lat < M < Pi^{-1} lat, as duals of the
/// sublattices of the dual.
std::vector<Lattice> superlattices_index1(const Lattice& lat);

/// Number of isotropic lines of the form induced by h on lat / Pi lat.
int isotropic_line_count(const Lattice& lat);

}  // namespace rzlab
