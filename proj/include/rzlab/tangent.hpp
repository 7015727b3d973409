#pragma once

// First-order deformations at a hyperbolic Pi-modular point (RU case).
// Lambda has O_F-basis (e1, e2, Pi e1, Pi e2) and a rank-2 filtration is
// written as the column span of [Y; I] with Y = (y_ij).

#include <array>
#include <string>
#include <vector>

#include "rzlab/padic.hpp"

namespace rzlab {

enum Var { Y11 = 0, Y12 = 1, Y21 = 2, Y22 = 3 };

/// Polynomial in y11, y12, y21, y22 over O_F modulo all monomials of total
/// degree >= 3. Monomials: 1, the four variables, then the ten products
/// y_a y_b with a <= b.
class TruncPoly {
 public:
  static constexpr int kMonomials = 15;

  TruncPoly() = default;
  explicit TruncPoly(const Field& field);
  static TruncPoly constant(const OF& c);
  static TruncPoly var(const Field& field, Var v);

  static int degree(int monomial);
  static int product(int m1, int m2);  // -1 when the degree exceeds 2
  static std::string monomial_name(int monomial);

  const Field& field() const { return *field_; }
  const OF& coeff(int m) const { return c_[m]; }
  OF& coeff(int m) { return c_[m]; }

  TruncPoly operator+(const TruncPoly& o) const;
  TruncPoly operator-(const TruncPoly& o) const;
  TruncPoly operator-() const;
  TruncPoly operator*(const TruncPoly& o) const;
  TruncPoly operator*(const OF& c) const;
  bool operator==(const TruncPoly& o) const;

  bool is_zero() const;
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::array<OF, kMonomials> c_{};
};

using Mat4 = std::array<std::array<OF, 4>, 4>;

/// The form Phi as displayed for this computation, with rows
/// (0, t/pi_0, 0, 1), (0, 0, -1, 0), (0, -1 + t^2/pi_0, 0, t), (1, 0, 0, 0).
/// Raises NotRUCase.
Mat4 phi_matrix(const Extension& ext);
/// Phi(x, y) = Tr(h(x, Pi^-1 y) / (t theta)) evaluated on the basis, with
/// theta = 1 - 2 Pi / t and h = [[0, Pi], [conj(Pi), 0]].
Mat4 phi_matrix_from_form(const Extension& ext);
/// Multiplication by Pi on Lambda (columns are images of basis vectors).
Mat4 pi_action_matrix(const Extension& ext);

struct DeformConditions {
  bool stability = true;  // O_E-stable filtration
  bool kottwitz = true;   // characteristic polynomial on Lie
  bool isotropy = true;   // totally isotropic for Phi
};

struct DeformRelations {
  int f = 0, e = 0, vt = 0;
  std::vector<TruncPoly> generators;
  std::vector<std::string> labels;
};

/// Imposes the selected conditions on [Y; I]. Raises NotRUCase.
DeformRelations derive_relations(const Extension& ext, DeformConditions which = {});
/// y11 + y22 - t, y11 y22 - y12 y21 - pi_0 and z (t y22 / pi_0 + 2) for
/// z in {t, y11, y21, y12}.
DeformRelations reference_relations(const Extension& ext);

/// Membership of p in the O_F-span of {g m : g in gens, m a monomial}
/// inside the truncated ring.
bool ideal_contains(const std::vector<TruncPoly>& gens, const TruncPoly& p);

struct RelationComparison {
  bool equal = false;
  std::vector<std::string> missing_from_derived;    // reference labels not in the derived ideal
  std::vector<std::string> missing_from_reference;  // derived labels not in the reference ideal
  /// Reference generators that do not occur verbatim (up to sign) among the
  /// derived ones, although the ideals may agree.
  std::vector<std::string> syntactic_differences;
};

RelationComparison compare_relations(const DeformRelations& derived, const DeformRelations& reference);
/// Raises DerivationMismatch naming the first differing generator.
void require_same_ideal(const DeformRelations& derived, const DeformRelations& reference);

/// Rank over the residue field of a matrix over O_F.
int rank_mod_pi(const std::vector<std::vector<OF>>& rows);

/// 4 minus the rank over k of the linear parts of the generators mod pi_0.
/// Raises DerivationMismatch if a generator has a unit constant term.
int tangent_dimension(const DeformRelations& rel);

/// Dimension of the regular two-dimensional comparison space.
constexpr int kDrinfeldDimension = 2;

}  // namespace rzlab
