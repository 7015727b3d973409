#pragma once

// Fixed-precision arithmetic in O_F and O_E for 2-adic fields.
//
// F is modelled as an Eisenstein extension (degree e) of the unramified
// extension W of Z_2 of degree f. An element of O_F is stored as e blocks
// of f integers mod 2^K:
//
//     x = sum_{i<e} sum_{j<f} c[i*f + j] * zeta^j * pi^i
//
// where zeta is a root of the unramified minimal polynomial and pi is the
// Eisenstein root, which doubles as the uniformizer pi_0 of F. Every element
// carries an absolute pi-adic precision; digits at or above it are noise.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rzlab/errors.hpp"

namespace rzlab {

inline constexpr int kMaxFieldDegree = 8;  // upper bound on e*f
inline constexpr int kDefaultPrecision = 24;

using IntPoly = std::vector<std::int64_t>;  // lowest degree first
using Coeffs = std::array<std::uint64_t, kMaxFieldDegree>;

class OF;

class Field {
 public:
  /// `eisenstein` holds e+1 coefficients over W (each an f-vector of
  /// integers, lowest degree first). An empty `unram_min_poly` selects
  /// `default_unramified_poly(f)`.
  static std::shared_ptr<const Field> make(int f, int e,
                                           const std::vector<IntPoly>& eisenstein,
                                           int precision = kDefaultPrecision,
                                           IntPoly unram_min_poly = {});

  /// x^e - 2, the defaults used by the CLI shorthands.
  static std::vector<IntPoly> default_eisenstein(int e, int f);
  /// Smallest (by binary encoding) monic irreducible polynomial of degree f
  /// over F_2; for f = 1 this is x.
  static IntPoly default_unramified_poly(int f);
  static bool irreducible_mod2(const IntPoly& poly);

  int f() const { return f_; }
  int e() const { return e_; }
  int q() const { return 1 << f_; }
  int precision() const { return precision_; }
  int modulus_bits() const { return bits_; }
  const IntPoly& unram_min_poly() const { return unram_; }
  const std::vector<IntPoly>& eisenstein() const { return eisenstein_; }

  // Residue field k = F_q, elements are f-bit masks in the basis 1, zeta, ...
  std::uint32_t residue_add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t residue_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t residue_inv(std::uint32_t a) const;

  OF zero() const;
  OF one() const;
  OF from_int(std::int64_t v) const;
  OF uniformizer() const;

  // Raw kernels on coefficient arrays. Public so the element types can share
  // them; not meant for general use.
  std::uint64_t mask() const { return mask_; }
  void w_mul(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const;
  void raw_mul(const Coeffs& x, const Coeffs& y, Coeffs& out) const;
  void raw_mul_pi(Coeffs& x) const;
  const Coeffs& raw_two_over_pi() const { return two_over_pi_; }
  /// The unit 2 / pi^e at full precision.
  const Coeffs& raw_two_unit() const { return two_unit_; }

 private:
  Field() = default;

  int f_ = 1;
  int e_ = 1;
  int precision_ = kDefaultPrecision;
  int bits_ = 0;
  std::uint64_t mask_ = 0;
  IntPoly unram_;
  std::uint32_t unram_bits_ = 0;  // reduction of unram_ mod 2, without the leading term
  std::vector<IntPoly> eisenstein_;
  // zeta^(f+k) for k = 0..f-2, as f-vectors
  std::vector<std::vector<std::uint64_t>> zeta_red_;
  // -a_j for j = 0..e-1, so that pi^e = sum_j neg_eis_[j] * pi^j
  std::vector<std::vector<std::uint64_t>> neg_eis_;
  Coeffs two_over_pi_{};
  Coeffs two_unit_{};
};

/// Element of O_F / pi^precision with tracked absolute precision.
class OF {
 public:
  OF() = default;
  OF(const Field& field, const Coeffs& coeffs, int prec);

  /// `blocks` is an e x f integer array (missing entries are zero).
  static OF from_coeffs(const Field& field, const std::vector<IntPoly>& blocks);
  /// Lift of a residue class via the digit set {sum b_j zeta^j : b_j in {0,1}}.
  static OF lift_residue(const Field& field, std::uint32_t bits);

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  const Coeffs& raw() const { return c_; }
  int prec() const { return prec_; }

  /// pi_0-adic valuation, or nullopt when the value is zero to precision.
  std::optional<int> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }
  bool is_unit() const;
  std::uint32_t residue() const;

  OF operator+(const OF& o) const;
  OF operator-(const OF& o) const;
  OF operator-() const;
  OF operator*(const OF& o) const;
  OF& operator+=(const OF& o) { return *this = *this + o; }
  OF& operator-=(const OF& o) { return *this = *this - o; }
  OF& operator*=(const OF& o) { return *this = *this * o; }

  OF mul_pi_pow(int k) const;
  /// Exact division by pi^k; raises InexactDivision if v(x) < k.
  OF div_pi_pow(int k) const;
  /// Inverse of a unit; raises NotAUnit otherwise.
  OF inverse() const;
  OF with_prec(int p) const;

  /// Equality to the smaller of the two precisions.
  bool operator==(const OF& o) const { return (*this - o).is_zero(); }

  /// The first n pi-adic digits as residue classes.
  std::vector<std::uint32_t> digits(int n) const;
  /// e x f integer array of the stored representative.
  std::vector<IntPoly> coefficients() const;
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  Coeffs c_{};
  int prec_ = 0;
};

/// Element pi_0^k * m of F. The mantissa is kept normalized (a unit, or zero
/// to precision) so that leading zeros never consume stored digits.
class FElem {
 public:
  FElem() = default;
  FElem(OF m, int k = 0);

  /// Exact integer constant with full relative precision.
  static FElem from_int(const Field& field, std::int64_t v);
  static FElem pi0_pow(const Field& field, int k);

  const OF& mantissa() const { return m_; }
  int shift() const { return k_; }
  const Field& field() const { return m_.field(); }

  std::optional<int> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }
  int abs_prec() const { return k_ + m_.prec(); }

  FElem operator+(const FElem& o) const;
  FElem operator-(const FElem& o) const;
  FElem operator-() const { return FElem(-m_, k_); }
  FElem operator*(const FElem& o) const { return FElem(m_ * o.m_, k_ + o.k_); }
  FElem inverse() const;
  FElem operator/(const FElem& o) const { return *this * o.inverse(); }
  bool operator==(const FElem& o) const { return (*this - o).is_zero(); }

  /// Exact conversion into O_F; raises InexactDivision for negative valuation.
  OF to_integral() const;
  std::string to_string() const;

 private:
  OF m_;
  int k_ = 0;
};

enum class ExtKind { RP, RU, UNRAM };

std::string to_string(ExtKind kind);
ExtKind ext_kind_from_string(const std::string& s);

class OE;

/// Quadratic extension E = F[X] / (X^2 - s X + c).
///
///   RP:    X = Pi,    s = 0, c = pi_0        (Pi^2 + pi_0 = 0)
///   RU:    X = Pi,    s = t, c = pi_0        (Pi^2 - t Pi + pi_0 = 0, pi_0 | t | 2)
///   UNRAM: X = gamma, s = 1, c = -u          (gamma^2 - gamma - u = 0)
class Extension {
 public:
  static std::shared_ptr<const Extension> make_rp(std::shared_ptr<const Field> field);
  static std::shared_ptr<const Extension> make_ru(std::shared_ptr<const Field> field, const OF& t);
  static std::shared_ptr<const Extension> make_unramified(std::shared_ptr<const Field> field);

  ExtKind kind() const { return kind_; }
  bool ramified() const { return kind_ != ExtKind::UNRAM; }
  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }
  int q() const { return field_->q(); }
  int e() const { return field_->e(); }

  const OF& pi0() const { return pi0_; }
  /// Trace of the generator (0 for RP, t for RU, 1 for UNRAM).
  const OF& s() const { return s_; }
  /// Norm of the generator.
  const OF& c() const { return c_; }
  const OF& t() const;
  int vt() const;
  /// Unit u with x^2 + x + u irreducible over the residue field (smallest lift).
  const OF& u() const { return u_; }

  OE zero() const;
  OE one() const;
  OE gen() const;
  OE from_of(const OF& a) const;

 private:
  Extension() = default;

  ExtKind kind_ = ExtKind::RP;
  std::shared_ptr<const Field> field_;
  OF pi0_, s_, c_, u_;
  int vt_ = 0;
};

/// Smallest residue class r with x^2 + x + r irreducible over F_q.
std::uint32_t artin_schreier_nonsplit_class(const Field& field);

/// Element a + b X of O_E.
class OE {
 public:
  OE() = default;
  OE(const Extension& ext, OF a, OF b) : ext_(&ext), a_(std::move(a)), b_(std::move(b)) {}

  const Extension& ext() const { return *ext_; }
  const OF& a() const { return a_; }
  const OF& b() const { return b_; }

  /// Valuation in the uniformizer of E (Pi for ramified, pi_0 for UNRAM).
  std::optional<int> valuation() const;
  /// Absolute precision in the uniformizer of E.
  int prec() const;
  bool is_zero() const { return !valuation().has_value(); }
  bool is_unit() const;
  std::uint32_t residue() const;

  OE operator+(const OE& o) const { return OE(*ext_, a_ + o.a_, b_ + o.b_); }
  OE operator-(const OE& o) const { return OE(*ext_, a_ - o.a_, b_ - o.b_); }
  OE operator-() const { return OE(*ext_, -a_, -b_); }
  OE operator*(const OE& o) const;
  OE operator*(const OF& o) const { return OE(*ext_, a_ * o, b_ * o); }
  OE& operator+=(const OE& o) { return *this = *this + o; }
  OE& operator-=(const OE& o) { return *this = *this - o; }
  OE& operator*=(const OE& o) { return *this = *this * o; }

  OE conj() const;
  OF trace() const;
  OF norm() const;

  OE mul_pi0_pow(int k) const { return OE(*ext_, a_.mul_pi_pow(k), b_.mul_pi_pow(k)); }
  OE div_pi0_pow(int k) const { return OE(*ext_, a_.div_pi_pow(k), b_.div_pi_pow(k)); }
  /// Exact division by the uniformizer of E.
  OE div_uniformizer() const;
  OE inverse() const;
  /// Exact quotient *this / d; requires v(*this) >= v(d).
  OE divide(const OE& d) const;

  /// First n digits in the uniformizer of E (ramified only).
  std::vector<std::uint32_t> digits(int n) const;
  static OE from_digits(const Extension& ext, int start, const std::vector<std::uint32_t>& digits);

  bool operator==(const OE& o) const { return (*this - o).is_zero(); }
  std::string to_string() const;

 private:
  const Extension* ext_ = nullptr;
  OF a_, b_;
};

/// Element pi_0^k * m of E, normalized like FElem (v(m) < 2 when ramified).
class EElem {
 public:
  EElem() = default;
  EElem(OE m, int k = 0);

  static EElem from_f(const Extension& ext, const FElem& x);
  /// Pi^n for any integer n (ramified extensions).
  static EElem pi_pow(const Extension& ext, int n);

  const OE& mantissa() const { return m_; }
  int shift() const { return k_; }
  const Extension& ext() const { return m_.ext(); }

  /// Valuation in the uniformizer of E.
  std::optional<int> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }
  int abs_prec() const;

  EElem operator+(const EElem& o) const;
  EElem operator-(const EElem& o) const;
  EElem operator-() const { return EElem(-m_, k_); }
  EElem operator*(const EElem& o) const { return EElem(m_ * o.m_, k_ + o.k_); }
  EElem conj() const { return EElem(m_.conj(), k_); }
  EElem inverse() const;
  EElem operator/(const EElem& o) const { return *this * o.inverse(); }
  FElem trace() const { return FElem(m_.trace(), k_); }
  FElem norm() const { return FElem(m_.norm(), 2 * k_); }
  /// Component a of a + b X as an F-element.
  FElem part_a() const { return FElem(m_.a(), k_); }
  FElem part_b() const { return FElem(m_.b(), k_); }

  /// Exact conversion into O_E; raises InexactDivision if not integral.
  OE to_integral() const;
  bool operator==(const EElem& o) const { return (*this - o).is_zero(); }
  std::string to_string() const;

 private:
  OE m_;
  int k_ = 0;
};

/// Exponent d of the different D_{E|F} = Pi^d O_E from the closed formula
/// (2e+1 for RP, 2 v(t) for RU).
int inverse_different_exponent(const Extension& ext);
/// Same exponent found by scanning Tr(Pi^{-m} O_E) subset O_F for growing m.
int inverse_different_exponent_scan(const Extension& ext);

/// Decides x in Nm_{E|F}(E^x) for a unit or uniformizer x by exhaustive
/// search modulo pi_0^(2 v(2) + 2).
bool is_norm(const OF& x, const Extension& ext);

/// First uniformizer pi_0 * w (w running over units in a fixed order) that is
/// not a norm from E.
OF find_non_norm_uniformizer(const Extension& ext);

}  // namespace rzlab
