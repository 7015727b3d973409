#include "rzlab/tangent.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace rzlab {

namespace {

// Index of y_a y_b (a <= b) among the quadratic monomials.
constexpr int quad_index(int a, int b) {
  if (a > b) std::swap(a, b);
  int idx = 5;
  for (int i = 0; i < a; ++i) idx += 4 - i;
  return idx + (b - a);
}

const char* const kVarNames[4] = {"y11", "y12", "y21", "y22"};

void require_ru(const Extension& ext) {
  if (ext.kind() != ExtKind::RU) throw NotRUCase("the deformation computation is set up for RU extensions");
}

OF integral(const FElem& x) { return x.to_integral(); }

using PolyMat = std::vector<std::vector<TruncPoly>>;

PolyMat mat_mul(const PolyMat& a, const PolyMat& b) {
  const Field& F = a[0][0].field();
  PolyMat out(a.size(), std::vector<TruncPoly>(b[0].size(), TruncPoly(F)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

PolyMat constant_matrix(const Mat4& m) {
  PolyMat out(4, std::vector<TruncPoly>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = TruncPoly::constant(m[i][j]);
  return out;
}

// The 4 x 2 matrix [Y; I].
PolyMat filtration(const Field& F) {
  PolyMat v(4, std::vector<TruncPoly>(2, TruncPoly(F)));
  v[0][0] = TruncPoly::var(F, Y11);
  v[0][1] = TruncPoly::var(F, Y12);
  v[1][0] = TruncPoly::var(F, Y21);
  v[1][1] = TruncPoly::var(F, Y22);
  v[2][0] = TruncPoly::constant(F.one());
  v[3][1] = TruncPoly::constant(F.one());
  return v;
}

using Row = std::vector<FElem>;

Row to_row(const TruncPoly& p) {
  Row r;
  for (int m = 0; m < TruncPoly::kMonomials; ++m) r.emplace_back(p.coeff(m));
  return r;
}

// Echelon basis of the truncated ideal generated by gens, pivots in
// increasing column order.
std::vector<Row> ideal_echelon(const std::vector<TruncPoly>& gens) {
  std::vector<Row> rows;
  for (const auto& g : gens) {
    for (int m = 0; m < TruncPoly::kMonomials; ++m) {
      TruncPoly mono(g.field());
      mono.coeff(m) = g.field().one();
      const TruncPoly p = g * mono;
      if (!p.is_zero()) rows.push_back(to_row(p));
    }
  }
  std::vector<Row> out;
  for (int col = 0; col < TruncPoly::kMonomials && !rows.empty(); ++col) {
    std::optional<std::size_t> best;
    int best_v = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto v = rows[i][col].valuation();
      if (v && (!best || *v < best_v)) {
        best = i;
        best_v = *v;
      }
    }
    if (!best) continue;
    Row piv = rows[*best];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*best));
    for (auto& r : rows) {
      if (r[col].is_zero()) continue;
      const FElem f = r[col] / piv[col];
      for (int k = 0; k < TruncPoly::kMonomials; ++k) r[k] = r[k] - f * piv[k];
    }
    out.push_back(std::move(piv));
  }
  return out;
}

bool reduces_to_zero(Row x, const std::vector<Row>& echelon) {
  for (const auto& piv : echelon) {
    const int col = static_cast<int>(
        std::find_if(piv.begin(), piv.end(), [](const FElem& c) { return !c.is_zero(); }) - piv.begin());
    if (x[col].is_zero()) continue;
    const FElem f = x[col] / piv[col];
    if (const auto v = f.valuation(); v && *v < 0) return false;
    for (int k = 0; k < TruncPoly::kMonomials; ++k) x[k] = x[k] - f * piv[k];
  }
  return std::all_of(x.begin(), x.end(), [](const FElem& c) { return c.is_zero(); });
}

}  // namespace

// ---- TruncPoly ----

TruncPoly::TruncPoly(const Field& field) : field_(&field) { c_.fill(field.zero()); }

TruncPoly TruncPoly::constant(const OF& c) {
  TruncPoly p(c.field());
  p.c_[0] = c;
  return p;
}

TruncPoly TruncPoly::var(const Field& field, Var v) {
  TruncPoly p(field);
  p.c_[1 + v] = field.one();
  return p;
}

int TruncPoly::degree(int m) { return m == 0 ? 0 : (m <= 4 ? 1 : 2); }

int TruncPoly::product(int m1, int m2) {
  if (degree(m1) + degree(m2) > 2) return -1;
  if (m1 == 0) return m2;
  if (m2 == 0) return m1;
  return quad_index(m1 - 1, m2 - 1);
}

std::string TruncPoly::monomial_name(int m) {
  if (m == 0) return "1";
  if (m <= 4) return kVarNames[m - 1];
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      if (quad_index(a, b) == m) return a == b ? std::string(kVarNames[a]) + "^2" : std::string(kVarNames[a]) + "*" + kVarNames[b];
  return "?";
}

TruncPoly TruncPoly::operator+(const TruncPoly& o) const {
  TruncPoly r(*field_);
  for (int m = 0; m < kMonomials; ++m) r.c_[m] = c_[m] + o.c_[m];
  return r;
}

TruncPoly TruncPoly::operator-(const TruncPoly& o) const {
  TruncPoly r(*field_);
  for (int m = 0; m < kMonomials; ++m) r.c_[m] = c_[m] - o.c_[m];
  return r;
}

TruncPoly TruncPoly::operator-() const { return TruncPoly(*field_) - *this; }

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
  TruncPoly r(*field_);
  for (int a = 0; a < kMonomials; ++a) {
    if (c_[a].is_zero()) continue;
    for (int b = 0; b < kMonomials; ++b) {
      const int m = product(a, b);
      if (m >= 0 && !o.c_[b].is_zero()) r.c_[m] += c_[a] * o.c_[b];
    }
  }
  return r;
}

TruncPoly TruncPoly::operator*(const OF& c) const {
  TruncPoly r(*field_);
  for (int m = 0; m < kMonomials; ++m) r.c_[m] = c_[m] * c;
  return r;
}

bool TruncPoly::operator==(const TruncPoly& o) const { return (*this - o).is_zero(); }

bool TruncPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const OF& c) { return c.is_zero(); });
}

std::string TruncPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int m = 0; m < kMonomials; ++m) {
    if (c_[m].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[m].to_string() << ")";
    if (m != 0) os << "*" << monomial_name(m);
  }
  return first ? "0" : os.str();
}

// ---- matrices ----

Mat4 phi_matrix(const Extension& ext) {
  require_ru(ext);
  const Field& F = ext.field();
  const FElem t(ext.t());
  const FElem pi0 = FElem::pi0_pow(F, 1);
  const OF z = F.zero(), one = F.one();
  const OF s = integral(t / pi0);
  const OF w = integral(t * t / pi0 - FElem::from_int(F, 1));
  return {{{z, s, z, one}, {z, z, -one, z}, {z, w, z, ext.t()}, {one, z, z, z}}};
}

Mat4 phi_matrix_from_form(const Extension& ext) {
  require_ru(ext);
  const Field& F = ext.field();
  const EElem pi(ext.gen());
  const EElem pibar = pi.conj();
  const EElem one(ext.one()), zero(ext.zero());
  const EElem t = EElem::from_f(ext, FElem(ext.t()));
  const EElem theta = one - EElem::from_f(ext, FElem::from_int(F, 2)) * pi / t;
  const EElem scale = (t * theta).inverse();
  const EElem pinv = pi.inverse();
  const std::array<std::array<EElem, 2>, 4> basis{{{one, zero}, {zero, one}, {pi, zero}, {zero, pi}}};
  auto h = [&](const std::array<EElem, 2>& x, const std::array<EElem, 2>& y) {
    return x[0] * y[1].conj() * pi + x[1] * y[0].conj() * pibar;
  };
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const std::array<EElem, 2> y{pinv * basis[j][0], pinv * basis[j][1]};
      m[i][j] = integral((scale * h(basis[i], y)).trace());
    }
  return m;
}

Mat4 pi_action_matrix(const Extension& ext) {
  require_ru(ext);
  const Field& F = ext.field();
  const OF z = F.zero(), one = F.one();
  const OF pi0 = ext.pi0();
  // Pi e_k = Pi e_k; Pi (Pi e_k) = t Pi e_k - pi_0 e_k.
  return {{{z, z, -pi0, z}, {z, z, z, -pi0}, {one, z, ext.t(), z}, {z, one, z, ext.t()}}};
}

// ---- relations ----

DeformRelations derive_relations(const Extension& ext, DeformConditions which) {
  require_ru(ext);
  const Field& F = ext.field();
  DeformRelations rel;
  rel.f = ext.field().f();
  rel.e = ext.e();
  rel.vt = ext.vt();
  const PolyMat V = filtration(F);
  const PolyMat W = mat_mul(constant_matrix(pi_action_matrix(ext)), V);
  // Pi [Y; I] = [Y; I] A forces A to be the lower block of W.
  const PolyMat A{{W[2][0], W[2][1]}, {W[3][0], W[3][1]}};
  const PolyMat Y{{V[0][0], V[0][1]}, {V[1][0], V[1][1]}};
  const PolyMat YA = mat_mul(Y, A);

  auto add = [&](TruncPoly p, std::string label) {
    rel.generators.push_back(std::move(p));
    rel.labels.push_back(std::move(label));
  };
  if (which.stability) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        add(W[i][j] - YA[i][j], "stable[" + std::to_string(i + 1) + std::to_string(j + 1) + "]");
  }
  if (which.kottwitz) {
    // Pi has characteristic polynomial (T^2 - tT + pi_0)^2 on Lambda, so the
    // condition on Lie = Lambda / F_Y is the same polynomial for A on F_Y.
    add(A[0][0] + A[1][1] - TruncPoly::constant(ext.t()), "trace");
    add(A[0][0] * A[1][1] - A[0][1] * A[1][0] - TruncPoly::constant(ext.pi0()), "det");
  }
  if (which.isotropy) {
    const PolyMat PV = mat_mul(constant_matrix(phi_matrix_from_form(ext)), V);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        TruncPoly s(F);
        for (int k = 0; k < 4; ++k) s = s + V[k][i] * PV[k][j];
        add(s, "isotropic[" + std::to_string(i + 1) + std::to_string(j + 1) + "]");
      }
  }
  return rel;
}

DeformRelations reference_relations(const Extension& ext) {
  require_ru(ext);
  const Field& F = ext.field();
  DeformRelations rel;
  rel.f = F.f();
  rel.e = ext.e();
  rel.vt = ext.vt();
  const TruncPoly y11 = TruncPoly::var(F, Y11), y12 = TruncPoly::var(F, Y12);
  const TruncPoly y21 = TruncPoly::var(F, Y21), y22 = TruncPoly::var(F, Y22);
  const TruncPoly t = TruncPoly::constant(ext.t());
  const OF s = integral(FElem(ext.t()) / FElem::pi0_pow(F, 1));
  const TruncPoly ann = y22 * s + TruncPoly::constant(F.from_int(2));
  rel.generators = {y11 + y22 - t, y11 * y22 - y12 * y21 - TruncPoly::constant(ext.pi0()), t * ann, y11 * ann,
                    y21 * ann, y12 * ann};
  rel.labels = {"y11 + y22 - t", "y11 y22 - y12 y21 - pi_0", "t (t y22 / pi_0 + 2)", "y11 (t y22 / pi_0 + 2)",
                "y21 (t y22 / pi_0 + 2)", "y12 (t y22 / pi_0 + 2)"};
  return rel;
}

bool ideal_contains(const std::vector<TruncPoly>& gens, const TruncPoly& p) {
  if (gens.empty()) return p.is_zero();
  return reduces_to_zero(to_row(p), ideal_echelon(gens));
}

RelationComparison compare_relations(const DeformRelations& derived, const DeformRelations& reference) {
  RelationComparison cmp;
  const auto ed = ideal_echelon(derived.generators);
  const auto er = ideal_echelon(reference.generators);
  for (std::size_t i = 0; i < reference.generators.size(); ++i) {
    const TruncPoly& g = reference.generators[i];
    if (!reduces_to_zero(to_row(g), ed)) cmp.missing_from_derived.push_back(reference.labels[i]);
    const bool verbatim = std::any_of(derived.generators.begin(), derived.generators.end(),
                                      [&](const TruncPoly& d) { return d == g || d == -g; });
    if (!verbatim) cmp.syntactic_differences.push_back(reference.labels[i]);
  }
  for (std::size_t i = 0; i < derived.generators.size(); ++i)
    if (!reduces_to_zero(to_row(derived.generators[i]), er)) cmp.missing_from_reference.push_back(derived.labels[i]);
  cmp.equal = cmp.missing_from_derived.empty() && cmp.missing_from_reference.empty();
  return cmp;
}

void require_same_ideal(const DeformRelations& derived, const DeformRelations& reference) {
  const RelationComparison cmp = compare_relations(derived, reference);
  if (!cmp.missing_from_derived.empty())
    throw DerivationMismatch("reference generator not implied by the conditions: " + cmp.missing_from_derived[0]);
  if (!cmp.missing_from_reference.empty())
    throw DerivationMismatch("derived generator outside the reference ideal: " + cmp.missing_from_reference[0]);
}

int rank_mod_pi(const std::vector<std::vector<OF>>& rows) {
  if (rows.empty()) return 0;
  const Field& F = rows[0][0].field();
  std::vector<std::vector<std::uint32_t>> m;
  for (const auto& r : rows) {
    std::vector<std::uint32_t> red;
    for (const auto& c : r) red.push_back(c.residue());
    m.push_back(std::move(red));
  }
  const std::size_t cols = m[0].size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
    auto it = std::find_if(m.begin() + rank, m.end(), [&](const auto& r) { return r[col] != 0; });
    if (it == m.end()) continue;
    std::iter_swap(m.begin() + rank, it);
    const std::uint32_t inv = F.residue_inv(m[rank][col]);
    for (auto& x : m[rank]) x = F.residue_mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(i) == rank || m[i][col] == 0) continue;
      const std::uint32_t f = m[i][col];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = F.residue_add(m[i][k], F.residue_mul(f, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

int tangent_dimension(const DeformRelations& rel) {
  std::vector<std::vector<OF>> linear;
  for (const auto& g : rel.generators) {
    if (g.coeff(0).is_unit()) throw DerivationMismatch("the origin does not lie on the locus: " + g.to_string());
    std::vector<OF> row;
    for (int v = 0; v < 4; ++v) row.push_back(g.coeff(1 + v));
    linear.push_back(std::move(row));
  }
  return 4 - rank_mod_pi(linear);
}

}  // namespace rzlab
