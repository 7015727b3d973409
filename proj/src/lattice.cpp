#include "rzlab/lattice.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace rzlab {

namespace {

EElem ezero(const Extension& ext) { return EElem(ext.zero()); }
EElem eone(const Extension& ext) { return EElem(ext.one()); }

EElem lift_digit(const Extension& ext, std::uint32_t d) {
  return EElem(ext.from_of(OF::lift_residue(ext.field(), d)));
}

Vec2 add(const Vec2& x, const Vec2& y) { return {x[0] + y[0], x[1] + y[1]}; }
Vec2 scale(const Vec2& x, const EElem& c) { return {x[0] * c, x[1] * c}; }

EElem det2(const Vec2& x, const Vec2& y) { return x[0] * y[1] - x[1] * y[0]; }

// Coordinates of v in an arbitrary basis (Cramer's rule).
Vec2 solve_in(const Basis& basis, const Vec2& v) {
  const EElem d = det2(basis[0], basis[1]);
  if (d.is_zero()) throw DegenerateLattice("basis is degenerate to the working precision");
  const EElem inv = d.inverse();
  return {det2(v, basis[1]) * inv, det2(basis[0], v) * inv};
}

bool integral(const EElem& x) {
  const auto v = x.valuation();
  return !v || *v >= 0;
}

bool is_unit(const EElem& x) {
  const auto v = x.valuation();
  return v && *v == 0;
}

// u with x = Pi^v(x) * u, u a unit of O_E.
OE unit_part(const OE& x) {
  const auto v = x.valuation();
  if (!v) throw PrecisionExhausted("unit part of a value that is zero to precision");
  OE u = x;
  for (int i = 0; i < *v; ++i) u = u.div_uniformizer();
  return u;
}

}  // namespace

EElem herm(const Vec2& x, const Vec2& y) { return x[0] * y[1].conj() + x[1] * y[0].conj(); }

FElem herm_norm(const Vec2& x) { return (x[0] * x[1].conj()).trace(); }

// ---------------------------------------------------------------------------
// LatticeKey

LatticeKey LatticeKey::shifted(int n) const {
  LatticeKey k = *this;
  k.a += n;
  k.b += n;
  k.start += n;
  return k;
}

std::string LatticeKey::to_string() const {
  std::ostringstream os;
  os << a << '/' << b << '/' << start << '/';
  for (std::size_t i = 0; i < digits.size(); ++i) os << (i ? "," : "") << digits[i];
  return os.str();
}

LatticeKey LatticeKey::parse(const std::string& s) {
  LatticeKey k;
  std::istringstream is(s);
  char sep1 = 0, sep2 = 0, sep3 = 0;
  if (!(is >> k.a >> sep1 >> k.b >> sep2 >> k.start >> sep3) || sep1 != '/' || sep2 != '/' || sep3 != '/')
    throw FormatError("malformed lattice key '" + s + "'");
  std::string rest;
  std::getline(is, rest);
  std::istringstream ds(rest);
  std::string tok;
  while (std::getline(ds, tok, ',')) {
    if (tok.empty()) continue;
    try {
      k.digits.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw FormatError("malformed digit in lattice key '" + s + "'");
    }
  }
  if (static_cast<int>(k.digits.size()) != k.a - k.start || (!k.digits.empty() && k.digits.front() == 0))
    throw FormatError("inconsistent lattice key '" + s + "'");
  return k;
}

// ---------------------------------------------------------------------------
// Lattice

Lattice Lattice::from_key(const Extension& ext, const LatticeKey& key) {
  if (!ext.ramified()) throw InvalidExtension("lattices are classified over ramified extensions");
  Lattice lat;
  lat.ext_ = &ext;
  lat.key_ = key;
  EElem c = ezero(ext);
  if (!key.digits.empty()) c = EElem(OE::from_digits(ext, 0, key.digits)) * EElem::pi_pow(ext, key.start);
  lat.basis_ = {Vec2{EElem::pi_pow(ext, key.a), ezero(ext)}, Vec2{c, EElem::pi_pow(ext, key.b)}};
  return lat;
}

Lattice Lattice::standard(const Extension& ext) { return from_key(ext, LatticeKey{}); }

Lattice Lattice::from_basis(const Extension& ext, const Basis& basis) {
  if (!ext.ramified()) throw InvalidExtension("lattices are classified over ramified extensions");
  int minv = INT_MAX;
  for (const auto& col : basis)
    for (const auto& x : col)
      if (const auto v = x.valuation()) minv = std::min(minv, *v);
  if (minv == INT_MAX) throw DegenerateLattice("all basis entries are zero to precision");
  const int m = minv < 0 ? -minv : 0;
  const EElem scale_m = EElem::pi_pow(ext, m);
  std::array<std::array<OE, 2>, 2> M;  // M[column][row]
  for (int j = 0; j < 2; ++j)
    for (int r = 0; r < 2; ++r) M[j][r] = (basis[j][r] * scale_m).to_integral();

  const auto v21 = M[0][1].valuation();
  const auto v22 = M[1][1].valuation();
  if (!v21 && !v22) throw DegenerateLattice("generators are dependent to the working precision");
  if (!v22 || (v21 && *v21 < *v22)) std::swap(M[0], M[1]);
  OE x = M[0][0];
  if (!M[0][1].is_zero()) x = x - M[0][1].divide(M[1][1]) * M[1][0];
  const auto va = x.valuation();
  if (!va) throw DegenerateLattice("generators are dependent to the working precision");
  const int a = *va;
  const int b = *M[1][1].valuation();
  const OE c = M[1][0] * unit_part(M[1][1]).inverse();

  LatticeKey key;
  key.a = a;
  key.b = b;
  key.start = a;
  if (a > 0) {
    if (a > c.prec()) throw PrecisionExhausted("off-diagonal entry is not known modulo the diagonal");
    const auto d = c.digits(a);
    const auto first = std::find_if(d.begin(), d.end(), [](std::uint32_t v) { return v != 0; });
    key.start = static_cast<int>(first - d.begin());
    key.digits.assign(first, d.end());
  }
  return from_key(ext, key.shifted(-m));
}

Vec2 coordinates(const Lattice& lat, const Vec2& v) {
  const auto& k = lat.key();
  const Extension& ext = lat.ext();
  const EElem x2 = v[1] * EElem::pi_pow(ext, -k.b);
  const EElem x1 = (v[0] - lat.basis()[1][0] * x2) * EElem::pi_pow(ext, -k.a);
  return {x1, x2};
}

bool contains(const Lattice& outer, const Vec2& v) {
  const Vec2 x = coordinates(outer, v);
  return integral(x[0]) && integral(x[1]);
}

bool contains(const Lattice& outer, const Lattice& inner) {
  return contains(outer, inner.basis()[0]) && contains(outer, inner.basis()[1]);
}

Gram gram(const Extension&, const Basis& basis) {
  Gram g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g[i][j] = herm(basis[i], basis[j]);
  return g;
}

Gram gram(const Lattice& lat) { return gram(lat.ext(), lat.basis()); }

Lattice dual_lattice(const Lattice& lat) {
  const Extension& ext = lat.ext();
  const Basis& B = lat.basis();
  // dual basis = H conj(B)^{-T}; the factor 1/conj(det B) is replaced by the
  // Pi-power of the same valuation, which spans the same lattice.
  const auto vd = det2(B[0], B[1]).valuation();
  if (!vd) throw DegenerateLattice("basis is degenerate to the working precision");
  const EElem s = EElem::pi_pow(ext, -*vd);
  const Vec2 c1{-B[1][0].conj() * s, B[1][1].conj() * s};
  const Vec2 c2{B[0][0].conj() * s, -B[0][1].conj() * s};
  return Lattice::from_basis(ext, {c1, c2});
}

bool is_pi_modular(const Lattice& lat, int i) { return dual_lattice(lat).scaled(i) == lat; }

std::optional<int> modularity(const Lattice& lat) {
  const int i = lat.key().a + lat.key().b;
  if (is_pi_modular(lat, i)) return i;
  return std::nullopt;
}

int norm_exponent(const Lattice& lat) {
  const Extension& ext = lat.ext();
  const Basis& B = lat.basis();
  const EElem g12 = herm(B[0], B[1]);
  const FElem gens[4] = {herm_norm(B[0]), herm_norm(B[1]), g12.trace(), (EElem(ext.gen()) * g12).trace()};
  int best = INT_MAX;
  for (const auto& g : gens)
    if (const auto v = g.valuation()) best = std::min(best, *v);
  for (const auto& g : gens)
    if (g.is_zero() && g.abs_prec() <= best)
      throw PrecisionExhausted("norm ideal generator is not resolved at the working precision");
  if (best == INT_MAX) throw PrecisionExhausted("norm ideal is zero to precision");
  return best;
}

bool supported_modularity(const Extension& ext, int i) {
  switch (ext.kind()) {
    case ExtKind::RP: return i == 0 || i == -1;
    case ExtKind::RU: return i == 0 || i == 1;
    case ExtKind::UNRAM: return false;
  }
  return false;
}

int hyperbolic_norm_exponent(const Extension& ext) {
  switch (ext.kind()) {
    case ExtKind::RP: return ext.e();
    case ExtKind::RU: return ext.vt();
    case ExtKind::UNRAM: break;
  }
  throw InvalidExtension("hyperbolicity is classified for ramified extensions only");
}

bool is_hyperbolic(const Lattice& lat, int i) {
  if (!supported_modularity(lat.ext(), i))
    throw UnsupportedModularity("modularity " + std::to_string(i) + " is not classified for " +
                                to_string(lat.ext().kind()));
  if (!is_pi_modular(lat, i))
    throw UnsupportedModularity("lattice is not Pi^" + std::to_string(i) + "-modular");
  return norm_exponent(lat) == hyperbolic_norm_exponent(lat.ext());
}

NormalForm normal_form_basis(const Lattice& lat, int i) {
  if (!is_pi_modular(lat, i)) throw UnsupportedModularity("lattice is not Pi^" + std::to_string(i) + "-modular");
  const Extension& ext = lat.ext();
  // (Pi^a, 0) is a primitive isotropic vector, completed by the second
  // canonical column.
  const Vec2& v = lat.basis()[0];
  const Vec2& w = lat.basis()[1];
  const EElem hwv = herm(w, v);
  const auto vh = hwv.valuation();
  if (!vh || *vh != i) throw LiftStall("pairing of the isotropic vector does not match the modularity");
  const EElem pibar_i = EElem::pi_pow(ext, i).conj();
  Vec2 f1 = scale(w, pibar_i * hwv.inverse());
  const Vec2 f2 = v;
  FElem x = herm_norm(f1);

  // h(f1 + mu f2, f1 + mu f2) = x + Tr(mu Pi^i): clear x when it lies in Tr(Pi^i O_E).
  const EElem pi_i = EElem::pi_pow(ext, i);
  EElem nu = eone(ext);
  FElem g = (nu * pi_i).trace();
  const FElem g_alt = (EElem(ext.gen()) * pi_i).trace();
  if (!g_alt.is_zero() && (g.is_zero() || *g_alt.valuation() < *g.valuation())) {
    nu = EElem(ext.gen());
    g = g_alt;
  }
  const auto vx = x.valuation();
  if (!vx || *vx >= *g.valuation()) {
    const EElem mu = -EElem::from_f(ext, x / g) * nu;
    f1 = add(f1, scale(f2, mu));
    x = herm_norm(f1);
  }
  NormalForm nf;
  nf.basis = {f1, f2};
  nf.x = x;
  nf.gram = gram(ext, nf.basis);
  return nf;
}

Vec2 find_isotropic_vector(const Lattice& lat, const Basis* preferred) {
  const Basis& pref = preferred ? *preferred : lat.basis();
  std::vector<Vec2> candidates{lat.basis()[0]};
  if (const auto i = modularity(lat)) {
    const NormalForm nf = normal_form_basis(lat, *i);
    if (nf.x.is_zero()) {
      candidates.push_back(nf.basis[1]);
      candidates.push_back(nf.basis[0]);
    }
  }
  for (const auto& c : candidates)
    if (is_unit(solve_in(pref, c)[0])) return c;
  return candidates.front();
}

Lattice witness_lattice(const Extension& ext, int i, std::optional<int> ell) {
  const Field& F = ext.field();
  EElem y = ezero(ext);
  if (ell) {
    const FElem x = FElem::pi0_pow(F, *ell);
    if (ext.kind() == ExtKind::RP)
      y = EElem::from_f(ext, x / FElem::from_int(F, 2));
    else if (ext.kind() == ExtKind::RU)
      y = EElem::from_f(ext, x / FElem(ext.t())) * EElem(ext.gen());
    else
      throw InvalidExtension("witness lattices are built for ramified extensions");
  }
  const Vec2 f1{eone(ext), y};
  const Vec2 f2{ezero(ext), EElem::pi_pow(ext, i)};
  return Lattice::from_basis(ext, {f1, f2});
}

std::vector<Vec2> residue_lines(const Lattice& lat) {
  const Extension& ext = lat.ext();
  const Basis& B = lat.basis();
  std::vector<Vec2> out;
  for (std::uint32_t d = 0; d < static_cast<std::uint32_t>(ext.q()); ++d)
    out.push_back(add(B[0], scale(B[1], lift_digit(ext, d))));
  out.push_back(B[1]);
  return out;
}

std::vector<Lattice> sublattices_index1(const Lattice& lat) {
  const Extension& ext = lat.ext();
  const Basis& B = lat.basis();
  const EElem pi(ext.gen());
  const Vec2 pb1 = scale(B[0], pi);
  const Vec2 pb2 = scale(B[1], pi);
  std::vector<Lattice> out;
  const auto lines = residue_lines(lat);
  for (std::size_t j = 0; j + 1 < lines.size(); ++j) out.push_back(Lattice::from_basis(ext, {lines[j], pb2}));
  out.push_back(Lattice::from_basis(ext, {B[1], pb1}));
  return out;
}

std::vector<Lattice> superlattices_index1(const Lattice& lat) {
  std::vector<Lattice> out;
  for (const auto& m : sublattices_index1(dual_lattice(lat))) out.push_back(dual_lattice(m));
  return out;
}

int isotropic_line_count(const Lattice& lat) {
  if (!is_pi_modular(lat, 0)) throw UnsupportedModularity("the induced form is defined on unimodular lattices");
  int count = 0;
  for (const auto& v : residue_lines(lat)) {
    const auto val = herm_norm(v).valuation();
    if (!val || *val >= 1) ++count;
  }
  return count;
}

}  // namespace rzlab
