#include "rzlab/padic.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace rzlab {

namespace {

int ctz64(std::uint64_t v) { return std::countr_zero(v); }

std::uint64_t reduce(std::int64_t v, std::uint64_t mask) {
  return static_cast<std::uint64_t>(v) & mask;
}

// Polynomial over F_2 as a bit mask, lowest degree in bit 0.
std::uint32_t poly_mod2_bits(const IntPoly& p) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] & 1) bits |= (1u << i);
  return bits;
}

int bits_degree(std::uint32_t v) { return v == 0 ? -1 : 31 - std::countl_zero(v); }

std::uint32_t bits_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = bits_degree(m);
  for (int d = bits_degree(a); d >= dm; d = bits_degree(a)) a ^= (m << (d - dm));
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

bool Field::irreducible_mod2(const IntPoly& poly) {
  const std::uint32_t g = poly_mod2_bits(poly);
  const int deg = bits_degree(g);
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // trial division by every polynomial of degree 1 .. deg/2
  for (std::uint32_t h = 2; bits_degree(h) <= deg / 2; ++h) {
    if (bits_mod(g, h) == 0) return false;
  }
  return true;
}

IntPoly Field::default_unramified_poly(int f) {
  if (f == 1) return {0, 1};
  for (std::uint32_t low = 1; low < (1u << f); ++low) {
    IntPoly p(f + 1, 0);
    for (int i = 0; i < f; ++i) p[i] = (low >> i) & 1;
    p[f] = 1;
    if (irreducible_mod2(p)) return p;
  }
  throw ReducibleUnramifiedPoly("no irreducible polynomial of degree " + std::to_string(f));
}

std::vector<IntPoly> Field::default_eisenstein(int e, int f) {
  if (f < 1 || e < 1) throw InvalidEisenstein("degrees must be positive");
  std::vector<IntPoly> poly(e + 1, IntPoly(f, 0));
  poly[0][0] = -2;
  poly[e][0] = 1;
  return poly;
}

std::shared_ptr<const Field> Field::make(int f, int e, const std::vector<IntPoly>& eisenstein,
                                         int precision, IntPoly unram_min_poly) {
  if (f < 1 || e < 1 || e * f > kMaxFieldDegree)
    throw InvalidEisenstein("unsupported degrees f=" + std::to_string(f) + ", e=" + std::to_string(e) +
                            " (need e*f <= " + std::to_string(kMaxFieldDegree) + ")");
  if (precision < 1) throw PrecisionExhausted("precision must be positive");

  std::shared_ptr<Field> field(new Field());
  field->f_ = f;
  field->e_ = e;
  field->precision_ = precision;
  field->bits_ = (precision + e - 1) / e + 1;
  if (field->bits_ > 62) throw PrecisionExhausted("precision too large for 64-bit limbs");
  field->mask_ = (std::uint64_t{1} << field->bits_) - 1;
  const std::uint64_t mask = field->mask_;

  if (unram_min_poly.empty()) unram_min_poly = default_unramified_poly(f);
  while (unram_min_poly.size() > 1 && unram_min_poly.back() == 0) unram_min_poly.pop_back();
  if (static_cast<int>(unram_min_poly.size()) != f + 1 || unram_min_poly[f] != 1)
    throw ReducibleUnramifiedPoly("unramified polynomial must be monic of degree f");
  if (!irreducible_mod2(unram_min_poly))
    throw ReducibleUnramifiedPoly("unramified polynomial is reducible modulo 2");
  field->unram_ = unram_min_poly;
  field->unram_bits_ = poly_mod2_bits(unram_min_poly) & ((1u << f) - 1);

  // zeta^f = -sum_{j<f} g_j zeta^j, then successive multiples by zeta
  std::vector<std::uint64_t> cur(f);
  for (int j = 0; j < f; ++j) cur[j] = reduce(-unram_min_poly[j], mask);
  for (int k = 0; k + 1 < f; ++k) {
    field->zeta_red_.push_back(cur);
    std::vector<std::uint64_t> next(f, 0);
    const std::uint64_t top = cur[f - 1];
    for (int j = f - 1; j > 0; --j) next[j] = cur[j - 1];
    for (int j = 0; j < f; ++j) next[j] = (next[j] + top * reduce(-unram_min_poly[j], mask)) & mask;
    cur = next;
  }

  // Eisenstein polynomial over W
  if (static_cast<int>(eisenstein.size()) != e + 1)
    throw InvalidEisenstein("Eisenstein polynomial must have e+1 coefficients");
  std::vector<IntPoly> eis = eisenstein;
  for (auto& c : eis) {
    if (static_cast<int>(c.size()) > f) throw InvalidEisenstein("coefficient longer than f");
    c.resize(f, 0);
  }
  if (eis[e][0] != 1 || std::any_of(eis[e].begin() + 1, eis[e].end(), [](auto v) { return v != 0; }))
    throw InvalidEisenstein("Eisenstein polynomial must be monic");
  for (int j = 0; j < e; ++j) {
    for (auto v : eis[j])
      if (v % 2 != 0) throw InvalidEisenstein("non-leading coefficients must be divisible by 2");
  }
  bool unit_constant = false;
  for (auto v : eis[0])
    if ((v / 2) % 2 != 0) unit_constant = true;
  if (!unit_constant) throw InvalidEisenstein("constant term must be 2 times a unit");
  field->eisenstein_ = eis;
  for (int j = 0; j < e; ++j) {
    std::vector<std::uint64_t> w(f);
    for (int i = 0; i < f; ++i) w[i] = reduce(-eis[j][i], mask);
    field->neg_eis_.push_back(w);
  }

  // 2/pi = -u0^{-1} (pi^{e-1} + sum_{j=1}^{e-1} a_j pi^{j-1}) with a_0 = 2 u0
  {
    const Field& F = *field;
    Coeffs u0{};
    for (int i = 0; i < f; ++i) u0[i] = reduce(eis[0][i] / 2, mask);
    // Newton iteration for the inverse in W
    Coeffs y{};
    {
      std::uint32_t r = 0;
      for (int i = 0; i < f; ++i) r |= static_cast<std::uint32_t>(u0[i] & 1) << i;
      const std::uint32_t rinv = F.residue_inv(r);
      for (int i = 0; i < f; ++i) y[i] = (rinv >> i) & 1;
    }
    for (int good = 1; good < F.bits_; good *= 2) {
      Coeffs uy{}, corr{}, next{};
      F.w_mul(u0.data(), y.data(), uy.data());
      for (int i = 0; i < f; ++i) corr[i] = ((i == 0 ? 2 : 0) - uy[i]) & mask;
      F.w_mul(y.data(), corr.data(), next.data());
      y = next;
    }
    Coeffs poly{};
    for (int j = 1; j < e; ++j)
      for (int i = 0; i < f; ++i) poly[(j - 1) * f + i] = reduce(eis[j][i], mask);
    poly[(e - 1) * f] = (poly[(e - 1) * f] + 1) & mask;
    Coeffs out{};
    for (int b = 0; b < e; ++b) {
      F.w_mul(y.data(), poly.data() + b * f, out.data() + b * f);
      for (int i = 0; i < f; ++i) out[b * f + i] = (0 - out[b * f + i]) & mask;
    }
    field->two_over_pi_ = out;

    // pi^e = 2 w with w = -(u0 + sum_{j=1}^{e-1} (a_j / 2) pi^j), so 2 / pi^e = w^{-1}
    Coeffs w{};
    for (int j = 0; j < e; ++j)
      for (int i = 0; i < f; ++i) w[j * f + i] = reduce(-(eis[j][i] / 2), mask);
    field->two_unit_ = OF(F, w, precision).inverse().raw();
  }
  return field;
}

std::uint32_t Field::residue_mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t prod = 0;
  for (int i = 0; i < f_; ++i)
    if ((b >> i) & 1) prod ^= (a << i);
  const std::uint32_t modulus = unram_bits_ | (1u << f_);
  return bits_mod(prod, modulus);
}

std::uint32_t Field::residue_inv(std::uint32_t a) const {
  if (a == 0) throw NotAUnit("zero has no inverse in the residue field");
  for (std::uint32_t b = 1; b < static_cast<std::uint32_t>(q()); ++b)
    if (residue_mul(a, b) == 1) return b;
  throw NotAUnit("residue field inverse not found");
}

void Field::w_mul(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out) const {
  std::uint64_t tmp[2 * kMaxFieldDegree] = {};
  for (int i = 0; i < f_; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < f_; ++j) tmp[i + j] += x[i] * y[j];
  }
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    const std::uint64_t top = tmp[d];
    if (top == 0) continue;
    const auto& red = zeta_red_[d - f_];
    for (int j = 0; j < f_; ++j) tmp[j] += top * red[j];
  }
  for (int j = 0; j < f_; ++j) out[j] = tmp[j] & mask_;
}

void Field::raw_mul(const Coeffs& x, const Coeffs& y, Coeffs& out) const {
  const int f = f_;
  const int e = e_;
  std::uint64_t blocks[2 * kMaxFieldDegree][kMaxFieldDegree] = {};
  std::uint64_t prod[kMaxFieldDegree];
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < e; ++j) {
      w_mul(x.data() + i * f, y.data() + j * f, prod);
      for (int k = 0; k < f; ++k) blocks[i + j][k] += prod[k];
    }
  }
  for (int d = 2 * e - 2; d >= e; --d) {
    for (int k = 0; k < f; ++k) blocks[d][k] &= mask_;
    for (int j = 0; j < e; ++j) {
      w_mul(blocks[d], neg_eis_[j].data(), prod);
      for (int k = 0; k < f; ++k) blocks[d - e + j][k] += prod[k];
    }
  }
  out.fill(0);
  for (int i = 0; i < e; ++i)
    for (int k = 0; k < f; ++k) out[i * f + k] = blocks[i][k] & mask_;
}

void Field::raw_mul_pi(Coeffs& x) const {
  const int f = f_;
  const int e = e_;
  std::uint64_t top[kMaxFieldDegree];
  for (int k = 0; k < f; ++k) top[k] = x[(e - 1) * f + k];
  for (int i = e - 1; i > 0; --i)
    for (int k = 0; k < f; ++k) x[i * f + k] = x[(i - 1) * f + k];
  for (int k = 0; k < f; ++k) x[k] = 0;
  std::uint64_t prod[kMaxFieldDegree];
  for (int j = 0; j < e; ++j) {
    w_mul(top, neg_eis_[j].data(), prod);
    for (int k = 0; k < f; ++k) x[j * f + k] = (x[j * f + k] + prod[k]) & mask_;
  }
}

OF Field::zero() const { return OF(*this, Coeffs{}, precision_); }

OF Field::one() const { return from_int(1); }

OF Field::from_int(std::int64_t v) const {
  Coeffs c{};
  c[0] = reduce(v, mask_);
  return OF(*this, c, precision_);
}

OF Field::uniformizer() const {
  if (e_ == 1) {
    Coeffs c{};
    for (int j = 0; j < f_; ++j) c[j] = neg_eis_[0][j];
    return OF(*this, c, precision_);
  }
  Coeffs c{};
  c[f_] = 1;
  return OF(*this, c, precision_);
}

// ---------------------------------------------------------------------------
// OF

OF::OF(const Field& field, const Coeffs& coeffs, int prec)
    : field_(&field), c_(coeffs), prec_(std::min(prec, field.precision())) {
  for (auto& v : c_) v &= field.mask();
}

OF OF::from_coeffs(const Field& field, const std::vector<IntPoly>& blocks) {
  if (static_cast<int>(blocks.size()) > field.e()) throw FormatError("too many pi-blocks for an O_F element");
  Coeffs c{};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (static_cast<int>(blocks[i].size()) > field.f()) throw FormatError("block longer than f");
    for (std::size_t j = 0; j < blocks[i].size(); ++j) c[i * field.f() + j] = reduce(blocks[i][j], field.mask());
  }
  return OF(field, c, field.precision());
}

OF OF::lift_residue(const Field& field, std::uint32_t bits) {
  Coeffs c{};
  for (int j = 0; j < field.f(); ++j) c[j] = (bits >> j) & 1;
  return OF(field, c, field.precision());
}

std::optional<int> OF::valuation() const {
  const int f = field_->f();
  const int e = field_->e();
  int best = prec_;
  for (int i = 0; i < e; ++i) {
    int v2 = 64;
    for (int j = 0; j < f; ++j) {
      const std::uint64_t v = c_[i * f + j];
      if (v != 0) v2 = std::min(v2, ctz64(v));
    }
    if (v2 < 64) best = std::min(best, e * v2 + i);
  }
  if (best >= prec_) return std::nullopt;
  return best;
}

bool OF::is_unit() const {
  const auto v = valuation();
  return v && *v == 0;
}

std::uint32_t OF::residue() const {
  std::uint32_t r = 0;
  if (prec_ < 1) throw PrecisionExhausted("residue of a value with no known digits");
  for (int j = 0; j < field_->f(); ++j) r |= static_cast<std::uint32_t>(c_[j] & 1) << j;
  return r;
}

OF OF::operator+(const OF& o) const {
  Coeffs c;
  const std::uint64_t mask = field_->mask();
  for (int i = 0; i < kMaxFieldDegree; ++i) c[i] = (c_[i] + o.c_[i]) & mask;
  return OF(*field_, c, std::min(prec_, o.prec_));
}

OF OF::operator-(const OF& o) const {
  Coeffs c;
  const std::uint64_t mask = field_->mask();
  for (int i = 0; i < kMaxFieldDegree; ++i) c[i] = (c_[i] - o.c_[i]) & mask;
  return OF(*field_, c, std::min(prec_, o.prec_));
}

OF OF::operator-() const {
  Coeffs c;
  const std::uint64_t mask = field_->mask();
  for (int i = 0; i < kMaxFieldDegree; ++i) c[i] = (0 - c_[i]) & mask;
  return OF(*field_, c, prec_);
}

OF OF::operator*(const OF& o) const {
  Coeffs c;
  field_->raw_mul(c_, o.c_, c);
  const int va = valuation().value_or(prec_);
  const int vb = o.valuation().value_or(o.prec_);
  return OF(*field_, c, std::min(prec_ + vb, o.prec_ + va));
}

OF OF::mul_pi_pow(int k) const {
  if (k < 0) return div_pi_pow(-k);
  Coeffs c = c_;
  for (int i = 0; i < k; ++i) field_->raw_mul_pi(c);
  return OF(*field_, c, prec_ + k);
}

OF OF::div_pi_pow(int k) const {
  if (k < 0) return mul_pi_pow(-k);
  const int f = field_->f();
  const int e = field_->e();
  Coeffs c = c_;
  int prec = prec_;
  for (int step = 0; step < k; ++step) {
    if (prec - 1 < 1) throw PrecisionExhausted("division by pi_0 exhausts the available precision");
    for (int j = 0; j < f; ++j)
      if (c[j] & 1) throw InexactDivision("element is not divisible by pi_0");
    std::uint64_t half[kMaxFieldDegree];
    for (int j = 0; j < f; ++j) half[j] = c[j] >> 1;
    Coeffs next{};
    for (int i = 0; i + 1 < e; ++i)
      for (int j = 0; j < f; ++j) next[i * f + j] = c[(i + 1) * f + j];
    const Coeffs& top = field_->raw_two_over_pi();
    std::uint64_t prod[kMaxFieldDegree];
    for (int b = 0; b < e; ++b) {
      field_->w_mul(half, top.data() + b * f, prod);
      for (int j = 0; j < f; ++j) next[b * f + j] = (next[b * f + j] + prod[j]) & field_->mask();
    }
    c = next;
    --prec;
  }
  return OF(*field_, c, prec);
}

OF OF::inverse() const {
  if (!is_unit()) throw NotAUnit("element is not a unit to the available precision");
  const Field& F = *field_;
  const OF x(F, c_, F.precision());
  OF y = lift_residue(F, F.residue_inv(residue()));
  const OF two = F.from_int(2);
  for (int good = 1; good < F.precision(); good *= 2) y = y * (two - x * y);
  return OF(F, y.c_, prec_);
}

OF OF::with_prec(int p) const { return OF(*field_, c_, std::min(p, prec_)); }

std::vector<std::uint32_t> OF::digits(int n) const {
  std::vector<std::uint32_t> out;
  out.reserve(n);
  OF x = *this;
  for (int i = 0; i < n; ++i) {
    if (i >= prec_) throw PrecisionExhausted("digit requested beyond the available precision");
    const std::uint32_t d = x.residue();
    out.push_back(d);
    if (i + 1 < n) x = (x - lift_residue(*field_, d)).div_pi_pow(1);
  }
  return out;
}

std::vector<IntPoly> OF::coefficients() const {
  const int f = field_->f();
  std::vector<IntPoly> out(field_->e(), IntPoly(f, 0));
  for (int i = 0; i < field_->e(); ++i)
    for (int j = 0; j < f; ++j) out[i][j] = static_cast<std::int64_t>(c_[i * f + j]);
  return out;
}

std::string OF::to_string() const {
  std::ostringstream os;
  os << '[';
  const auto blocks = coefficients();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      // Symmetric representative, so -1 prints as -1.
      const auto u = static_cast<std::uint64_t>(blocks[i][j]);
      os << (j ? "," : "") << (u > field_->mask() / 2 ? -static_cast<std::int64_t>(field_->mask() - u) - 1 : blocks[i][j]);
    }
    os << ']';
  }
  os << "]+O(pi^" << prec_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// FElem

FElem::FElem(OF m, int k) : m_(std::move(m)), k_(k) {
  const auto v = m_.valuation();
  if (v && *v > 0) {
    m_ = m_.div_pi_pow(*v);
    k_ += *v;
  }
}

FElem FElem::from_int(const Field& field, std::int64_t v) {
  if (v == 0) return FElem(field.zero());
  int twos = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++twos;
  }
  OF m = field.from_int(v);
  const OF unit(field, field.raw_two_unit(), field.precision());
  for (int i = 0; i < twos; ++i) m = m * unit;
  return FElem(m, twos * field.e());
}

FElem FElem::pi0_pow(const Field& field, int k) { return FElem(field.one(), k); }

std::optional<int> FElem::valuation() const {
  const auto v = m_.valuation();
  if (!v) return std::nullopt;
  return *v + k_;
}

FElem FElem::operator+(const FElem& o) const {
  const int k = std::min(k_, o.k_);
  return FElem(m_.mul_pi_pow(k_ - k) + o.m_.mul_pi_pow(o.k_ - k), k);
}

FElem FElem::operator-(const FElem& o) const {
  const int k = std::min(k_, o.k_);
  return FElem(m_.mul_pi_pow(k_ - k) - o.m_.mul_pi_pow(o.k_ - k), k);
}

FElem FElem::inverse() const {
  const auto v = m_.valuation();
  if (!v) throw PrecisionExhausted("division by a value that is zero to precision");
  return FElem(m_.div_pi_pow(*v).inverse(), -k_ - *v);
}

OF FElem::to_integral() const {
  if (k_ >= 0) return m_.mul_pi_pow(k_);
  return m_.div_pi_pow(-k_);
}

std::string FElem::to_string() const {
  return "pi0^" + std::to_string(k_) + "*" + m_.to_string();
}

// ---------------------------------------------------------------------------
// Extension

std::string to_string(ExtKind kind) {
  switch (kind) {
    case ExtKind::RP: return "RP";
    case ExtKind::RU: return "RU";
    case ExtKind::UNRAM: return "UNRAM";
  }
  return "?";
}

ExtKind ext_kind_from_string(const std::string& s) {
  std::string up = s;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (up == "RP") return ExtKind::RP;
  if (up == "RU") return ExtKind::RU;
  if (up == "UNRAM") return ExtKind::UNRAM;
  throw FormatError("unknown extension kind '" + s + "'");
}

std::uint32_t artin_schreier_nonsplit_class(const Field& field) {
  for (std::uint32_t r = 1; r < static_cast<std::uint32_t>(field.q()); ++r) {
    bool has_root = false;
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(field.q()) && !has_root; ++x)
      has_root = (field.residue_mul(x, x) ^ x ^ r) == 0;
    if (!has_root) return r;
  }
  throw ReducibleUnramifiedPoly("no Artin-Schreier non-split class");
}

std::shared_ptr<const Extension> Extension::make_rp(std::shared_ptr<const Field> field) {
  std::shared_ptr<Extension> ext(new Extension());
  ext->kind_ = ExtKind::RP;
  ext->pi0_ = field->uniformizer();
  ext->s_ = field->zero();
  ext->c_ = ext->pi0_;
  ext->u_ = OF::lift_residue(*field, artin_schreier_nonsplit_class(*field));
  ext->field_ = std::move(field);
  return ext;
}

std::shared_ptr<const Extension> Extension::make_ru(std::shared_ptr<const Field> field, const OF& t) {
  const auto vt = t.valuation();
  if (!vt || *vt < 1 || *vt > field->e())
    throw InvalidExtension("RU parameter t must satisfy pi_0 | t | 2, i.e. 1 <= v(t) <= e");
  std::shared_ptr<Extension> ext(new Extension());
  ext->kind_ = ExtKind::RU;
  ext->pi0_ = field->uniformizer();
  ext->s_ = OF(*field, t.raw(), field->precision());
  ext->c_ = ext->pi0_;
  ext->vt_ = *vt;
  ext->u_ = OF::lift_residue(*field, artin_schreier_nonsplit_class(*field));
  ext->field_ = std::move(field);
  return ext;
}

std::shared_ptr<const Extension> Extension::make_unramified(std::shared_ptr<const Field> field) {
  std::shared_ptr<Extension> ext(new Extension());
  ext->kind_ = ExtKind::UNRAM;
  ext->pi0_ = field->uniformizer();
  ext->s_ = field->one();
  ext->u_ = OF::lift_residue(*field, artin_schreier_nonsplit_class(*field));
  ext->c_ = -ext->u_;
  ext->field_ = std::move(field);
  return ext;
}

const OF& Extension::t() const {
  if (kind_ != ExtKind::RU) throw NotRUCase("t is only defined for RU extensions");
  return s_;
}

int Extension::vt() const {
  if (kind_ != ExtKind::RU) throw NotRUCase("v(t) is only defined for RU extensions");
  return vt_;
}

OE Extension::zero() const { return OE(*this, field_->zero(), field_->zero()); }
OE Extension::one() const { return OE(*this, field_->one(), field_->zero()); }
OE Extension::gen() const { return OE(*this, field_->zero(), field_->one()); }
OE Extension::from_of(const OF& a) const { return OE(*this, a, field_->zero()); }

// ---------------------------------------------------------------------------
// OE

OE OE::operator*(const OE& o) const {
  const OF bd = b_ * o.b_;
  return OE(*ext_, a_ * o.a_ - bd * ext_->c(), a_ * o.b_ + b_ * o.a_ + bd * ext_->s());
}

OE OE::conj() const { return OE(*ext_, a_ + ext_->s() * b_, -b_); }

OF OE::trace() const { return a_ + a_ + ext_->s() * b_; }

OF OE::norm() const { return a_ * a_ + ext_->s() * a_ * b_ + ext_->c() * b_ * b_; }

int OE::prec() const {
  if (ext_->ramified()) return std::min(2 * a_.prec(), 2 * b_.prec() + 1);
  return std::min(a_.prec(), b_.prec());
}

std::optional<int> OE::valuation() const {
  constexpr int kInf = 1 << 30;
  const auto va = a_.valuation();
  const auto vb = b_.valuation();
  int v;
  if (ext_->ramified())
    v = std::min(va ? 2 * *va : kInf, vb ? 2 * *vb + 1 : kInf);
  else
    v = std::min(va.value_or(kInf), vb.value_or(kInf));
  if (v >= prec()) return std::nullopt;
  return v;
}

bool OE::is_unit() const {
  const auto v = valuation();
  return v && *v == 0;
}

std::uint32_t OE::residue() const {
  if (!ext_->ramified()) throw InvalidExtension("residue digits are only provided for ramified E");
  return a_.residue();
}

OE OE::div_uniformizer() const {
  if (!ext_->ramified()) return div_pi0_pow(1);
  const OF a1 = a_.div_pi_pow(1);
  return OE(*ext_, b_ + a1 * ext_->s(), -a1);
}

OE OE::inverse() const {
  const OF n = norm();
  if (!n.is_unit()) throw NotAUnit("O_E element is not a unit");
  return conj() * n.inverse();
}

OE OE::divide(const OE& d) const {
  const OF n = d.norm();
  const auto vn = n.valuation();
  if (!vn) throw PrecisionExhausted("division by a value that is zero to precision");
  const OE z = (*this * d.conj()).div_pi0_pow(*vn);
  return z * n.div_pi_pow(*vn).inverse();
}

std::vector<std::uint32_t> OE::digits(int n) const {
  std::vector<std::uint32_t> out;
  out.reserve(n);
  OE x = *this;
  for (int i = 0; i < n; ++i) {
    if (i >= prec()) throw PrecisionExhausted("digit requested beyond the available precision");
    const std::uint32_t d = x.residue();
    out.push_back(d);
    if (i + 1 < n) x = (x - ext_->from_of(OF::lift_residue(ext_->field(), d))).div_uniformizer();
  }
  return out;
}

OE OE::from_digits(const Extension& ext, int start, const std::vector<std::uint32_t>& digits) {
  OE x = ext.zero();
  const OE pi = ext.gen();
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    x = x * pi + ext.from_of(OF::lift_residue(ext.field(), *it));
  for (int i = 0; i < start; ++i) x = x * pi;
  return x;
}

std::string OE::to_string() const { return "(" + a_.to_string() + ") + (" + b_.to_string() + ")*X"; }

// ---------------------------------------------------------------------------
// EElem

EElem::EElem(OE m, int k) : m_(std::move(m)), k_(k) {
  const auto v = m_.valuation();
  if (!v) return;
  const int shift = m_.ext().ramified() ? *v / 2 : *v;
  if (shift > 0) {
    m_ = m_.div_pi0_pow(shift);
    k_ += shift;
  }
}

EElem EElem::from_f(const Extension& ext, const FElem& x) {
  return EElem(OE(ext, x.mantissa(), ext.field().zero()), x.shift());
}

EElem EElem::pi_pow(const Extension& ext, int n) {
  if (!ext.ramified()) throw InvalidExtension("Pi is only defined for ramified E");
  const OE base = n >= 0 ? ext.gen() : ext.gen().conj();
  OE x = ext.one();
  for (int i = 0; i < std::abs(n); ++i) x = x * base;
  return EElem(x, n >= 0 ? 0 : n);
}

std::optional<int> EElem::valuation() const {
  const auto v = m_.valuation();
  if (!v) return std::nullopt;
  return *v + (ext().ramified() ? 2 * k_ : k_);
}

int EElem::abs_prec() const { return m_.prec() + (ext().ramified() ? 2 * k_ : k_); }

EElem EElem::operator+(const EElem& o) const {
  const int k = std::min(k_, o.k_);
  return EElem(m_.mul_pi0_pow(k_ - k) + o.m_.mul_pi0_pow(o.k_ - k), k);
}

EElem EElem::operator-(const EElem& o) const {
  const int k = std::min(k_, o.k_);
  return EElem(m_.mul_pi0_pow(k_ - k) - o.m_.mul_pi0_pow(o.k_ - k), k);
}

EElem EElem::inverse() const {
  const OF n = m_.norm();
  const auto vn = n.valuation();
  if (!vn) throw PrecisionExhausted("division by a value that is zero to precision");
  return EElem(m_.conj() * n.div_pi_pow(*vn).inverse(), -k_ - *vn);
}

OE EElem::to_integral() const {
  if (k_ >= 0) return m_.mul_pi0_pow(k_);
  return m_.div_pi0_pow(-k_);
}

std::string EElem::to_string() const { return "pi0^" + std::to_string(k_) + "*" + m_.to_string(); }

// ---------------------------------------------------------------------------
// Different and norms

int inverse_different_exponent(const Extension& ext) {
  switch (ext.kind()) {
    case ExtKind::RP: return 2 * ext.e() + 1;
    case ExtKind::RU: return 2 * ext.vt();
    case ExtKind::UNRAM: break;
  }
  throw InvalidExtension("the different exponent is computed for ramified extensions only");
}

int inverse_different_exponent_scan(const Extension& ext) {
  if (!ext.ramified()) throw InvalidExtension("the different exponent is computed for ramified extensions only");
  const Field& F = ext.field();
  // Pi^{-m} x = pi_0^{-m} conj(Pi)^m x, so Tr(Pi^{-m} x) is integral iff
  // v(Tr(conj(Pi)^m x)) >= m.
  const OE pibar = ext.gen().conj();
  const OE generators[2] = {ext.one(), ext.gen()};
  OE power = ext.one();
  for (int m = 0; m <= 2 * F.precision(); ++m) {
    for (const OE& x : generators) {
      const OF tr = (power * x).trace();
      const auto v = tr.valuation();
      if (!v && tr.prec() < m) throw PrecisionExhausted("trace scan cannot resolve the different");
      if (v && *v < m) return m - 1;
    }
    power = power * pibar;
  }
  throw PrecisionExhausted("trace scan did not terminate within the available precision");
}

namespace {

// All elements sum_{i<k} d_i pi^i with d_i running over residue digits.
std::vector<OF> digit_representatives(const Field& F, int k) {
  std::vector<OF> reps{F.zero()};
  OF pik = F.one();
  for (int i = 0; i < k; ++i) {
    std::vector<OF> next;
    next.reserve(reps.size() * F.q());
    for (std::uint32_t d = 0; d < static_cast<std::uint32_t>(F.q()); ++d) {
      const OF term = OF::lift_residue(F, d) * pik;
      for (const auto& r : reps) next.push_back(r + term);
    }
    reps = std::move(next);
    pik = pik.mul_pi_pow(1);
  }
  return reps;
}

bool congruent(const OF& a, const OF& b, int depth) {
  const auto v = (a - b).valuation();
  if (!v) {
    if (std::min(a.prec(), b.prec()) < depth) throw PrecisionExhausted("norm search needs more precision");
    return true;
  }
  return *v >= depth;
}

}  // namespace

bool is_norm(const OF& x, const Extension& ext) {
  const Field& F = ext.field();
  const auto vx = x.valuation();
  if (!vx || *vx > 1) throw CaseInapplicable("is_norm expects a unit or a uniformizer");
  if (!ext.ramified()) return *vx == 0;  // unramified: exactly the even-valuation elements

  // Nm(Pi) = pi_0, so a uniformizer is a norm iff x / pi_0 is a norm of a unit.
  const OF unit = *vx == 1 ? x.div_pi_pow(1) : x;
  const int e = F.e();
  const int depth = 2 * e + 2;  // units = 1 mod pi_0^(2v(2)+1) are squares
  const int trace_val = ext.kind() == ExtKind::RP ? e : ext.vt();
  // Nm(b + pi_0^k y) - Nm(b) has valuation >= min(k + v(Tr O_E), 2k).
  const int k = std::max(depth - trace_val, (depth + 1) / 2);
  const std::vector<OF> reps = digit_representatives(F, k);
  for (const auto& b0 : reps) {
    if (!b0.is_unit()) continue;
    for (const auto& b1 : reps) {
      if (congruent(OE(ext, b0, b1).norm(), unit, depth)) return true;
    }
  }
  return false;
}

OF find_non_norm_uniformizer(const Extension& ext) {
  const Field& F = ext.field();
  const std::vector<OF> reps = digit_representatives(F, 2 * F.e() + 1);
  const OF pi0 = ext.pi0();
  for (const auto& w : reps) {
    if (!w.is_unit()) continue;
    const OF x = pi0 * w;
    if (!is_norm(x, ext)) return x;
  }
  throw CaseInapplicable("every uniformizer is a norm (E|F cannot be a ramified field extension)");
}

}  // namespace rzlab
