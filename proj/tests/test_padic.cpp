#include <gtest/gtest.h>

#include <random>

#include "rzlab/padic.hpp"

using namespace rzlab;

namespace {

std::shared_ptr<const Field> make_field(int f, int e, int prec = kDefaultPrecision) {
  return Field::make(f, e, Field::default_eisenstein(e, f), prec);
}

OF random_of(const Field& F, std::mt19937_64& rng) {
  Coeffs c{};
  for (int i = 0; i < F.e() * F.f(); ++i) c[i] = rng() & F.mask();
  return OF(F, c, F.precision());
}

}  // namespace

TEST(Field, RejectsBadPolynomials) {
  EXPECT_THROW(Field::make(1, 2, {{4}, {0}, {1}}), InvalidEisenstein);
  EXPECT_THROW(Field::make(1, 2, {{-2}, {1}, {1}}), InvalidEisenstein);
  EXPECT_THROW(Field::make(1, 2, {{-2}, {0}, {3}}), InvalidEisenstein);
  EXPECT_THROW(Field::make(2, 1, {{-2, 0}, {1, 0}}, 24, {1, 0, 1}), ReducibleUnramifiedPoly);
  EXPECT_NO_THROW(Field::make(2, 2, {{-2, 0}, {2, 2}, {1, 0}}));
}

TEST(Field, IrreducibilityModTwo) {
  EXPECT_TRUE(Field::irreducible_mod2({1, 1, 1}));
  EXPECT_FALSE(Field::irreducible_mod2({1, 0, 1}));
  EXPECT_TRUE(Field::irreducible_mod2({1, 1, 0, 1}));
  EXPECT_FALSE(Field::irreducible_mod2({1, 1, 1, 1}));
  EXPECT_EQ(Field::default_unramified_poly(2), (IntPoly{1, 1, 1}));
}

// Z_2 modulo 2^K against plain unsigned arithmetic.
TEST(OF, MatchesIntegerArithmeticForQ2) {
  auto F = make_field(1, 1, 30);
  std::mt19937_64 rng(7);
  const std::uint64_t mod = std::uint64_t{1} << 30;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = rng() % mod, b = rng() % mod;
    const OF x = F->from_int(static_cast<std::int64_t>(a));
    const OF y = F->from_int(static_cast<std::int64_t>(b));
    EXPECT_EQ((x * y).raw()[0] % mod, (a * b) % mod);
    EXPECT_EQ((x + y).raw()[0] % mod, (a + b) % mod);
    if (a % 2 == 1) EXPECT_EQ((x.inverse() * x).raw()[0] % mod, 1u);
    if (a != 0) EXPECT_EQ(*x.valuation(), std::countr_zero(a));
  }
}

// O_F = Z_2[pi]/(pi^2 - 2): (a + b pi)(c + d pi) = (ac + 2bd) + (ad + bc) pi.
TEST(OF, RamifiedProductRule) {
  auto F = make_field(1, 2, 20);
  std::mt19937_64 rng(11);
  const std::uint64_t mask = F->mask();
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = rng() & mask, b = rng() & mask, c = rng() & mask, d = rng() & mask;
    const OF x = OF::from_coeffs(*F, {{static_cast<std::int64_t>(a)}, {static_cast<std::int64_t>(b)}});
    const OF y = OF::from_coeffs(*F, {{static_cast<std::int64_t>(c)}, {static_cast<std::int64_t>(d)}});
    const auto z = (x * y).raw();
    EXPECT_EQ(z[0], (a * c + 2 * b * d) & mask);
    EXPECT_EQ(z[1], (a * d + b * c) & mask);
  }
}

// W = Z_2[zeta]/(zeta^2 + zeta + 1): zeta^2 = -zeta - 1.
TEST(OF, UnramifiedProductRule) {
  auto F = make_field(2, 1, 20);
  const OF zeta = OF::from_coeffs(*F, {{0, 1}});
  const OF sq = zeta * zeta;
  EXPECT_EQ(sq, OF::from_coeffs(*F, {{-1, -1}}));
  EXPECT_EQ(sq * zeta, F->one());
}

TEST(OF, RingAxiomsAndInverse) {
  for (auto [f, e] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 4}}) {
    auto F = make_field(f, e);
    std::mt19937_64 rng(f * 10 + e);
    for (int trial = 0; trial < 50; ++trial) {
      const OF x = random_of(*F, rng), y = random_of(*F, rng), z = random_of(*F, rng);
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * y, y * x);
      if (x.is_unit()) EXPECT_EQ(x * x.inverse(), F->one());
    }
  }
}

TEST(OF, DivisionByUniformizer) {
  for (auto [f, e] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}}) {
    auto F = make_field(f, e);
    std::mt19937_64 rng(3 + f + e);
    const OF pi = F->uniformizer();
    EXPECT_EQ(*pi.valuation(), 0 + 1);
    for (int trial = 0; trial < 50; ++trial) {
      const OF x = random_of(*F, rng);
      const OF y = (x * pi * pi).div_pi_pow(2);
      EXPECT_EQ(y, x);
      EXPECT_EQ(y.prec(), F->precision() - 2);
    }
    EXPECT_THROW(F->one().div_pi_pow(1), InexactDivision);
    EXPECT_EQ(F->from_int(2).valuation(), e);
  }
}

TEST(OF, DigitsRoundTrip) {
  auto F = make_field(2, 2);
  std::mt19937_64 rng(5);
  const OF x = random_of(*F, rng);
  const auto d = x.digits(10);
  OF y = F->zero();
  OF p = F->one();
  for (auto digit : d) {
    y = y + OF::lift_residue(*F, digit) * p;
    p = p * F->uniformizer();
  }
  EXPECT_TRUE((x - y).valuation().value_or(99) >= 10);
}

TEST(OF, ZeroToPrecision) {
  auto F = make_field(1, 2, 10);
  const OF x = F->uniformizer().mul_pi_pow(12);
  EXPECT_TRUE(x.is_zero());
  EXPECT_THROW(x.inverse(), NotAUnit);
}

TEST(FElem, ShiftedArithmetic) {
  auto F = make_field(1, 2);
  const FElem pi(F->uniformizer());
  const FElem inv = pi.inverse();
  EXPECT_EQ(*inv.valuation(), -1);
  EXPECT_EQ(pi * inv, FElem(F->one()));
  const FElem sum = inv + FElem(F->one());
  EXPECT_EQ(*sum.valuation(), -1);
  EXPECT_THROW(sum.to_integral(), InexactDivision);
  EXPECT_EQ((sum * pi).to_integral(), F->one() + F->uniformizer());
}

class ExtensionTest : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

// kind: 0 RP, 1.. RU with v(t) = kind, -1 unramified
std::shared_ptr<const Extension> make_ext(std::shared_ptr<const Field> F, int kind) {
  if (kind == 0) return Extension::make_rp(F);
  if (kind < 0) return Extension::make_unramified(F);
  OF t = F->one();
  for (int i = 0; i < kind; ++i) t = t * F->uniformizer();
  return Extension::make_ru(F, t);
}

TEST_P(ExtensionTest, NormTraceConjugation) {
  auto [f, e, kind] = GetParam();
  auto F = make_field(f, e);
  auto E = make_ext(F, kind);
  std::mt19937_64 rng(f * 100 + e * 10 + kind + 5);
  for (int trial = 0; trial < 40; ++trial) {
    const OE x(*E, random_of(*F, rng), random_of(*F, rng));
    const OE y(*E, random_of(*F, rng), random_of(*F, rng));
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
    EXPECT_EQ(x.conj().conj(), x);
    EXPECT_EQ(E->from_of(x.trace()), x + x.conj());
    EXPECT_EQ(E->from_of(x.norm()), x * x.conj());
    if (x.is_unit()) EXPECT_EQ(x * x.inverse(), E->one());
    const OE prod = x * y;
    if (!y.is_zero() && !prod.is_zero()) EXPECT_EQ(prod.divide(y) * y, prod);
  }
}

TEST_P(ExtensionTest, UniformizerAndDigits) {
  auto [f, e, kind] = GetParam();
  auto F = make_field(f, e);
  auto E = make_ext(F, kind);
  if (kind < 0) {
    // Unramified: gamma is a unit and pi_0 stays prime.
    EXPECT_TRUE(E->gen().is_unit());
    EXPECT_EQ(E->from_of(F->uniformizer()).valuation(), 1);
    EXPECT_EQ(E->gen().norm().valuation(), 0);
    return;
  }
  const OE pi = E->gen();
  EXPECT_EQ(*pi.valuation(), 1);
  EXPECT_EQ(*pi.norm().valuation(), 1);
  EXPECT_EQ((pi * pi).div_uniformizer(), pi);
  std::mt19937_64 rng(17 + kind);
  const OE x(*E, random_of(*F, rng), random_of(*F, rng));
  const auto d = x.digits(12);
  EXPECT_TRUE((x - OE::from_digits(*E, 0, d)).valuation().value_or(99) >= 12);
  const EElem inv = EElem::pi_pow(*E, -3);
  EXPECT_EQ(*inv.valuation(), -3);
  EXPECT_EQ((inv * EElem(pi * pi * pi)).to_integral(), E->one());
}

TEST_P(ExtensionTest, DifferentFormulaMatchesTraceScan) {
  auto [f, e, kind] = GetParam();
  auto E = make_ext(make_field(f, e), kind);
  if (kind < 0) {
    EXPECT_THROW(inverse_different_exponent(*E), InvalidExtension);
    EXPECT_THROW(inverse_different_exponent_scan(*E), InvalidExtension);
    return;
  }
  EXPECT_EQ(inverse_different_exponent(*E), inverse_different_exponent_scan(*E));
}

INSTANTIATE_TEST_SUITE_P(Grid, ExtensionTest,
                         ::testing::Values(std::tuple{1, 1, 0}, std::tuple{1, 1, 1}, std::tuple{1, 1, -1},
                                           std::tuple{2, 1, 0}, std::tuple{2, 1, 1}, std::tuple{1, 2, 0},
                                           std::tuple{1, 2, 1}, std::tuple{1, 2, 2}, std::tuple{2, 2, 0},
                                           std::tuple{2, 2, 1}, std::tuple{2, 2, 2}, std::tuple{1, 3, 2}));

// Norms from Q_2(sqrt(-2)) are x^2 + 2y^2: unit classes 1, 3 mod 8.
TEST(Norms, QuadraticRamifiedOverQ2) {
  auto F = make_field(1, 1);
  auto E = Extension::make_rp(F);
  EXPECT_TRUE(is_norm(F->from_int(1), *E));
  EXPECT_TRUE(is_norm(F->from_int(3), *E));
  EXPECT_FALSE(is_norm(F->from_int(-1), *E));
  EXPECT_FALSE(is_norm(F->from_int(5), *E));
  EXPECT_TRUE(is_norm(F->from_int(2), *E));
  EXPECT_TRUE(is_norm(F->from_int(6), *E));
  EXPECT_FALSE(is_norm(F->from_int(-2), *E));
}

// Q_2(sqrt(-1)) = RU with t = 2 (X^2 - 2X + 2 has root 1 + i): norms x^2 + y^2.
TEST(Norms, GaussianOverQ2) {
  auto F = make_field(1, 1);
  auto E = Extension::make_ru(F, F->from_int(2));
  EXPECT_TRUE(is_norm(F->from_int(1), *E));
  EXPECT_TRUE(is_norm(F->from_int(5), *E));
  EXPECT_FALSE(is_norm(F->from_int(3), *E));
  EXPECT_FALSE(is_norm(F->from_int(-1), *E));
  EXPECT_TRUE(is_norm(F->from_int(2), *E));
  const OF w = find_non_norm_uniformizer(*E);
  EXPECT_EQ(*w.valuation(), 1);
  EXPECT_FALSE(is_norm(w, *E));
}

TEST(Norms, UnramifiedSplitsByValuation) {
  auto F = make_field(1, 2);
  auto E = Extension::make_unramified(F);
  EXPECT_TRUE(is_norm(F->from_int(-1), *E));
  EXPECT_FALSE(is_norm(F->uniformizer(), *E));
}

TEST(Extension, RejectsBadTraceParameter) {
  auto F = make_field(1, 2);
  EXPECT_THROW(Extension::make_ru(F, F->one()), InvalidExtension);
  EXPECT_THROW(Extension::make_ru(F, F->from_int(4)), InvalidExtension);
  EXPECT_THROW(Extension::make_rp(F)->t(), NotRUCase);
}
