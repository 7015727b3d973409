#include <gtest/gtest.h>

#include <random>

#include "rzlab/linalg.hpp"
#include "rzlab/quaternion.hpp"

using namespace rzlab;

namespace {

struct QuatCase {
  int f, e, vt;  // vt == 0 selects RP
};

std::shared_ptr<const Extension> make_ext(const QuatCase& c) {
  auto F = Field::make(c.f, c.e, Field::default_eisenstein(c.e, c.f));
  if (c.vt == 0) return Extension::make_rp(F);
  OF t = F->one();
  for (int i = 0; i < c.vt; ++i) t = t * F->uniformizer();
  return Extension::make_ru(F, t);
}

QuatElement random_integral(const QuatAlgebra& B, std::mt19937_64& rng) {
  const auto basis = B.integral_basis();
  QuatElement x = B.zero();
  for (const auto& b : basis) {
    Coeffs c{};
    for (int i = 0; i < B.field().e() * B.field().f(); ++i) c[i] = rng() & 0xffff;
    x = x + b * FElem(OF(B.field(), c, B.field().precision()));
  }
  return x;
}

bool integral(const FElem& x) {
  const auto v = x.valuation();
  return !v || *v >= 0;
}

}  // namespace

class QuatTest : public ::testing::TestWithParam<QuatCase> {};

TEST_P(QuatTest, AlgebraIdentities) {
  auto E = make_ext(GetParam());
  auto B = QuatAlgebra::make(E);
  EXPECT_TRUE((B->s() * B->r() + B->r() * B->s()).is_zero());
  EXPECT_EQ(B->pi().nrd(), FElem(E->pi0()));
  EXPECT_EQ(B->pi().trd(), FElem(E->s()));
  EXPECT_EQ(B->gamma().trd(), FElem(E->field().one()));
  EXPECT_EQ(B->gamma().nrd(), -FElem(E->u()));
  std::mt19937_64 rng(GetParam().f * 31 + GetParam().e * 7 + GetParam().vt);
  for (int trial = 0; trial < 40; ++trial) {
    const QuatElement x = random_integral(*B, rng);
    const QuatElement y = random_integral(*B, rng);
    const QuatElement z = random_integral(*B, rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ((x * y).nrd(), x.nrd() * y.nrd());
    EXPECT_EQ((x + y).trd(), x.trd() + y.trd());
    EXPECT_EQ(x * x.conj(), B->scalar(x.nrd()));
    EXPECT_EQ(x.star().star(), x);
    EXPECT_TRUE(integral(x.trd()));
    EXPECT_TRUE(integral(x.nrd()));
  }
}

TEST_P(QuatTest, IntegralBasisIsClosedAndIntegral) {
  auto B = QuatAlgebra::make(make_ext(GetParam()));
  const auto basis = B->integral_basis();
  for (const auto& b : basis) {
    EXPECT_TRUE(integral(b.trd()));
    EXPECT_TRUE(integral(b.nrd()));
  }
  EXPECT_TRUE(is_closed_order(basis));
}

// det(Trd(u_i u_j)) = det(M)^2 * det(Trd(e_i e_j)) with M the coordinate matrix
// of the basis and Trd(e_i e_j) = diag(2, 2 alpha, 2 beta, -2 alpha beta).
TEST_P(QuatTest, DiscriminantMatchesChangeOfBasis) {
  auto B = QuatAlgebra::make(make_ext(GetParam()));
  const auto basis = B->integral_basis();
  FMatrix m(4, std::vector<FElem>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = basis[j].coords()[i];
  const FElem dm = determinant(m);
  const FElem ab = B->alpha() * B->beta();
  const FElem expected = -FElem(B->field().from_int(16)) * ab * ab * dm * dm;
  const auto rep = basis_discriminant(basis);
  EXPECT_EQ(rep.det_valuation, *expected.valuation());
  EXPECT_EQ(rep.det_valuation, 2);
  ASSERT_TRUE(rep.reduced_valuation);
  EXPECT_EQ(*rep.reduced_valuation, 1);
}

TEST_P(QuatTest, GammaRelation) {
  auto B = QuatAlgebra::make(make_ext(GetParam()));
  EXPECT_TRUE(verify_gamma_relation(*B, 16));
  EXPECT_FALSE(verify_gamma_relation(*B, 16, B->u() + B->field().one()));
}

INSTANTIATE_TEST_SUITE_P(Grid, QuatTest,
                         ::testing::Values(QuatCase{1, 1, 0}, QuatCase{2, 1, 0}, QuatCase{1, 2, 0},
                                           QuatCase{2, 2, 0}, QuatCase{1, 1, 1}, QuatCase{2, 1, 1},
                                           QuatCase{1, 2, 1}, QuatCase{1, 2, 2}, QuatCase{2, 2, 1},
                                           QuatCase{2, 2, 2}));

// Index [O_B : O] = 2 as O_F-modules scales the discriminant by 2^2.
TEST(Quat, NonMaximalBasisDiscriminant) {
  for (int e : {1, 2}) {
    auto B = QuatAlgebra::make(make_ext({1, e, 0}));
    auto basis = B->integral_basis();
    basis[1] = basis[1] * FElem(B->field().from_int(2));
    const auto rep = basis_discriminant(basis);
    EXPECT_EQ(rep.det_valuation, 2 + 2 * e);
    EXPECT_EQ(rep.reduced_valuation, 1 + e);
  }
}

TEST(Quat, RUNonNormWitnesses) {
  for (QuatCase c : {QuatCase{1, 1, 1}, QuatCase{1, 2, 1}, QuatCase{1, 2, 2}, QuatCase{2, 1, 1}}) {
    auto E = make_ext(c);
    auto B = QuatAlgebra::make(E);
    EXPECT_FALSE(is_norm(B->beta().to_integral(), *E));
    EXPECT_FALSE(is_norm(find_non_norm_uniformizer(*E), *E));
  }
}

TEST(Quat, SingularBasisIsRejected) {
  auto B = QuatAlgebra::make(make_ext({1, 1, 0}));
  auto basis = B->integral_basis();
  basis[3] = basis[2];
  EXPECT_THROW(basis_discriminant(basis), SingularGramError);
}
