#include <gtest/gtest.h>

#include <set>

#include "rzlab/neighbors.hpp"

using namespace rzlab;

namespace {

struct ExtCase {
  int f, e, vt;  // vt == 0 selects RP
};

std::shared_ptr<const Extension> make_ext(const ExtCase& c) {
  auto F = Field::make(c.f, c.e, Field::default_eisenstein(c.e, c.f));
  if (c.vt == 0) return Extension::make_rp(F);
  OF t = F->one();
  for (int i = 0; i < c.vt; ++i) t = t * F->uniformizer();
  return Extension::make_ru(F, t);
}

std::string describe(const std::map<NormClass, int>& m) {
  std::string s;
  for (const auto& [k, n] : m) s += "(" + std::to_string(k.ell) + (k.hyperbolic ? ",h" : "") + "):" + std::to_string(n) + " ";
  return s;
}

}  // namespace

class NeighborTest : public ::testing::TestWithParam<ExtCase> {
 protected:
  void SetUp() override {
    E = make_ext(GetParam());
    rp = GetParam().vt == 0;
    lo = rp ? -1 : 0;  // the two modularities in play are lo and lo + 1
  }
  std::shared_ptr<const Extension> E;
  bool rp = true;
  int lo = 0;
};

TEST_P(NeighborTest, EveryApplicableCasePasses) {
  const PropsReport rep = verify_neighbor_props(*E);
  ASSERT_EQ(rep.cases.size(), 4u);
  for (const auto& c : rep.cases) {
    for (const auto& chk : c.checks)
      EXPECT_TRUE(chk.pass()) << c.id << " l=" << chk.source.ell << " expected " << describe(chk.expected)
                              << " observed " << describe(chk.observed);
  }
  EXPECT_TRUE(rep.pass());
}

TEST_P(NeighborTest, TotalsAreQPlusOneExceptTerminalCases) {
  const int q = E->q();
  const int h = hyperbolic_norm_exponent(*E);
  for (int from : {lo, lo + 1}) {
    const int to = from == lo ? lo + 1 : lo;
    const int start = (!rp && from == 1) ? 1 : 0;
    for (int ell = start; ell <= h; ++ell) {
      const Lattice w = witness_lattice(*E, from, ell == h ? std::nullopt : std::optional<int>(ell));
      const NeighborTally t = modular_neighbors(w, from, to);
      const bool terminal = ell == 0 && from == 0 && ell != h;
      EXPECT_EQ(t.total, terminal ? 1 : q + 1) << "from " << from << " l=" << ell;
      int sum = 0;
      for (const auto& [k, n] : t.counts) {
        sum += n;
        EXPECT_LE(std::abs(k.ell - ell), 1);  // norms move by at most one step
      }
      EXPECT_EQ(sum, t.total);
      for (const auto& m : t.neighbors) EXPECT_TRUE(is_pi_modular(m, to));
    }
  }
}

// Walks two steps from the witnesses and checks each lattice reached, not
// only the witnesses, against the predicted counts for its class.
TEST_P(NeighborTest, PredictionsHoldAlongWalks) {
  std::set<LatticeKey> seen;
  std::vector<std::pair<Lattice, int>> frontier;
  for (int from : {lo, lo + 1}) frontier.emplace_back(witness_lattice(*E, from, std::nullopt), from);
  for (int depth = 0; depth < 2; ++depth) {
    std::vector<std::pair<Lattice, int>> next;
    for (const auto& [lat, from] : frontier) {
      if (!seen.insert(lat.key()).second) continue;
      const int to = from == lo ? lo + 1 : lo;
      const NeighborTally t = modular_neighbors(lat, from, to);
      EXPECT_EQ(t.counts, expected_neighbor_tally(*E, from, to, norm_class(lat, from))) << lat.key().to_string();
      for (const auto& m : t.neighbors) next.emplace_back(m, to);
    }
    frontier = std::move(next);
  }
}

TEST_P(NeighborTest, NeighborRelationIsSymmetric) {
  const int h = hyperbolic_norm_exponent(*E);
  for (int ell = rp ? 0 : 1; ell <= h; ++ell) {
    const Lattice w = witness_lattice(*E, lo, ell == h ? std::nullopt : std::optional<int>(ell));
    for (const auto& m : modular_neighbors(w, lo, lo + 1).neighbors) {
      const auto back = modular_neighbors(m, lo + 1, lo).neighbors;
      EXPECT_NE(std::find(back.begin(), back.end(), w), back.end());
      for (const auto& n : back) {
        const auto fwd = modular_neighbors(n, lo, lo + 1).neighbors;
        EXPECT_NE(std::find(fwd.begin(), fwd.end(), m), fwd.end());
      }
    }
  }
}

TEST_P(NeighborTest, RejectsWrongModularity) {
  const Lattice w = witness_lattice(*E, lo, std::nullopt);
  EXPECT_THROW(modular_neighbors(w, lo + 1, lo), UnsupportedModularity);
  EXPECT_THROW(modular_neighbors(w, lo, lo + 2), UnsupportedModularity);
  EXPECT_THROW(modular_neighbors(w, lo, lo - 1), UnsupportedModularity);
}

INSTANTIATE_TEST_SUITE_P(Grid, NeighborTest,
                         ::testing::Values(ExtCase{1, 1, 0}, ExtCase{2, 1, 0}, ExtCase{1, 2, 0}, ExtCase{2, 2, 0},
                                           ExtCase{1, 1, 1}, ExtCase{2, 1, 1}, ExtCase{1, 2, 1}, ExtCase{1, 2, 2},
                                           ExtCase{2, 2, 1}, ExtCase{2, 2, 2}));

TEST(Neighbors, HyperbolicInversePiModularOverQ2) {
  auto E = make_ext({1, 1, 0});
  const auto t = modular_neighbors(witness_lattice(*E, -1, std::nullopt), -1, 0);
  const std::map<NormClass, int> want{{{1, true}, 3}};
  EXPECT_EQ(t.counts, want);
}

TEST(Neighbors, HyperbolicUnimodularOverQ2) {
  auto E = make_ext({1, 1, 0});
  const auto t = modular_neighbors(Lattice::standard(*E), 0, -1);
  const std::map<NormClass, int> want{{{0, false}, 1}, {{1, true}, 2}};
  EXPECT_EQ(t.counts, want);
}

TEST(Neighbors, HyperbolicPiModularRU) {
  auto E = make_ext({1, 2, 2});
  const auto t = modular_neighbors(witness_lattice(*E, 1, std::nullopt), 1, 0);
  const std::map<NormClass, int> want{{{1, false}, 1}, {{2, true}, 2}};
  EXPECT_EQ(t.counts, want);
}

TEST(Neighbors, CollapseCaseSkipsLastRUCase) {
  auto E = make_ext({1, 1, 1});
  EXPECT_THROW(run_neighbor_case(*E, "RU.4"), CaseInapplicable);
  const PropsReport rep = verify_neighbor_props(*E);
  EXPECT_FALSE(rep.cases[3].applicable);
  EXPECT_TRUE(rep.cases[3].checks.empty());
  // Unit norm: a single Pi-modular sublattice.
  const CaseReport two = rep.cases[1];
  ASSERT_EQ(two.checks.size(), 1u);
  EXPECT_EQ(two.checks[0].source.ell, 0);
  const std::map<NormClass, int> want{{{1, true}, 1}};
  EXPECT_EQ(two.checks[0].observed, want);
  EXPECT_TRUE(rep.pass());
}

TEST(Neighbors, TailNormChainForRamifiedBase) {
  auto E = make_ext({1, 2, 0});
  // From the hyperbolic unimodular lattice down through Pi^-1-modular and
  // unimodular lattices, following the non-hyperbolic neighbor each time.
  Lattice cur = Lattice::standard(*E);
  int from = 0;
  std::vector<int> chain{norm_exponent(cur)};
  while (chain.back() > 0) {
    const int to = from == 0 ? -1 : 0;
    const auto t = modular_neighbors(cur, from, to);
    bool moved = false;
    for (const auto& m : t.neighbors) {
      const NormClass c = norm_class(m, to);
      if (!c.hyperbolic && c.ell < chain.back()) {
        cur = m;
        chain.push_back(c.ell);
        moved = true;
        break;
      }
    }
    if (!moved) {
      // Norm stays put on this step; take a non-hyperbolic neighbor of equal norm.
      for (const auto& m : t.neighbors)
        if (!norm_class(m, to).hyperbolic) {
          cur = m;
          moved = true;
          break;
        }
    }
    ASSERT_TRUE(moved);
    from = to;
    ASSERT_LT(chain.size(), 10u);
  }
  EXPECT_EQ(chain, (std::vector<int>{2, 1, 0}));
}

TEST(Neighbors, WrongCaseFamily) {
  auto E = make_ext({1, 1, 0});
  EXPECT_THROW(run_neighbor_case(*E, "RU.1"), CaseInapplicable);
  EXPECT_THROW(run_neighbor_case(*E, "XX.9"), FormatError);
  auto U = Extension::make_unramified(Field::make(1, 1, Field::default_eisenstein(1, 1)));
  EXPECT_THROW(verify_neighbor_props(*U), InvalidExtension);
}

TEST(NeighborWalks, SeededWalksMatchPredictions) {
  for (int e : {1, 2})
    for (int f : {1, 2}) {
      auto F = Field::make(f, e, Field::default_eisenstein(e, f));
      std::vector<std::shared_ptr<const Extension>> exts{Extension::make_rp(F)};
      for (int vt = 1; vt <= e; ++vt) exts.push_back(Extension::make_ru(F, F->from_int(1).mul_pi_pow(vt)));
      for (const auto& E : exts) {
        const WalkReport rep = sample_neighbor_walks(*E, 6, 11);
        EXPECT_TRUE(rep.pass()) << to_string(E->kind()) << " f=" << f << " e=" << e;
        EXPECT_GT(rep.checks, 6);
      }
    }
}

TEST(NeighborWalks, DeterministicInSeed) {
  auto F = Field::make(1, 2, Field::default_eisenstein(2, 1));
  auto E = Extension::make_rp(F);
  EXPECT_EQ(sample_neighbor_walks(*E, 5, 3).checks, sample_neighbor_walks(*E, 5, 3).checks);
  EXPECT_THROW(sample_neighbor_walks(*E, -1, 3), FormatError);
  EXPECT_THROW(sample_neighbor_walks(*Extension::make_unramified(F), 1, 3), InvalidExtension);
}
