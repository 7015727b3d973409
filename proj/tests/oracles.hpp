#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <algorithm>
#include <climits>
#include <random>
#include <vector>

#include "rzlab/lattice.hpp"

namespace rzlab::oracle {

inline OF random_of(const Field& F, std::mt19937_64& rng) {
  Coeffs c{};
  for (int i = 0; i < F.e() * F.f(); ++i) c[i] = rng() & F.mask();
  return OF(F, c, F.precision());
}

inline OE random_oe(const Extension& E, std::mt19937_64& rng) {
  return OE(E, random_of(E.field(), rng), random_of(E.field(), rng));
}

inline EElem random_unit(const Extension& E, std::mt19937_64& rng) {
  for (;;) {
    OE x = random_oe(E, rng);
    if (x.is_unit()) return EElem(x);
  }
}

/// Random lattice with generators Pi^k * (random O_E vector), k in [lo, hi].
inline Lattice random_lattice(const Extension& E, std::mt19937_64& rng, int lo = -2, int hi = 2) {
  std::uniform_int_distribution<int> shift(lo, hi);
  for (;;) {
    Basis b;
    for (auto& col : b) {
      const EElem s = EElem::pi_pow(E, shift(rng));
      col = {EElem(random_oe(E, rng)) * s, EElem(random_oe(E, rng)) * s};
    }
    try {
      return Lattice::from_basis(E, b);
    } catch (const DegenerateLattice&) {
    }
  }
}

/// Random element of GL_2(O_E), as a list of two columns.
inline std::array<std::array<EElem, 2>, 2> random_gl2(const Extension& E, std::mt19937_64& rng) {
  for (;;) {
    std::array<std::array<EElem, 2>, 2> g;
    for (auto& col : g) col = {EElem(random_oe(E, rng)), EElem(random_oe(E, rng))};
    const EElem det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const auto v = det.valuation();
    if (v && *v == 0) return g;
  }
}

inline Basis rebase(const Basis& b, const std::array<std::array<EElem, 2>, 2>& g) {
  Basis out;
  for (int j = 0; j < 2; ++j)
    for (int r = 0; r < 2; ++r) out[j][r] = b[0][r] * g[j][0] + b[1][r] * g[j][1];
  return out;
}

/// All elements of O_F / pi_0^depth, as digit expansions.
inline std::vector<OF> residues_mod(const Field& F, int depth) {
  std::vector<OF> reps{F.zero()};
  OF pik = F.one();
  for (int i = 0; i < depth; ++i) {
    std::vector<OF> next;
    for (std::uint32_t d = 0; d < static_cast<std::uint32_t>(F.q()); ++d) {
      const OF term = OF::lift_residue(F, d) * pik;
      for (const auto& r : reps) next.push_back(r + term);
    }
    reps = std::move(next);
    pik = pik * F.uniformizer();
  }
  return reps;
}

/// Minimum of v(h(x, x)) over the primitive classes of lat / pi_0^depth lat
/// up to unit scaling: x = b1 + lambda b2 with lambda in O_E, and
/// x = b2 + lambda b1 with lambda in Pi O_E, both modulo pi_0^depth.
///
/// With G the Gram matrix and lambda = a + b Pi,
///   h(b1 + lambda b2) = G11 + Nm(lambda) G22 + a Tr(G12) + b Tr(conj(Pi) G12)
/// and Nm(lambda) = a^2 + s a b + c b^2, so the inner loop only adds
/// tabulated terms plus one product.
class NormBruteForce {
 public:
  NormBruteForce(const Extension& E, int depth) : E_(&E), depth_(depth), reps_(residues_mod(E.field(), depth)) {
    const Field& F = E.field();
    OF pik = F.one();
    for (int k = 0; k < depth; ++k) {
      for (std::uint32_t d = 0; d < static_cast<std::uint32_t>(F.q()); ++d) terms_.push_back(OF::lift_residue(F, d) * pik);
      pik = pik * F.uniformizer();
    }
  }

  int min_valuation(const Lattice& lat) const {
    const Basis& B = lat.basis();
    return std::min(scan({B[0], B[1]}, false), scan({B[1], B[0]}, true));
  }

 private:
  int scan(const Basis& B, bool a_in_maximal_ideal) const {
    const Extension& E = *E_;
    const Field& F = E.field();
    const FElem g11 = herm_norm(B[0]);
    const FElem g22 = herm_norm(B[1]);
    const EElem g12 = herm(B[0], B[1]);
    const FElem t1 = g12.trace();
    const FElem tp = (EElem(E.gen()).conj() * g12).trace();
    int lo = 0;
    for (const FElem* x : {&g11, &g22, &t1, &tp})
      if (const auto v = x->valuation()) lo = std::min(lo, *v);
    const int shift = -lo;
    auto integral = [&](const FElem& x) { return (x * FElem::pi0_pow(F, shift)).to_integral(); };
    const OF G11 = integral(g11), G22 = integral(g22), T1 = integral(t1), TP = integral(tp);
    const OF sG22 = E.s() * G22;
    const OF cG22 = E.c() * G22;

    const std::size_t n = reps_.size();
    std::vector<OF> A(n), Bt(n), P(n);
    for (std::size_t i = 0; i < n; ++i) {
      const OF& a = reps_[i];
      A[i] = a * a * G22 + a * T1 + G11;
      Bt[i] = a * a * cG22 + a * TP;
      P[i] = a * sG22;
    }
    // P[i] * reps_[j] is built the way residues_mod builds reps_, digit by
    // digit, so the inner loop only adds.
    const std::size_t q = static_cast<std::size_t>(F.q());
    std::vector<OF> PR(n), scaled(terms_.size());
    int best = INT_MAX;
    for (std::size_t i = 0; i < n; ++i) {
      if (a_in_maximal_ideal && reps_[i].is_unit()) continue;
      for (std::size_t t = 0; t < terms_.size(); ++t) scaled[t] = P[i] * terms_[t];
      PR[0] = F.zero();
      std::size_t len = 1;
      for (int k = 0; k < depth_; ++k) {
        for (std::size_t d = q; d-- > 0;)
          for (std::size_t r = 0; r < len; ++r) PR[d * len + r] = PR[r] + scaled[k * q + d];
        len *= q;
      }
      const OF Ai = A[i];
      for (std::size_t j = 0; j < n; ++j) {
        const OF val = Ai + Bt[j] + PR[j];
        if (const auto v = val.valuation()) best = std::min(best, *v);
      }
    }
    if (best == INT_MAX) best = F.precision();
    return best - shift;
  }

  const Extension* E_;
  int depth_;
  std::vector<OF> reps_;
  std::vector<OF> terms_;  // lift(d) * pi_0^k, in residues_mod order
};

}  // namespace rzlab::oracle
