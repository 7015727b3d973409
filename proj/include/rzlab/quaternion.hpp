#pragma once

// The quaternion division algebra B over F and explicit O_F-bases of its
// maximal order.
//
// Elements are stored in the internal F-basis (1, s, r, sr) with s^2 = alpha,
// r^2 = beta and sr = -rs:
//
//   RP:  s = delta, r = Pi        alpha = 1 + 4u,         beta = -pi_0
//   RU:  s = theta, r = theta~    alpha = 1 - 4 pi_0/t^2, beta = 1 + t^2 u / pi_0
//
// where u is the unit of the Artin-Schreier class selected by the extension.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rzlab/padic.hpp"

namespace rzlab {

class QuatElement;

class QuatAlgebra {
 public:
  /// Builds B for a ramified extension.
  static std::shared_ptr<const QuatAlgebra> make(std::shared_ptr<const Extension> ext);

  ExtKind kind() const { return ext_->kind(); }
  const Extension& ext() const { return *ext_; }
  const Field& field() const { return ext_->field(); }
  const FElem& alpha() const { return alpha_; }
  const FElem& beta() const { return beta_; }
  const OF& u() const { return u_; }

  QuatElement zero() const;
  QuatElement one() const;
  QuatElement scalar(const FElem& x) const;
  QuatElement s() const;
  QuatElement r() const;
  /// Image of the uniformizer of E.
  QuatElement pi() const;
  /// RU only: Pi~ = pi_0 (1 + theta~) / t.
  QuatElement pi_tilde() const;
  /// (1 + delta)/2 for RP and Pi Pi~ / pi_0 for RU.
  QuatElement gamma() const;

  /// (1, gamma, Pi, gamma Pi) for RP and (1, Pi, Pi~, Pi Pi~ / pi_0) for RU.
  std::vector<QuatElement> integral_basis() const;

 private:
  QuatAlgebra() = default;

  std::shared_ptr<const Extension> ext_;
  FElem alpha_, beta_;
  OF u_;
};

class QuatElement {
 public:
  QuatElement() = default;
  QuatElement(const QuatAlgebra& alg, std::array<FElem, 4> x) : alg_(&alg), x_(std::move(x)) {}

  const QuatAlgebra& algebra() const { return *alg_; }
  const std::array<FElem, 4>& coords() const { return x_; }

  QuatElement operator+(const QuatElement& o) const;
  QuatElement operator-(const QuatElement& o) const;
  QuatElement operator*(const QuatElement& o) const;
  QuatElement operator*(const FElem& c) const;

  /// The standard involution b -> b'.
  QuatElement conj() const;
  FElem trd() const;
  FElem nrd() const;
  QuatElement inverse() const;
  /// RP: Pi b' Pi^{-1}; RU: theta b' theta^{-1}.
  QuatElement star() const;

  bool is_zero() const;
  bool operator==(const QuatElement& o) const { return (*this - o).is_zero(); }
  std::string to_string() const;

 private:
  const QuatAlgebra* alg_ = nullptr;
  std::array<FElem, 4> x_;
};

/// Coordinates of x in the given F-basis of B.
std::array<FElem, 4> coordinates_in(const std::vector<QuatElement>& basis, const QuatElement& x);

/// True when every pairwise product of basis elements has O_F-coordinates.
bool is_closed_order(const std::vector<QuatElement>& basis);

struct DiscriminantReport {
  /// v_F(det(Trd(u_i u_j))).
  int det_valuation = 0;
  /// Valuation of the reduced discriminant d with d^2 = det up to units.
  std::optional<int> reduced_valuation;
};

/// Raises SingularGramError when the trace form is degenerate.
DiscriminantReport basis_discriminant(const std::vector<QuatElement>& basis);

/// Checks gamma^2 - gamma - u = 0 to at least `digits` digits, with gamma as
/// returned by QuatAlgebra::gamma(). `u` defaults to the algebra's unit.
bool verify_gamma_relation(const QuatAlgebra& alg, int digits, std::optional<OF> u = std::nullopt);

}  // namespace rzlab
