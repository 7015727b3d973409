#include "rzlab/quaternion.hpp"

#include <sstream>

#include "rzlab/linalg.hpp"

namespace rzlab {

namespace {

FElem fconst(const Field& F, std::int64_t v) { return FElem::from_int(F, v); }

}  // namespace

std::shared_ptr<const QuatAlgebra> QuatAlgebra::make(std::shared_ptr<const Extension> ext) {
  if (!ext->ramified()) throw InvalidExtension("the quaternion bases are defined for ramified E");
  std::shared_ptr<QuatAlgebra> alg(new QuatAlgebra());
  const Field& F = ext->field();
  alg->u_ = ext->u();
  const FElem u(alg->u_);
  const FElem pi0 = FElem::pi0_pow(F, 1);
  if (ext->kind() == ExtKind::RP) {
    alg->alpha_ = fconst(F, 1) + fconst(F, 4) * u;
    alg->beta_ = -pi0;
  } else {
    const FElem t(ext->t());
    const FElem t2 = t * t;
    alg->alpha_ = fconst(F, 1) - fconst(F, 4) * pi0 / t2;
    alg->beta_ = fconst(F, 1) + t2 * u / pi0;
  }
  alg->ext_ = std::move(ext);
  return alg;
}

QuatElement QuatAlgebra::scalar(const FElem& x) const {
  const FElem z(field().zero());
  return QuatElement(*this, {x, z, z, z});
}

QuatElement QuatAlgebra::zero() const { return scalar(FElem(field().zero())); }
QuatElement QuatAlgebra::one() const { return scalar(FElem(field().one())); }

QuatElement QuatAlgebra::s() const {
  const FElem z(field().zero()), o(field().one());
  return QuatElement(*this, {z, o, z, z});
}

QuatElement QuatAlgebra::r() const {
  const FElem z(field().zero()), o(field().one());
  return QuatElement(*this, {z, z, o, z});
}

QuatElement QuatAlgebra::pi() const {
  if (kind() == ExtKind::RP) return r();
  const FElem half = FElem::from_int(field(), 2).inverse();
  return (one() + s()) * (FElem(ext_->t()) * half);
}

QuatElement QuatAlgebra::pi_tilde() const {
  if (kind() != ExtKind::RU) throw NotRUCase("Pi~ exists only in the RU presentation");
  return (one() + r()) * (FElem::pi0_pow(field(), 1) / FElem(ext_->t()));
}

QuatElement QuatAlgebra::gamma() const {
  if (kind() == ExtKind::RP) return (one() + s()) * FElem::from_int(field(), 2).inverse();
  return pi() * pi_tilde() * FElem::pi0_pow(field(), 1).inverse();
}

std::vector<QuatElement> QuatAlgebra::integral_basis() const {
  if (kind() == ExtKind::RP) return {one(), gamma(), pi(), gamma() * pi()};
  return {one(), pi(), pi_tilde(), pi() * pi_tilde() * FElem::pi0_pow(field(), 1).inverse()};
}

QuatElement QuatElement::operator+(const QuatElement& o) const {
  return QuatElement(*alg_, {x_[0] + o.x_[0], x_[1] + o.x_[1], x_[2] + o.x_[2], x_[3] + o.x_[3]});
}

QuatElement QuatElement::operator-(const QuatElement& o) const {
  return QuatElement(*alg_, {x_[0] - o.x_[0], x_[1] - o.x_[1], x_[2] - o.x_[2], x_[3] - o.x_[3]});
}

QuatElement QuatElement::operator*(const FElem& c) const {
  return QuatElement(*alg_, {x_[0] * c, x_[1] * c, x_[2] * c, x_[3] * c});
}

QuatElement QuatElement::operator*(const QuatElement& o) const {
  const FElem& a = alg_->alpha();
  const FElem& b = alg_->beta();
  const auto& x = x_;
  const auto& y = o.x_;
  return QuatElement(*alg_, {
      x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
      x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
      x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
      x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1],
  });
}

QuatElement QuatElement::conj() const { return QuatElement(*alg_, {x_[0], -x_[1], -x_[2], -x_[3]}); }

FElem QuatElement::trd() const { return x_[0] + x_[0]; }

FElem QuatElement::nrd() const {
  const FElem& a = alg_->alpha();
  const FElem& b = alg_->beta();
  return x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] + a * b * x_[3] * x_[3];
}

QuatElement QuatElement::inverse() const { return conj() * nrd().inverse(); }

QuatElement QuatElement::star() const {
  const QuatElement g = alg_->kind() == ExtKind::RP ? alg_->pi() : alg_->s();
  return g * conj() * g.inverse();
}

bool QuatElement::is_zero() const {
  for (const auto& c : x_)
    if (!c.is_zero()) return false;
  return true;
}

std::string QuatElement::to_string() const {
  std::ostringstream os;
  os << '(' << x_[0].to_string() << ", " << x_[1].to_string() << ", " << x_[2].to_string() << ", "
     << x_[3].to_string() << ')';
  return os.str();
}

std::array<FElem, 4> coordinates_in(const std::vector<QuatElement>& basis, const QuatElement& x) {
  if (basis.size() != 4) throw SingularGramError("a basis of B has four elements");
  FMatrix m(4, std::vector<FElem>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = basis[j].coords()[i];
  const auto sol = solve(m, {x.coords().begin(), x.coords().end()});
  return {sol[0], sol[1], sol[2], sol[3]};
}

bool is_closed_order(const std::vector<QuatElement>& basis) {
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      for (const auto& c : coordinates_in(basis, a * b)) {
        const auto v = c.valuation();
        if (v && *v < 0) return false;
      }
    }
  }
  return true;
}

DiscriminantReport basis_discriminant(const std::vector<QuatElement>& basis) {
  if (basis.size() != 4) throw SingularGramError("a basis of B has four elements");
  FMatrix m(4, std::vector<FElem>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = (basis[i] * basis[j]).trd();
  const auto v = determinant(m).valuation();
  if (!v) throw SingularGramError("reduced trace form is degenerate to the working precision");
  DiscriminantReport rep;
  rep.det_valuation = *v;
  if (*v % 2 == 0) rep.reduced_valuation = *v / 2;
  return rep;
}

bool verify_gamma_relation(const QuatAlgebra& alg, int digits, std::optional<OF> u) {
  const QuatElement g = alg.gamma();
  const FElem uu(u ? *u : alg.u());
  const QuatElement residual = g * g - g - alg.scalar(uu);
  for (const auto& c : residual.coords()) {
    const auto v = c.valuation();
    if (v) {
      if (*v < digits) return false;
    } else if (c.abs_prec() < digits) {
      throw PrecisionExhausted("gamma relation cannot be certified to the requested depth");
    }
  }
  return true;
}

}  // namespace rzlab
