#include "core/vector_field.hpp"

#include "core/error.hpp"

namespace svf {

SuperVectorField::SuperVectorField(ModelSpec spec)
    : spec_(spec),
      even_(spec.base_dim, SuperFunction(spec)),
      odd_(spec.odd_rank, SuperFunction(spec)) {}

SuperVectorField SuperVectorField::even_partial(const ModelSpec& spec, int i) {
  SuperVectorField X(spec);
  X.set_even_coeff(i, SuperFunction::constant(spec, 1));
  return X;
}

SuperVectorField SuperVectorField::odd_partial(const ModelSpec& spec, int a) {
  SuperVectorField X(spec);
  X.set_odd_coeff(a, SuperFunction::constant(spec, 1));
  return X;
}

SuperVectorField SuperVectorField::from_coefficients(const ModelSpec& spec,
                                                     std::vector<SuperFunction> even_coeffs,
                                                     std::vector<SuperFunction> odd_coeffs) {
  if (static_cast<int>(even_coeffs.size()) != spec.base_dim ||
      static_cast<int>(odd_coeffs.size()) != spec.odd_rank)
    fail(ErrorKind::Input, "vector field needs " + std::to_string(spec.base_dim) +
                               " even and " + std::to_string(spec.odd_rank) + " odd coefficients");
  for (const auto& f : even_coeffs)
    if (!(f.spec() == spec)) fail(ErrorKind::Input, "coefficient spec mismatch");
  for (const auto& f : odd_coeffs)
    if (!(f.spec() == spec)) fail(ErrorKind::Input, "coefficient spec mismatch");
  SuperVectorField X(spec);
  X.even_ = std::move(even_coeffs);
  X.odd_ = std::move(odd_coeffs);
  return X;
}

void SuperVectorField::set_even_coeff(int i, SuperFunction f) {
  if (i < 1 || i > spec_.base_dim) fail(ErrorKind::Input, "even index out of range");
  if (!(f.spec() == spec_)) fail(ErrorKind::Input, "coefficient spec mismatch");
  even_[i - 1] = std::move(f);
}

void SuperVectorField::set_odd_coeff(int a, SuperFunction f) {
  if (a < 1 || a > spec_.odd_rank) fail(ErrorKind::Input, "odd index out of range");
  if (!(f.spec() == spec_)) fail(ErrorKind::Input, "coefficient spec mismatch");
  odd_[a - 1] = std::move(f);
}

bool SuperVectorField::is_zero() const {
  for (const auto& f : even_)
    if (!f.is_zero()) return false;
  for (const auto& f : odd_)
    if (!f.is_zero()) return false;
  return true;
}

int SuperVectorField::parity() const {
  const bool has_even = !parity_part(0).is_zero();
  const bool has_odd = !parity_part(1).is_zero();
  if (has_even && has_odd) return -1;
  return has_odd ? 1 : 0;
}

SuperVectorField SuperVectorField::parity_part(int p) const {
  SuperVectorField out(spec_);
  for (int i = 0; i < spec_.base_dim; ++i) out.even_[i] = even_[i].parity_part(p);
  // d/dxi is odd, so its coefficient carries the opposite parity.
  for (int a = 0; a < spec_.odd_rank; ++a) out.odd_[a] = odd_[a].parity_part(1 - p);
  return out;
}

SuperVectorField SuperVectorField::degree_part(int m) const {
  SuperVectorField out(spec_);
  for (int i = 0; i < spec_.base_dim; ++i) out.even_[i] = even_[i].degree_part(m);
  for (int a = 0; a < spec_.odd_rank; ++a) out.odd_[a] = odd_[a].degree_part(m + 1);
  return out;
}

void SuperVectorField::require_same_spec(const SuperVectorField& other) const {
  if (!(spec_ == other.spec_))
    fail(ErrorKind::Input, "model spec mismatch: " + spec_.describe() + " vs " +
                               other.spec_.describe());
}

SuperVectorField& SuperVectorField::operator+=(const SuperVectorField& other) {
  require_same_spec(other);
  for (int i = 0; i < spec_.base_dim; ++i) even_[i] += other.even_[i];
  for (int a = 0; a < spec_.odd_rank; ++a) odd_[a] += other.odd_[a];
  return *this;
}

SuperVectorField& SuperVectorField::operator-=(const SuperVectorField& other) {
  require_same_spec(other);
  for (int i = 0; i < spec_.base_dim; ++i) even_[i] -= other.even_[i];
  for (int a = 0; a < spec_.odd_rank; ++a) odd_[a] -= other.odd_[a];
  return *this;
}

SuperVectorField& SuperVectorField::operator*=(const Rational& scalar) {
  for (auto& f : even_) f *= scalar;
  for (auto& f : odd_) f *= scalar;
  return *this;
}

SuperVectorField SuperVectorField::operator-() const {
  SuperVectorField out(*this);
  return out *= Rational(-1);
}

SuperVectorField multiply(const SuperFunction& f, const SuperVectorField& X) {
  if (!(f.spec() == X.spec())) fail(ErrorKind::Input, "model spec mismatch in f*X");
  SuperVectorField out(X.spec());
  for (int i = 1; i <= X.spec().base_dim; ++i) out.set_even_coeff(i, f * X.even_coeff(i));
  for (int a = 1; a <= X.spec().odd_rank; ++a) out.set_odd_coeff(a, f * X.odd_coeff(a));
  return out;
}

SuperFunction apply(const SuperVectorField& X, const SuperFunction& a) {
  if (!(X.spec() == a.spec()))
    fail(ErrorKind::Input, "model spec mismatch in apply: " + X.spec().describe() + " vs " +
                               a.spec().describe());
  const ModelSpec& spec = X.spec();
  SuperFunction out(spec);
  for (int i = 1; i <= spec.base_dim; ++i) {
    if (X.even_coeff(i).is_zero()) continue;
    out += X.even_coeff(i) * even_derivative(a, i);
  }
  for (int c = 1; c <= spec.odd_rank; ++c) {
    if (X.odd_coeff(c).is_zero()) continue;
    out += X.odd_coeff(c) * odd_derivative(a, c);
  }
  return out;
}

namespace {

SuperVectorField homogeneous_bracket(const SuperVectorField& X, int px, const SuperVectorField& Y,
                                     int py) {
  const ModelSpec& spec = X.spec();
  const bool both_odd = (px * py) % 2 == 1;
  SuperVectorField out(spec);
  for (int i = 1; i <= spec.base_dim; ++i) {
    SuperFunction coeff = apply(X, Y.even_coeff(i));
    SuperFunction back = apply(Y, X.even_coeff(i));
    if (both_odd) coeff += back;
    else coeff -= back;
    out.set_even_coeff(i, std::move(coeff));
  }
  for (int c = 1; c <= spec.odd_rank; ++c) {
    SuperFunction coeff = apply(X, Y.odd_coeff(c));
    SuperFunction back = apply(Y, X.odd_coeff(c));
    if (both_odd) coeff += back;
    else coeff -= back;
    out.set_odd_coeff(c, std::move(coeff));
  }
  return out;
}

}  // namespace

SuperVectorField bracket(const SuperVectorField& X, const SuperVectorField& Y) {
  if (!(X.spec() == Y.spec()))
    fail(ErrorKind::Input, "model spec mismatch in bracket: " + X.spec().describe() + " vs " +
                               Y.spec().describe());
  const int px = X.parity(), py = Y.parity();
  if (px >= 0 && py >= 0) return homogeneous_bracket(X, px, Y, py);
  SuperVectorField out(X.spec());
  for (int p = 0; p < 2; ++p) {
    const SuperVectorField Xp = X.parity_part(p);
    if (Xp.is_zero()) continue;
    for (int q = 0; q < 2; ++q) {
      const SuperVectorField Yq = Y.parity_part(q);
      if (Yq.is_zero()) continue;
      out += homogeneous_bracket(Xp, p, Yq, q);
    }
  }
  return out;
}

SuperVectorField euler_field(const ModelSpec& spec) {
  spec.validate();
  SuperVectorField eps(spec);
  for (int a = 1; a <= spec.odd_rank; ++a)
    eps.set_odd_coeff(a, SuperFunction::odd_generator(spec, a));
  return eps;
}

std::map<int, SuperVectorField> degree_decompose(const SuperVectorField& X) {
  std::map<int, SuperVectorField> out;
  // f-terms have at most r odd generators, g-terms at most r: m in [-1, r].
  for (int m = -1; m <= X.spec().odd_rank; ++m) {
    SuperVectorField part = X.degree_part(m);
    if (!part.is_zero()) out.emplace(m, std::move(part));
  }
  return out;
}

SuperVectorField anchor(const SuperVectorField& X) {
  if (!(X.degree_part(0) == X))
    fail(ErrorKind::Precondition, "anchor is defined on homogeneous fields of degree 0 only");
  SuperVectorField out(X.spec());
  for (int i = 1; i <= X.spec().base_dim; ++i) out.set_even_coeff(i, X.even_coeff(i));
  return out;
}

}  // namespace svf
