#pragma once

#include <map>
#include <vector>

#include "core/superfunction.hpp"

namespace svf {

/// Superderivation X = sum_i f^i d/dx^i + sum_a g^a d/dxi^a with
/// coefficients written on the left.
class SuperVectorField {
 public:
  explicit SuperVectorField(ModelSpec spec);

  static SuperVectorField even_partial(const ModelSpec& spec, int i);  // d/dx^i
  static SuperVectorField odd_partial(const ModelSpec& spec, int a);   // d/dxi^a
  static SuperVectorField from_coefficients(const ModelSpec& spec,
                                            std::vector<SuperFunction> even_coeffs,
                                            std::vector<SuperFunction> odd_coeffs);

  const ModelSpec& spec() const { return spec_; }
  const std::vector<SuperFunction>& even_coeffs() const { return even_; }
  const std::vector<SuperFunction>& odd_coeffs() const { return odd_; }
  /// 1-based accessors.
  const SuperFunction& even_coeff(int i) const { return even_.at(i - 1); }
  const SuperFunction& odd_coeff(int a) const { return odd_.at(a - 1); }
  void set_even_coeff(int i, SuperFunction f);
  void set_odd_coeff(int a, SuperFunction f);

  bool is_zero() const;
  /// 0 or 1 when Z2-homogeneous, -1 otherwise. The zero field is even.
  int parity() const;
  SuperVectorField parity_part(int p) const;
  /// Z-degree m part: f-coefficients with m odd generators, g-coefficients with m+1.
  SuperVectorField degree_part(int m) const;

  SuperVectorField& operator+=(const SuperVectorField& other);
  SuperVectorField& operator-=(const SuperVectorField& other);
  SuperVectorField& operator*=(const Rational& scalar);
  friend SuperVectorField operator+(SuperVectorField a, const SuperVectorField& b) { return a += b; }
  friend SuperVectorField operator-(SuperVectorField a, const SuperVectorField& b) { return a -= b; }
  friend SuperVectorField operator*(const Rational& s, SuperVectorField a) { return a *= s; }
  SuperVectorField operator-() const;

  bool operator==(const SuperVectorField& other) const {
    return spec_ == other.spec_ && even_ == other.even_ && odd_ == other.odd_;
  }

 private:
  void require_same_spec(const SuperVectorField& other) const;

  ModelSpec spec_;
  std::vector<SuperFunction> even_;
  std::vector<SuperFunction> odd_;
};

/// f * X, coefficientwise on the left.
SuperVectorField multiply(const SuperFunction& f, const SuperVectorField& X);

SuperFunction apply(const SuperVectorField& X, const SuperFunction& a);

/// Super commutator [X,Y] = X o Y - (-1)^{|X||Y|} Y o X, computed on
/// coefficients; inhomogeneous arguments are split by parity.
SuperVectorField bracket(const SuperVectorField& X, const SuperVectorField& Y);

/// sum_a xi^a d/dxi^a.
SuperVectorField euler_field(const ModelSpec& spec);

/// Components X_m with [eps, X_m] = m X_m, m >= -1; zero parts omitted.
std::map<int, SuperVectorField> degree_decompose(const SuperVectorField& X);

/// Base part sum_i f^i(x) d/dx^i of a degree-0 field; precondition error otherwise.
SuperVectorField anchor(const SuperVectorField& X);

}  // namespace svf
