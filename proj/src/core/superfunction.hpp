#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "core/model_spec.hpp"
#include "core/rational.hpp"

namespace svf {

/// Set of odd generators, bit a-1 standing for xi^a. Generators are kept in
/// increasing order, so a mask is a normal-form odd monomial.
using OddMask = std::uint32_t;

int odd_degree(OddMask mask);
std::vector<int> odd_indices(OddMask mask);  // 1-based, increasing
OddMask odd_mask(const std::vector<int>& sorted_indices);

/// (length, lexicographic index list) order on odd monomials.
bool odd_less(OddMask a, OddMask b);

using BaseExponents = std::vector<int>;

int total_degree(const BaseExponents& exps);

/// (total degree, lexicographic exponents) order on base monomials.
bool base_less(const BaseExponents& a, const BaseExponents& b);

/// All base monomials of total degree <= d in s variables, canonical order.
std::vector<BaseExponents> base_monomials(const ModelSpec& spec);

/// All odd monomials of Lambda(xi^1..xi^r), canonical order.
std::vector<OddMask> odd_monomials(const ModelSpec& spec);

struct Monomial {
  BaseExponents base;
  OddMask odd = 0;

  bool operator==(const Monomial&) const = default;
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.base != b.base) return base_less(a.base, b.base);
    return odd_less(a.odd, b.odd);
  }
};

/// Raw input term; odd indices may be unsorted or repeated.
struct RawTerm {
  BaseExponents base;
  std::vector<int> odd;
  Rational coeff;
};

/// Element of B_d(s) (x) Lambda(xi^1..xi^r) in normal form: no zero
/// coefficients, odd generators increasing, base monomials within degree d.
class SuperFunction {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  explicit SuperFunction(ModelSpec spec);

  static SuperFunction constant(const ModelSpec& spec, const Rational& value);
  static SuperFunction monomial(const ModelSpec& spec, BaseExponents base, OddMask odd,
                                const Rational& coeff = 1);
  /// xi^a, 1-based.
  static SuperFunction odd_generator(const ModelSpec& spec, int a);
  /// x^i, 1-based.
  static SuperFunction even_generator(const ModelSpec& spec, int i);

  const ModelSpec& spec() const { return spec_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff * monomial; the monomial must already be in normal form.
  void add_term(const Monomial& mono, const Rational& coeff);

  /// 0 or 1 when homogeneous; -1 for inhomogeneous. Zero counts as even.
  int parity() const;
  SuperFunction parity_part(int p) const;
  /// Terms with exactly k odd generators (the A^k component).
  SuperFunction degree_part(int k) const;

  SuperFunction& operator+=(const SuperFunction& other);
  SuperFunction& operator-=(const SuperFunction& other);
  SuperFunction& operator*=(const Rational& scalar);

  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(SuperFunction a, const Rational& s) { return a *= s; }
  friend SuperFunction operator*(const Rational& s, SuperFunction a) { return a *= s; }
  SuperFunction operator-() const;

  bool operator==(const SuperFunction& other) const {
    return spec_ == other.spec_ && terms_ == other.terms_;
  }

 private:
  void require_same_spec(const SuperFunction& other) const;

  ModelSpec spec_;
  TermMap terms_;
};

SuperFunction normalize(const ModelSpec& spec, const std::vector<RawTerm>& raw_terms);

/// Supercommutative product.
SuperFunction multiply(const SuperFunction& a, const SuperFunction& b);
inline SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
  return multiply(a, b);
}

/// Z-degree components keyed by the number of odd generators; zero parts omitted.
std::map<int, SuperFunction> grade_split(const SuperFunction& a);

/// Left derivative d/dxi^a: removes xi^a from the left, picking up
/// (-1)^(number of generators in front of it).
SuperFunction odd_derivative(const SuperFunction& a, int index);
SuperFunction even_derivative(const SuperFunction& a, int index);

}  // namespace svf
