#include "core/superfunction.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "core/error.hpp"

namespace svf {

int odd_degree(OddMask mask) { return std::popcount(mask); }

std::vector<int> odd_indices(OddMask mask) {
  std::vector<int> out;
  for (int bit = 0; mask != 0; ++bit, mask >>= 1)
    if (mask & 1u) out.push_back(bit + 1);
  return out;
}

OddMask odd_mask(const std::vector<int>& sorted_indices) {
  OddMask mask = 0;
  for (int a : sorted_indices) mask |= OddMask{1} << (a - 1);
  return mask;
}

bool odd_less(OddMask a, OddMask b) {
  const int la = odd_degree(a), lb = odd_degree(b);
  if (la != lb) return la < lb;
  if (a == b) return false;
  // Equal lengths: the set owning the smallest element of the symmetric
  // difference comes first in lexicographic order of sorted index lists.
  const OddMask diff = a ^ b;
  const OddMask lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

int total_degree(const BaseExponents& exps) {
  return std::accumulate(exps.begin(), exps.end(), 0);
}

bool base_less(const BaseExponents& a, const BaseExponents& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::vector<BaseExponents> base_monomials(const ModelSpec& spec) {
  std::vector<BaseExponents> out;
  BaseExponents current(spec.base_dim, 0);
  // Enumerate exponent vectors with sum <= d by odometer recursion.
  auto recurse = [&](auto& self, int var, int budget) -> void {
    if (var == spec.base_dim) {
      out.push_back(current);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      current[var] = e;
      self(self, var + 1, budget - e);
    }
    current[var] = 0;
  };
  recurse(recurse, 0, spec.truncation_order);
  std::sort(out.begin(), out.end(), base_less);
  return out;
}

std::vector<OddMask> odd_monomials(const ModelSpec& spec) {
  std::vector<OddMask> out;
  const OddMask count = OddMask{1} << spec.odd_rank;
  out.reserve(count);
  for (OddMask m = 0; m < count; ++m) out.push_back(m);
  std::sort(out.begin(), out.end(), odd_less);
  return out;
}

SuperFunction::SuperFunction(ModelSpec spec) : spec_(spec) {}

SuperFunction SuperFunction::constant(const ModelSpec& spec, const Rational& value) {
  return monomial(spec, BaseExponents(spec.base_dim, 0), 0, value);
}

SuperFunction SuperFunction::monomial(const ModelSpec& spec, BaseExponents base, OddMask odd,
                                      const Rational& coeff) {
  SuperFunction f(spec);
  Rational c = coeff;
  c.canonicalize();  // callers may hand in an unreduced p/q
  if (total_degree(base) <= spec.truncation_order) f.add_term(Monomial{std::move(base), odd}, c);
  return f;
}

SuperFunction SuperFunction::odd_generator(const ModelSpec& spec, int a) {
  if (a < 1 || a > spec.odd_rank) fail(ErrorKind::Input, "odd index out of range");
  return monomial(spec, BaseExponents(spec.base_dim, 0), OddMask{1} << (a - 1));
}

SuperFunction SuperFunction::even_generator(const ModelSpec& spec, int i) {
  if (i < 1 || i > spec.base_dim) fail(ErrorKind::Input, "even index out of range");
  BaseExponents base(spec.base_dim, 0);
  base[i - 1] = 1;
  return monomial(spec, std::move(base), 0);
}

void SuperFunction::add_term(const Monomial& mono, const Rational& coeff) {
  if (svf::is_zero(coeff)) return;
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (svf::is_zero(it->second)) terms_.erase(it);
  }
}

int SuperFunction::parity() const {
  int p = -2;
  for (const auto& [mono, c] : terms_) {
    const int q = odd_degree(mono.odd) % 2;
    if (p == -2) p = q;
    else if (p != q) return -1;
  }
  return p == -2 ? 0 : p;
}

SuperFunction SuperFunction::parity_part(int p) const {
  SuperFunction out(spec_);
  for (const auto& [mono, c] : terms_)
    if (odd_degree(mono.odd) % 2 == p) out.terms_.emplace_hint(out.terms_.end(), mono, c);
  return out;
}

SuperFunction SuperFunction::degree_part(int k) const {
  SuperFunction out(spec_);
  for (const auto& [mono, c] : terms_)
    if (odd_degree(mono.odd) == k) out.terms_.emplace_hint(out.terms_.end(), mono, c);
  return out;
}

void SuperFunction::require_same_spec(const SuperFunction& other) const {
  if (!(spec_ == other.spec_))
    fail(ErrorKind::Input, "model spec mismatch: " + spec_.describe() + " vs " +
                               other.spec_.describe());
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& other) {
  require_same_spec(other);
  for (const auto& [mono, c] : other.terms_) add_term(mono, c);
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& other) {
  require_same_spec(other);
  for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
  return *this;
}

SuperFunction& SuperFunction::operator*=(const Rational& scalar) {
  if (svf::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, c] : terms_) c *= scalar;
  return *this;
}

SuperFunction SuperFunction::operator-() const {
  SuperFunction out(*this);
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

namespace {

// Sign of reordering the concatenation (a-generators, then b-generators)
// into increasing order; the masks must be disjoint.
int merge_sign(OddMask a, OddMask b) {
  int swaps = 0;
  for (OddMask rest = b; rest != 0; rest &= rest - 1) {
    const OddMask bit = rest & (~rest + 1);
    const OddMask above = ~((bit << 1) - 1);
    swaps += std::popcount(a & above);
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

}  // namespace

SuperFunction normalize(const ModelSpec& spec, const std::vector<RawTerm>& raw_terms) {
  spec.validate();
  SuperFunction out(spec);
  for (const RawTerm& raw : raw_terms) {
    if (static_cast<int>(raw.base.size()) != spec.base_dim)
      fail(ErrorKind::Input, "base exponent list has length " + std::to_string(raw.base.size()) +
                                 ", expected " + std::to_string(spec.base_dim));
    for (int e : raw.base)
      if (e < 0) fail(ErrorKind::Input, "negative base exponent");
    for (int a : raw.odd)
      if (a < 1 || a > spec.odd_rank)
        fail(ErrorKind::Input, "odd index " + std::to_string(a) + " outside 1.." +
                                   std::to_string(spec.odd_rank));
    if (total_degree(raw.base) > spec.truncation_order) continue;
    // Bubble sort counts transpositions; a repeated generator kills the term.
    std::vector<int> odd = raw.odd;
    int swaps = 0;
    for (std::size_t i = 0; i < odd.size(); ++i)
      for (std::size_t j = 0; j + 1 < odd.size() - i; ++j) {
        if (odd[j] > odd[j + 1]) {
          std::swap(odd[j], odd[j + 1]);
          ++swaps;
        }
      }
    if (std::adjacent_find(odd.begin(), odd.end()) != odd.end()) continue;
    out.add_term(Monomial{raw.base, odd_mask(odd)}, swaps % 2 == 0 ? raw.coeff : Rational(-raw.coeff));
  }
  return out;
}

SuperFunction multiply(const SuperFunction& a, const SuperFunction& b) {
  if (!(a.spec() == b.spec()))
    fail(ErrorKind::Input, "model spec mismatch in multiply: " + a.spec().describe() + " vs " +
                               b.spec().describe());
  const ModelSpec& spec = a.spec();
  SuperFunction out(spec);
  Monomial mono;
  mono.base.resize(spec.base_dim);
  Rational coeff;
  for (const auto& [ma, ca] : a.terms()) {
    const int da = total_degree(ma.base);
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.odd & mb.odd) continue;
      if (da + total_degree(mb.base) > spec.truncation_order) continue;
      for (int i = 0; i < spec.base_dim; ++i) mono.base[i] = ma.base[i] + mb.base[i];
      mono.odd = ma.odd | mb.odd;
      coeff = ca * cb;
      if (merge_sign(ma.odd, mb.odd) < 0) coeff = -coeff;
      out.add_term(mono, coeff);
    }
  }
  return out;
}

std::map<int, SuperFunction> grade_split(const SuperFunction& a) {
  std::map<int, SuperFunction> out;
  for (const auto& [mono, c] : a.terms()) {
    auto it = out.try_emplace(odd_degree(mono.odd), a.spec()).first;
    it->second.add_term(mono, c);
  }
  return out;
}

SuperFunction odd_derivative(const SuperFunction& a, int index) {
  const ModelSpec& spec = a.spec();
  if (index < 1 || index > spec.odd_rank) fail(ErrorKind::Input, "odd index out of range");
  const OddMask bit = OddMask{1} << (index - 1);
  SuperFunction out(spec);
  for (const auto& [mono, c] : a.terms()) {
    if (!(mono.odd & bit)) continue;
    const int in_front = std::popcount(mono.odd & (bit - 1));
    out.add_term(Monomial{mono.base, mono.odd & ~bit}, in_front % 2 == 0 ? c : Rational(-c));
  }
  return out;
}

SuperFunction even_derivative(const SuperFunction& a, int index) {
  const ModelSpec& spec = a.spec();
  if (index < 1 || index > spec.base_dim) fail(ErrorKind::Input, "even index out of range");
  SuperFunction out(spec);
  for (const auto& [mono, c] : a.terms()) {
    const int e = mono.base[index - 1];
    if (e == 0) continue;
    Monomial lowered = mono;
    lowered.base[index - 1] = e - 1;
    out.add_term(lowered, c * e);
  }
  return out;
}

}  // namespace svf
