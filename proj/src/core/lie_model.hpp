#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/linalg.hpp"
#include "core/vector_field.hpp"

namespace svf {

inline constexpr std::size_t kDefaultDimCap = 2000;

/// Which coordinate derivation a monomial basis field points along.
enum class FieldKind { Even, Odd };

/// x^base xi^odd d/d(target), target 1-based.
struct BasisDescriptor {
  FieldKind kind = FieldKind::Odd;
  int target = 1;
  BaseExponents base;
  OddMask odd = 0;
};

struct StructureTerm {
  std::size_t index;
  Rational coeff;
};

/// Finite-dimensional Lie superalgebra with an ordered homogeneous basis and
/// exact structure constants [e_i, e_j] = sum_k c_ij^k e_k.
class LieModel {
 public:
  /// Model assembled from explicit data (used for graded quotients).
  LieModel(ModelSpec spec, std::vector<SuperVectorField> basis, std::vector<int> degrees,
           std::vector<std::vector<StructureTerm>> structure);

  const ModelSpec& spec() const { return spec_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<SuperVectorField>& basis() const { return basis_; }
  int degree(std::size_t i) const { return degrees_[i]; }
  int parity(std::size_t i) const { return ((degrees_[i] % 2) + 2) % 2; }
  const std::vector<int>& degrees() const { return degrees_; }
  int min_degree() const;
  int max_degree() const;

  /// Canonical models carry monomial descriptors and a coordinate lookup.
  bool is_canonical() const { return canonical_; }
  const BasisDescriptor& descriptor(std::size_t i) const { return descriptors_.at(i); }
  std::string label(std::size_t i) const;

  const std::vector<StructureTerm>& structure(std::size_t i, std::size_t j) const {
    return structure_[i * dimension() + j];
  }

  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad_x: column j is [x, e_j].
  Matrix ad(const Vector& x) const;

  /// Coordinates of a field lying in the canonical model; input error otherwise.
  Vector coordinates(const SuperVectorField& X) const;
  SuperVectorField field(const Vector& x) const;

  Vector euler_vector() const;
  std::vector<std::size_t> indices_of_degree(int m) const;
  std::vector<std::size_t> indices_of_parity(int p) const;
  Subspace parity_subspace(int p) const;
  Subspace whole() const { return Subspace::whole(dimension()); }

 private:
  friend LieModel build_model(const ModelSpec& spec, std::size_t dim_cap);
  LieModel() = default;

  ModelSpec spec_;
  bool canonical_ = false;
  std::vector<SuperVectorField> basis_;
  std::vector<BasisDescriptor> descriptors_;
  std::vector<int> degrees_;
  std::vector<std::vector<StructureTerm>> structure_;
  struct DescriptorLess {
    bool operator()(const BasisDescriptor& a, const BasisDescriptor& b) const;
  };
  std::map<BasisDescriptor, std::size_t, DescriptorLess> index_;
};

/// Number of basis fields the canonical model of `spec` has.
std::size_t model_dimension(const ModelSpec& spec);

/// Derivations of B_d(s) (x) Lambda(r) in canonical order. Coefficients of
/// d/dx^i lie in the maximal ideal of the base, which is what makes the
/// truncated model closed under the bracket.
LieModel build_model(const ModelSpec& spec, std::size_t dim_cap = kDefaultDimCap);

/// span{[u, v] : u in a, v in b}
Subspace bracket_span(const LieModel& m, const Subspace& a, const Subspace& b);

/// Smallest ideal of `within` containing `seed`.
Subspace ideal_closure(const LieModel& m, const Subspace& within, const Subspace& seed);

bool is_subalgebra(const LieModel& m, const Subspace& s);
bool is_ideal_of(const LieModel& m, const Subspace& ideal, const Subspace& within);

/// ad_eps eigenspaces computed as kernels of ad_eps - k.
std::map<int, Subspace> grading_eigenspaces(const LieModel& m);

/// sum over i > 0 of g^{2i}.
Subspace canonical_ideal(const LieModel& m);

bool is_ad_nilpotent(const LieModel& m, const Vector& x);

/// Whether every element of the subalgebra `s` acts nilpotently on the
/// s-stable subspace `module`: the chain V, sV, s(sV), ... reaches zero.
bool acts_nilpotently(const LieModel& m, const Subspace& s, const Subspace& module);

enum class NilpotentCertificate { TraceRadical, AssociativeRadical };

struct NilpotentIdealAnalysis {
  Subspace ideal;       // maximal ad-nilpotent ideal, computed without the grading
  Subspace prediction;  // grading-based candidate
  NilpotentCertificate certificate = NilpotentCertificate::TraceRadical;
  bool prediction_is_ideal = false;
  bool prediction_nilpotent = false;
  bool prediction_maximal = false;  // every basis vector outside it spoils nilpotency
  bool routes_agree = false;
};

/// Maximal ideal of `within` whose elements act ad-nilpotently on
/// `acting_on`. Point models only; `within` must be an even subalgebra
/// and `acting_on` must be stable under it.
NilpotentIdealAnalysis bruteforce_max_nilpotent_ideal(const LieModel& m, const Subspace& within,
                                                      const Subspace& acting_on);

/// g^(p) for p = -1, 0, 1, ... up to two trailing zero levels.
class Filtration {
 public:
  Filtration(std::size_t ambient, std::vector<Subspace> levels, Subspace g0, Subspace g1);
  /// g^(p); below -1 the parity part, above the stored range zero.
  const Subspace& at(int p) const;
  int top() const { return static_cast<int>(levels_.size()) - 2; }  // last stored p
  const std::vector<Subspace>& levels() const { return levels_; }  // index p + 1

 private:
  std::size_t ambient_;
  std::vector<Subspace> levels_;
  Subspace even_, odd_, zero_;
};

Filtration filtration(const LieModel& m);

/// sum over i >= 0 of g^{p+2i}.
Subspace graded_prediction(const LieModel& m, int p);

/// Associated graded of the filtration with explicit coset representatives.
struct FilteredQuotient {
  LieModel model;                       // basis = representative fields, degree = level p
  std::vector<Vector> representatives;  // in coordinates of the original model
  Filtration levels;
  /// Coordinates of x in g^(p), modulo g^(p+2), against the level-p representatives.
  std::vector<Matrix> extractors;  // index p + 1
  std::vector<std::vector<std::size_t>> level_indices;

  Vector coset_coordinates(int p, const Vector& x) const;
};

FilteredQuotient filtered_quotient(const LieModel& m);

struct GradedQuotient {
  FilteredQuotient quotient;
  Matrix to_model;    // g^gr -> g: coset [X] of level p goes to the degree-p part of X
  Matrix from_model;  // inverse
};

/// Requires the filtration hypothesis; the isomorphism is verified on every
/// pair of basis elements before returning.
GradedQuotient graded_quotient(const LieModel& m);

}  // namespace svf
