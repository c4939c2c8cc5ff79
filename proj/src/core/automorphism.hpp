#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/lie_model.hpp"

namespace svf {

/// Outcome of check_automorphism. On failure `reason` is one of
/// "shape", "singular", "parity" or "bracket"; for "parity" the witness is
/// the column i, for "bracket" it is the pair (i, j) with
/// defect = M[e_i, e_j] - [M e_i, M e_j].
struct AutomorphismCheck {
  bool pass = false;
  std::string reason;
  std::size_t i = 0, j = 0;
  Vector defect;
};

AutomorphismCheck check_automorphism(const LieModel& m, const Matrix& M);

/// p(psi) in the basis of the filtered quotient. Does not re-run
/// check_automorphism; throws a consistency error if psi moves some level
/// g^(p) out of itself.
Matrix induced_graded_aut(const FilteredQuotient& q, const Matrix& psi);
/// Same, validating psi first and building the quotient.
Matrix induced_graded_aut(const LieModel& m, const Matrix& psi);

/// Whether psi - 1 maps every g^(p) into g^(p+2), i.e. p(psi) = 1.
bool in_kernel_of_p(const Filtration& f, const Matrix& psi);

/// exp(ad_Y) as a finite sum; Y must be ad-nilpotent.
Matrix ad_exp(const LieModel& m, const Vector& Y);

struct Correction {
  int degree;  // 2j
  Vector field;
};

/// Y_1, ..., Y_k with psi = Ad(exp Y_k) o ... o Ad(exp Y_1). psi must be an
/// automorphism with p(psi) = 1.
std::vector<Correction> factor_kernel_automorphism(const LieModel& m, const Matrix& psi);
/// Ad(exp Y_k) o ... o Ad(exp Y_1)
Matrix compose_corrections(const LieModel& m, const std::vector<Correction>& corrections);

/// Algebra automorphism of A with xi^a -> sum_b T_ab xi^b, identity on the base.
SuperFunction pull_back(const Matrix& T, const SuperFunction& f);

/// psi(X) = (phi*)^{-1} o X o phi* for phi* = pull_back(T). Its block on
/// g^{-1} = span{d/dxi^a} is T itself.
Matrix bundle_induced_automorphism(const LieModel& m, const Matrix& T);

/// Block of a Z-graded automorphism on the constant fields d/dxi^a.
Matrix reconstruct_bundle_map(const LieModel& m, const Matrix& psi);

struct ConjugationCheck {
  bool pass = false;
  std::size_t index = 0;  // first basis element whose image differs
  int min_shift = 0;      // lowest degree shift present in the difference
  Vector defect;          // psi(e_index) - (phi*)^{-1} o e_index o phi*
};

ConjugationCheck verify_conjugation(const LieModel& m, const Matrix& T, const Matrix& psi);

/// lambda with psi(eps) = lambda eps on low-rank exceptional specs.
int detect_lambda(const LieModel& m, const Matrix& psi);

/// On (0,0,2): the automorphism psi_0 with psi_0(eps) = -eps and
/// psi_0(d/dxi^b) = sum_a iso_ab xi^1 xi^2 d/dxi^a.
Matrix construct_exceptional_swap(const LieModel& m, const Matrix& iso);

/// All rationals c such that ad(c eps) restricted to g_1 has spectrum {+1, -1}.
std::vector<Rational> unit_spectrum_euler_scalars(const LieModel& m);

struct FactorizationResult {
  Matrix bundle_part;  // r x r
  std::vector<Correction> corrections;
  int lambda = 1;
  /// When lambda = -1 the bundle part is composed with the swap built from
  /// the identity identification: psi = induced(T) o psi_0 o Ad(...).
  bool uses_swap = false;
};

/// psi = induced(bundle_part) [o psi_0] o Ad(exp Y_k) o ... o Ad(exp Y_1).
FactorizationResult factor_automorphism(const LieModel& m, const Matrix& psi);
Matrix recompose(const LieModel& m, const FactorizationResult& result);

}  // namespace svf
