#include "doctest.h"

#include <functional>
#include <random>

#include "core/automorphism.hpp"
#include "core/error.hpp"
#include "support/oracles.hpp"

using namespace svf;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

std::size_t find_label(const LieModel& m, const std::string& label) {
  for (std::size_t i = 0; i < m.dimension(); ++i)
    if (m.label(i) == label) return i;
  FAIL("no basis element labelled " << label);
  return 0;
}

Vector random_in_degree(const LieModel& m, int k, std::mt19937_64& rng) {
  return oracle::random_integer_vector(m.dimension(), m.indices_of_degree(k), rng, -3, 3);
}

Matrix diag(std::initializer_list<int> entries) {
  Matrix D(entries.size(), entries.size());
  std::size_t i = 0;
  for (int e : entries) D(i, i) = e, ++i;
  return D;
}

}  // namespace

TEST_CASE("check_automorphism verdicts") {
  const LieModel m = build_model({0, 0, 2});
  const std::size_t n = m.dimension();
  CHECK(check_automorphism(m, Matrix::identity(n)).pass);

  const Matrix twice = Rational(2) * Matrix::identity(n);
  const AutomorphismCheck c = check_automorphism(m, twice);
  CHECK_FALSE(c.pass);
  CHECK(c.reason == "bracket");
  const Vector ei = unit_vector(n, c.i), ej = unit_vector(n, c.j);
  CHECK(c.defect == twice * m.bracket(ei, ej) - m.bracket(twice * ei, twice * ej));
  CHECK_FALSE(is_zero(c.defect));

  CHECK(check_automorphism(m, Matrix(n, n)).reason == "singular");
  CHECK(check_automorphism(m, Matrix::identity(n - 1)).reason == "shape");
  Matrix mixed = Matrix::identity(n);
  mixed(m.indices_of_degree(0).front(), m.indices_of_degree(-1).front()) = 1;
  CHECK(check_automorphism(m, mixed).reason == "parity");
}

TEST_CASE("ad_exp") {
  std::mt19937_64 rng(31);
  const LieModel m = build_model({0, 0, 3});
  const std::size_t n = m.dimension();
  CHECK(ad_exp(m, zero_vector(n)).is_identity());
  for (int trial = 0; trial < 10; ++trial) {
    const Vector Y = random_in_degree(m, 2, rng);
    const Matrix adY = m.ad(Y);
    CHECK((adY * adY * adY).is_zero());
    CHECK(ad_exp(m, Y) == Matrix::identity(n) + adY + Rational(1, 2) * (adY * adY));
    CHECK((ad_exp(m, Y) * ad_exp(m, Rational(-1) * Y)).is_identity());
    CHECK(check_automorphism(m, ad_exp(m, Y)).pass);
  }
  CHECK(kind_of([&] { ad_exp(m, m.euler_vector()); }) == ErrorKind::Precondition);
}

TEST_CASE("induced graded automorphism") {
  std::mt19937_64 rng(32);
  const LieModel m = build_model({0, 0, 3});
  const std::size_t n = m.dimension();
  const FilteredQuotient q = filtered_quotient(m);
  CHECK(induced_graded_aut(q, Matrix::identity(n)).is_identity());
  for (int trial = 0; trial < 5; ++trial)
    CHECK(induced_graded_aut(m, ad_exp(m, random_in_degree(m, 2, rng))).is_identity());

  const GradedQuotient gq = graded_quotient(m);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix psi = bundle_induced_automorphism(m, oracle::random_invertible(3, rng));
    CHECK(induced_graded_aut(gq.quotient, psi) == gq.from_model * psi * gq.to_model);
  }
  CHECK(kind_of([&] { induced_graded_aut(m, Rational(2) * Matrix::identity(n)); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("kernel factorization") {
  std::mt19937_64 rng(33);
  const LieModel w3 = build_model({0, 0, 3});
  CHECK(factor_kernel_automorphism(w3, Matrix::identity(w3.dimension())).empty());
  for (int trial = 0; trial < 10; ++trial) {
    const Vector Y = random_in_degree(w3, 2, rng);
    if (is_zero(Y)) continue;
    const auto corrections = factor_kernel_automorphism(w3, ad_exp(w3, Y));
    REQUIRE(corrections.size() == 1);
    CHECK(corrections[0].degree == 2);
    CHECK(corrections[0].field == Y);
  }

  const LieModel w4 = build_model({0, 0, 4});
  const Matrix psi =
      ad_exp(w4, random_in_degree(w4, 2, rng)) * ad_exp(w4, random_in_degree(w4, 2, rng));
  CHECK(compose_corrections(w4, factor_kernel_automorphism(w4, psi)) == psi);

  const Matrix not_kernel = bundle_induced_automorphism(w3, diag({2, 1, 1}));
  CHECK(kind_of([&] { factor_kernel_automorphism(w3, not_kernel); }) == ErrorKind::Precondition);
}

TEST_CASE("kernel factorization with a degree-4 stage") {
  std::mt19937_64 rng(34);
  const LieModel w5 = build_model({0, 0, 5});
  const Vector Y = random_in_degree(w5, 2, rng) + random_in_degree(w5, 4, rng);
  const Matrix psi = ad_exp(w5, Y);
  const auto corrections = factor_kernel_automorphism(w5, psi);
  CHECK(compose_corrections(w5, corrections) == psi);
  for (const auto& c : corrections) CHECK((c.degree == 2 || c.degree == 4));
}

TEST_CASE("pull_back is an algebra automorphism fixing the base") {
  std::mt19937_64 rng(35);
  const ModelSpec spec{1, 2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix T = oracle::random_invertible(3, rng);
    const SuperFunction a = oracle::random_function(spec, rng, 4);
    const SuperFunction b = oracle::random_function(spec, rng, 4);
    CHECK(pull_back(T, a * b) == pull_back(T, a) * pull_back(T, b));
    SuperFunction image(spec);
    for (int c = 1; c <= 3; ++c)
      image += SuperFunction::odd_generator(spec, c) * T(0, static_cast<std::size_t>(c - 1));
    CHECK(pull_back(T, SuperFunction::odd_generator(spec, 1)) == image);
    CHECK(pull_back(T, SuperFunction::even_generator(spec, 1)) ==
          SuperFunction::even_generator(spec, 1));
  }
}

TEST_CASE("bundle-induced automorphisms conjugate fields") {
  std::mt19937_64 rng(36);
  for (const ModelSpec& spec : {ModelSpec{0, 0, 3}, ModelSpec{1, 2, 2}}) {
    const LieModel m = build_model(spec);
    const std::size_t r = static_cast<std::size_t>(spec.odd_rank);
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix T = oracle::random_invertible(r, rng);
      const Matrix psi = bundle_induced_automorphism(m, T);
      CHECK(check_automorphism(m, psi).pass);
      CHECK(reconstruct_bundle_map(m, psi) == T);
      // phi*(psi(X) f) = X(phi* f) for every basis field and a random function.
      const SuperFunction f = oracle::random_function(spec, rng, 5);
      for (std::size_t i = 0; i < m.dimension(); ++i) {
        const SuperVectorField image = m.field(psi.column(i));
        CHECK(pull_back(T, apply(image, f)) == apply(m.basis()[i], pull_back(T, f)));
      }
    }
  }
}

TEST_CASE("bundle reconstruction examples") {
  std::mt19937_64 rng(37);
  const LieModel w3 = build_model({0, 0, 3});
  const Matrix rescale = diag({2, 1, 1});
  CHECK(reconstruct_bundle_map(w3, bundle_induced_automorphism(w3, rescale)) == rescale);
  CHECK(reconstruct_bundle_map(w3, Matrix::identity(w3.dimension())).is_identity());
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix psi1 = bundle_induced_automorphism(w3, oracle::random_invertible(3, rng));
    const Matrix psi2 = bundle_induced_automorphism(w3, oracle::random_invertible(3, rng));
    CHECK(reconstruct_bundle_map(w3, psi1 * psi2) ==
          reconstruct_bundle_map(w3, psi1) * reconstruct_bundle_map(w3, psi2));
  }
}

TEST_CASE("verify_conjugation") {
  std::mt19937_64 rng(38);
  const LieModel w3 = build_model({0, 0, 3});
  const std::size_t n = w3.dimension();
  CHECK(verify_conjugation(w3, Matrix::identity(3), Matrix::identity(n)).pass);
  const Matrix T = oracle::random_invertible(3, rng);
  const Matrix psi = bundle_induced_automorphism(w3, T);
  CHECK(verify_conjugation(w3, T, psi).pass);

  Vector Y = random_in_degree(w3, 2, rng);
  if (is_zero(Y)) Y[w3.indices_of_degree(2).front()] = 1;
  const ConjugationCheck c = verify_conjugation(w3, T, psi * ad_exp(w3, Y));
  CHECK_FALSE(c.pass);
  CHECK(c.min_shift >= 2);
}

TEST_CASE("lambda detection") {
  std::mt19937_64 rng(39);
  const LieModel w2 = build_model({0, 0, 2});
  CHECK(detect_lambda(w2, Matrix::identity(w2.dimension())) == 1);
  CHECK(detect_lambda(w2, bundle_induced_automorphism(w2, diag({2, 1}))) == 1);
  CHECK(detect_lambda(w2, construct_exceptional_swap(w2, Matrix::identity(2))) == -1);
  const LieModel w3 = build_model({0, 0, 3});
  CHECK(kind_of([&] { detect_lambda(w3, Matrix::identity(w3.dimension())); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("exceptional swap on W(2)") {
  const LieModel m = build_model({0, 0, 2});
  const std::size_t n = m.dimension();
  const Matrix psi0 = construct_exceptional_swap(m, Matrix::identity(2));
  CHECK(check_automorphism(m, psi0).pass);
  CHECK(psi0 * m.euler_vector() == Rational(-1) * m.euler_vector());
  for (int a = 1; a <= 2; ++a) {
    const std::string da = "d/dxi" + std::to_string(a);
    CHECK(psi0.column(find_label(m, da)) == unit_vector(n, find_label(m, "xi1 xi2 " + da)));
  }
  // Degree-0 block A -> A - tr(A) I: traceless fields are fixed.
  const std::size_t e11 = find_label(m, "xi1 d/dxi1"), e22 = find_label(m, "xi2 d/dxi2");
  const std::size_t e12 = find_label(m, "xi1 d/dxi2"), e21 = find_label(m, "xi2 d/dxi1");
  CHECK(psi0.column(e12) == unit_vector(n, e12));
  CHECK(psi0.column(e21) == unit_vector(n, e21));
  CHECK(psi0.column(e11) == Rational(-1) * unit_vector(n, e22));
  CHECK(psi0.column(e22) == Rational(-1) * unit_vector(n, e11));

  const Matrix square = psi0 * psi0;
  CHECK(detect_lambda(m, square) == 1);
  CHECK(verify_conjugation(m, reconstruct_bundle_map(m, square), square).pass);

  CHECK(kind_of([&] { construct_exceptional_swap(build_model({0, 0, 3}), Matrix::identity(2)); }) ==
        ErrorKind::Precondition);
  CHECK(kind_of([&] { construct_exceptional_swap(m, Matrix(2, 2)); }) == ErrorKind::Precondition);
}

TEST_CASE("unit spectrum scan returns plus and minus eps") {
  const std::vector<Rational> expected{Rational(-1), Rational(1)};
  CHECK(unit_spectrum_euler_scalars(build_model({0, 0, 2})) == expected);
  CHECK(unit_spectrum_euler_scalars(build_model({1, 1, 1})) == expected);
}

TEST_CASE("full factorization") {
  std::mt19937_64 rng(40);
  const LieModel w3 = build_model({0, 0, 3});
  const Matrix T = oracle::random_invertible(3, rng);
  const Matrix psi = bundle_induced_automorphism(w3, T) * ad_exp(w3, random_in_degree(w3, 2, rng));
  const FactorizationResult r = factor_automorphism(w3, psi);
  CHECK(r.bundle_part == T);
  CHECK(r.lambda == 1);
  CHECK_FALSE(r.uses_swap);
  CHECK(recompose(w3, r) == psi);

  const LieModel w2 = build_model({0, 0, 2});
  const Matrix swapped = bundle_induced_automorphism(w2, oracle::random_invertible(2, rng)) *
                         construct_exceptional_swap(w2, Matrix::identity(2));
  const FactorizationResult s = factor_automorphism(w2, swapped);
  CHECK(s.lambda == -1);
  CHECK(s.uses_swap);
  CHECK(recompose(w2, s) == swapped);

  CHECK(kind_of([&] { factor_automorphism(w3, Rational(2) * Matrix::identity(w3.dimension())); }) ==
        ErrorKind::Precondition);
  const LieModel jet = build_model({1, 1, 1});
  CHECK(kind_of([&] { factor_automorphism(jet, Matrix::identity(jet.dimension())); }) ==
        ErrorKind::Unsupported);
}
