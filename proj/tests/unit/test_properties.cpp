// Randomized identities over hand-rolled generators, seeded for reproducibility.
#include "doctest.h"

#include <random>

#include "core/automorphism.hpp"
#include "support/oracles.hpp"

using namespace svf;

namespace {

Vector random_homogeneous(const LieModel& m, int parity, std::mt19937_64& rng) {
  return oracle::random_integer_vector(m.dimension(), m.indices_of_parity(parity), rng, -3, 3);
}

int sign(int p, int q) { return (p * q) % 2 ? -1 : 1; }

/// Automorphisms drawn from the three constructions the library offers.
Matrix random_automorphism(const LieModel& m, std::mt19937_64& rng) {
  const std::size_t r = static_cast<std::size_t>(m.spec().odd_rank);
  Matrix psi = bundle_induced_automorphism(m, oracle::random_invertible(r, rng));
  if (!canonical_ideal(m).is_zero()) {
    const Vector Y = oracle::random_integer_vector(m.dimension(), m.indices_of_degree(2), rng, -3, 3);
    psi = psi * ad_exp(m, Y);
  }
  if (m.spec() == ModelSpec{0, 0, 2} && rng() % 2)
    psi = psi * construct_exceptional_swap(m, oracle::random_invertible(2, rng));
  return psi;
}

}  // namespace

TEST_CASE("structure constants satisfy antisymmetry and Jacobi on random vectors") {
  std::mt19937_64 rng(51);
  for (const ModelSpec& spec : {ModelSpec{0, 0, 3}, ModelSpec{1, 2, 2}, ModelSpec{2, 1, 2}}) {
    const LieModel m = build_model(spec);
    for (int trial = 0; trial < 40; ++trial) {
      const int px = trial % 2, py = (trial / 2) % 2, pz = (trial / 4) % 2;
      const Vector x = random_homogeneous(m, px, rng), y = random_homogeneous(m, py, rng),
                   z = random_homogeneous(m, pz, rng);
      CHECK(m.bracket(x, y) == Rational(-sign(px, py)) * m.bracket(y, x));
      CHECK(m.bracket(x, m.bracket(y, z)) ==
            m.bracket(m.bracket(x, y), z) + Rational(sign(px, py)) * m.bracket(y, m.bracket(x, z)));
    }
  }
}

TEST_CASE("ad is a representation") {
  std::mt19937_64 rng(52);
  const LieModel m = build_model({0, 0, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const int px = trial % 2, py = (trial / 2) % 2;
    const Vector x = random_homogeneous(m, px, rng), y = random_homogeneous(m, py, rng);
    CHECK(m.ad(m.bracket(x, y)) ==
          m.ad(x) * m.ad(y) - Rational(sign(px, py)) * (m.ad(y) * m.ad(x)));
  }
}

TEST_CASE("ad_exp of random elements of g' is an automorphism") {
  std::mt19937_64 rng(53);
  for (int r : {3, 4}) {
    const LieModel m = build_model({0, 0, r});
    for (int trial = 0; trial < 20; ++trial) {
      const Vector Y = oracle::random_integer_vector(m.dimension(), m.indices_of_degree(2), rng, -3, 3);
      CHECK(check_automorphism(m, ad_exp(m, Y)).pass);
    }
  }
}

TEST_CASE("reconstruct inverts the bundle-induced constructor") {
  std::mt19937_64 rng(54);
  for (int r : {2, 3}) {
    const LieModel m = build_model({0, 0, r});
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix T = oracle::random_invertible(static_cast<std::size_t>(r), rng);
      CHECK(reconstruct_bundle_map(m, bundle_induced_automorphism(m, T)) == T);
    }
  }
}

TEST_CASE("bundle-induced constructor is multiplicative") {
  std::mt19937_64 rng(55);
  const LieModel m = build_model({1, 2, 2});
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix A = oracle::random_invertible(2, rng), B = oracle::random_invertible(2, rng);
    CHECK(bundle_induced_automorphism(m, A * B) ==
          bundle_induced_automorphism(m, A) * bundle_induced_automorphism(m, B));
  }
}

TEST_CASE("p is a group homomorphism on random automorphisms") {
  std::mt19937_64 rng(56);
  for (const ModelSpec& spec : {ModelSpec{0, 0, 2}, ModelSpec{0, 0, 3}}) {
    const LieModel m = build_model(spec);
    const FilteredQuotient q = filtered_quotient(m);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix a = random_automorphism(m, rng), b = random_automorphism(m, rng);
      REQUIRE(check_automorphism(m, a).pass);
      CHECK(induced_graded_aut(q, a * b) == induced_graded_aut(q, a) * induced_graded_aut(q, b));
    }
  }
}

TEST_CASE("factorization recomposes random automorphisms") {
  std::mt19937_64 rng(57);
  for (const ModelSpec& spec : {ModelSpec{0, 0, 2}, ModelSpec{0, 0, 3}}) {
    const LieModel m = build_model(spec);
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix psi = random_automorphism(m, rng);
      CHECK(recompose(m, factor_automorphism(m, psi)) == psi);
    }
  }
}

TEST_CASE("echelon form is a canonical subspace representative") {
  std::mt19937_64 rng(58);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> gens(3, zero_vector(6));
    for (auto& g : gens)
      for (auto& c : g) c = entry(rng);
    std::vector<Vector> mixed{gens[0] + gens[1], gens[1] - Rational(2) * gens[2], gens[2],
                              Rational(5) * gens[0]};
    const Subspace a = Subspace::span(6, gens), b = Subspace::span(6, mixed);
    CHECK(a == b);
    for (const auto& g : gens) CHECK(a.contains(g));
    CHECK(sum(a, b) == a);
    CHECK(intersection(a, b) == a);
  }
}

TEST_CASE("exact linear algebra") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix M = oracle::random_invertible(5, rng);
    const auto inv = inverse(M);
    REQUIRE(inv.has_value());
    CHECK((M * *inv).is_identity());
    Vector b = zero_vector(5);
    for (auto& c : b) c = oracle::small_rational(rng);
    const auto x = solve(M, b);
    REQUIRE(x.has_value());
    CHECK(M * *x == b);
  }
  Matrix singular(3, 3);
  singular(0, 0) = 1;
  singular(1, 0) = 2;
  CHECK_FALSE(inverse(singular).has_value());
  CHECK(rank(singular) == 1);
  const auto kernel = nullspace(singular);
  CHECK(kernel.size() == 2);
  for (const auto& v : kernel) CHECK(is_zero(singular * v));
  CHECK(inverse(Matrix()).has_value());
}
