#include "doctest.h"

#include "core/error.hpp"
#include "core/lie_model.hpp"
#include "support/oracles.hpp"

using namespace svf;

namespace {

std::size_t find_label(const LieModel& m, const std::string& label) {
  for (std::size_t i = 0; i < m.dimension(); ++i)
    if (m.label(i) == label) return i;
  FAIL("no basis element labelled " << label);
  return 0;
}

Subspace degree_space(const LieModel& m, int k) {
  return Subspace::coordinate(m.dimension(), m.indices_of_degree(k));
}

Subspace sum_of_degrees(const LieModel& m, std::initializer_list<int> ks) {
  Subspace out(m.dimension());
  for (int k : ks) out = sum(out, degree_space(m, k));
  return out;
}

Vector coords(const LieModel& m, const SuperVectorField& X) { return m.coordinates(X); }

}  // namespace

TEST_CASE("point model dimensions follow r 2^r and C(r, k+1) r") {
  for (int r = 1; r <= 4; ++r) {
    const LieModel m = build_model({0, 0, r});
    CHECK(static_cast<long long>(m.dimension()) == r * (1LL << r));
    CHECK(model_dimension({0, 0, r}) == m.dimension());
    const auto eig = grading_eigenspaces(m);
    for (int k = -1; k <= r - 1; ++k) {
      const long long expected = oracle::point_degree_dim(r, k);
      const long long got = eig.count(k) ? static_cast<long long>(eig.at(k).dim()) : 0;
      CHECK(got == expected);
    }
  }
}

TEST_CASE("jet model dimensions") {
  for (const ModelSpec& spec : {ModelSpec{1, 1, 1}, ModelSpec{1, 3, 2}, ModelSpec{2, 2, 1},
                                ModelSpec{1, 0, 2}}) {
    const LieModel m = build_model(spec);
    CHECK(static_cast<long long>(m.dimension()) ==
          oracle::jet_dimension(spec.base_dim, spec.truncation_order, spec.odd_rank));
  }
  CHECK(build_model({1, 3, 2}).dimension() == 44);
}

TEST_CASE("W(2) degree dimensions and basis order") {
  const LieModel m = build_model({0, 0, 2});
  REQUIRE(m.dimension() == 8);
  CHECK(m.indices_of_degree(-1).size() == 2);
  CHECK(m.indices_of_degree(0).size() == 4);
  CHECK(m.indices_of_degree(1).size() == 2);
  for (std::size_t i = 1; i < m.dimension(); ++i) CHECK(m.degree(i - 1) <= m.degree(i));
  CHECK(m.label(0) == "d/dxi1");
  CHECK(m.label(1) == "d/dxi2");
}

TEST_CASE("jet basis puts d/dx fields before d/dxi fields within a degree") {
  const LieModel m = build_model({1, 1, 1});
  for (std::size_t i = 1; i < m.dimension(); ++i)
    if (m.degree(i - 1) == m.degree(i))
      CHECK_FALSE((m.descriptor(i - 1).kind == FieldKind::Odd &&
                   m.descriptor(i).kind == FieldKind::Even));
  const Subspace minus_one = grading_eigenspaces(m).at(-1);
  CHECK(minus_one.contains(unit_vector(m.dimension(), find_label(m, "d/dxi1"))));
  CHECK(minus_one.contains(unit_vector(m.dimension(), find_label(m, "x1 d/dxi1"))));
}

TEST_CASE("structure constants reproduce the symbolic bracket") {
  for (const ModelSpec& spec : {ModelSpec{0, 0, 3}, ModelSpec{1, 2, 2}}) {
    const LieModel m = build_model(spec);
    for (std::size_t i = 0; i < m.dimension(); ++i)
      for (std::size_t j = 0; j < m.dimension(); ++j) {
        Vector expected = zero_vector(m.dimension());
        for (const auto& t : m.structure(i, j)) expected[t.index] = t.coeff;
        CHECK(coords(m, bracket(m.basis()[i], m.basis()[j])) == expected);
      }
  }
}

TEST_CASE("model construction errors") {
  CHECK_THROWS_AS(build_model({0, 0, 4}, 10), Error);
  try {
    build_model({0, 0, 4}, 10);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
  const LieModel jet = build_model({1, 1, 1});
  CHECK_THROWS_AS(jet.coordinates(SuperVectorField::even_partial(jet.spec(), 1)), Error);
}

TEST_CASE("eigenspaces are the ad eps eigenspaces and span the model") {
  for (const ModelSpec& spec : {ModelSpec{0, 0, 3}, ModelSpec{1, 3, 2}}) {
    const LieModel m = build_model(spec);
    const Matrix ad_eps = m.ad(m.euler_vector());
    std::size_t total = 0;
    for (const auto& [k, space] : grading_eigenspaces(m)) {
      total += space.dim();
      for (const auto& v : space.basis()) CHECK(ad_eps * v == Rational(k) * v);
    }
    CHECK(total == m.dimension());
  }
}

TEST_CASE("canonical ideal") {
  CHECK(canonical_ideal(build_model({0, 0, 2})).is_zero());
  const LieModel w3 = build_model({0, 0, 3});
  CHECK(canonical_ideal(w3) == degree_space(w3, 2));
  CHECK(canonical_ideal(w3).dim() == 3);
  const LieModel w4 = build_model({0, 0, 4});
  CHECK(canonical_ideal(w4).dim() == static_cast<std::size_t>(oracle::binomial(4, 3) * 4));
  CHECK(is_ideal_of(w4, canonical_ideal(w4), w4.parity_subspace(0)));
}

TEST_CASE("ad-nilpotency examples") {
  const LieModel m = build_model({0, 0, 3});
  CHECK_FALSE(is_ad_nilpotent(m, m.euler_vector()));
  for (std::size_t i : m.indices_of_degree(2)) CHECK(is_ad_nilpotent(m, unit_vector(m.dimension(), i)));
  CHECK_FALSE(is_ad_nilpotent(m, unit_vector(m.dimension(), find_label(m, "xi1 d/dxi1"))));
}

TEST_CASE("brute-force maximal nilpotent ideals on point models") {
  const LieModel w3 = build_model({0, 0, 3});
  const auto even_on_all = bruteforce_max_nilpotent_ideal(w3, w3.parity_subspace(0), w3.whole());
  CHECK(even_on_all.ideal == degree_space(w3, 2));
  CHECK(even_on_all.routes_agree);
  CHECK(even_on_all.prediction_maximal);

  const Subspace g00 = degree_space(w3, 0);
  const auto deg0 = bruteforce_max_nilpotent_ideal(w3, g00, g00);
  CHECK(deg0.ideal == Subspace::span(w3.dimension(), {w3.euler_vector()}));

  const LieModel w2 = build_model({0, 0, 2});
  CHECK(bruteforce_max_nilpotent_ideal(w2, w2.parity_subspace(0), w2.whole()).ideal.is_zero());

  const LieModel jet = build_model({1, 1, 1});
  try {
    bruteforce_max_nilpotent_ideal(jet, jet.parity_subspace(0), jet.whole());
    FAIL("jet models must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}

TEST_CASE("nilpotent-ideal search falls back when the trace radical is too large") {
  // L = span(eps + J), J a rotation of the generators: the trace form of L on
  // g^{-1} vanishes, yet eps + J has eigenvalues -1 +- i there.
  const LieModel m = build_model({0, 0, 2});
  const std::size_t n = m.dimension();
  Vector J = zero_vector(n);
  J[find_label(m, "xi1 d/dxi2")] = 1;
  J[find_label(m, "xi2 d/dxi1")] = -1;
  const Subspace L = Subspace::span(n, {m.euler_vector() + J});
  const auto analysis = bruteforce_max_nilpotent_ideal(m, L, degree_space(m, -1));
  CHECK(analysis.ideal.is_zero());
  CHECK(analysis.certificate == NilpotentCertificate::AssociativeRadical);
}

TEST_CASE("filtration levels") {
  const LieModel w3 = build_model({0, 0, 3});
  const Filtration f3 = filtration(w3);
  CHECK(f3.at(2) == degree_space(w3, 2));
  CHECK(f3.at(1) == degree_space(w3, 1));
  CHECK(f3.at(3).is_zero());
  CHECK(f3.at(-1) == w3.parity_subspace(1));
  CHECK(f3.at(0) == w3.parity_subspace(0));

  const LieModel w4 = build_model({0, 0, 4});
  const Filtration f4 = filtration(w4);
  CHECK(f4.at(1) == sum_of_degrees(w4, {1, 3}));
  for (int p = -1; p <= 4; ++p) CHECK(f4.at(p) == graded_prediction(w4, p));

  const LieModel w2 = build_model({0, 0, 2});
  CHECK(filtration(w2).at(2).is_zero());
}

TEST_CASE("jet filtration misses the constant-coefficient part of g^1") {
  const LieModel m = build_model({1, 3, 2});
  const Filtration f = filtration(m);
  CHECK(f.at(1).dim() == 12);
  CHECK(graded_prediction(m, 1).dim() == 14);
  CHECK(graded_prediction(m, 1).contains(f.at(1)));
  try {
    graded_quotient(m);
    FAIL("graded quotient must not exist here");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Consistency);
  }
}

TEST_CASE("graded quotient is degreewise isomorphic to the model") {
  for (int r : {3, 4}) {
    const LieModel m = build_model({0, 0, r});
    const GradedQuotient gq = graded_quotient(m);
    const LieModel& q = gq.quotient.model;
    for (const auto& [k, space] : grading_eigenspaces(m))
      CHECK(q.indices_of_degree(k).size() == space.dim());
    CHECK((gq.to_model * gq.from_model).is_identity());
    CHECK((gq.from_model * gq.to_model).is_identity());
    for (std::size_t i = 0; i < q.dimension(); ++i) {
      const Vector ei = gq.to_model.column(i);
      CHECK(degree_space(m, q.degree(i)).contains(ei));
      for (std::size_t j = 0; j < q.dimension(); ++j) {
        const Vector qij = q.bracket(unit_vector(q.dimension(), i), unit_vector(q.dimension(), j));
        CHECK(gq.to_model * qij == m.bracket(ei, gq.to_model.column(j)));
      }
    }
  }
  try {
    graded_quotient(build_model({0, 0, 2}));
    FAIL("hypothesis violation must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}
