#include "doctest.h"

#include <random>

#include "core/error.hpp"
#include "core/superfunction.hpp"
#include "support/oracles.hpp"

using namespace svf;

namespace {

const ModelSpec W2{0, 0, 2};
const ModelSpec W4{0, 0, 4};
const ModelSpec J12{1, 2, 1};

SuperFunction xi(const ModelSpec& spec, int a) { return SuperFunction::odd_generator(spec, a); }
SuperFunction one(const ModelSpec& spec) { return SuperFunction::constant(spec, 1); }

SuperFunction odd_monomial(const ModelSpec& spec, const std::vector<int>& sorted,
                           const Rational& c = 1) {
  return SuperFunction::monomial(spec, BaseExponents(spec.base_dim, 0), odd_mask(sorted), c);
}

}  // namespace

TEST_CASE("model spec validation and flags") {
  CHECK_NOTHROW(ModelSpec{0, 0, 1}.validate());
  CHECK_THROWS_AS(ModelSpec({0, 0, 0}).validate(), Error);
  CHECK_THROWS_AS(ModelSpec({-1, 0, 2}).validate(), Error);
  CHECK(ModelSpec{0, 0, 2}.low_rank_exceptional());
  CHECK(ModelSpec{1, 3, 1}.low_rank_exceptional());
  CHECK_FALSE(ModelSpec{0, 0, 3}.low_rank_exceptional());
  CHECK_FALSE(ModelSpec{1, 3, 2}.low_rank_exceptional());
  CHECK(ModelSpec{0, 0, 3}.filtration_hypothesis());
  CHECK(ModelSpec{1, 3, 2}.filtration_hypothesis());
  CHECK_FALSE(ModelSpec{0, 0, 2}.filtration_hypothesis());
  CHECK_FALSE(ModelSpec{1, 1, 1}.filtration_hypothesis());
}

TEST_CASE("rational parsing is canonical") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("+7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("normalize resolves signs, repeats and truncation") {
  CHECK(normalize(W2, {{{}, {2, 1}, 1}}) == odd_monomial(W2, {1, 2}, -1));
  CHECK(normalize(W2, {{{}, {1, 1}, 5}}).is_zero());
  CHECK(normalize(J12, {{{3}, {1}, 1}}).is_zero());
  CHECK(normalize(W2, {{{}, {1}, 2}, {{}, {1}, -2}}).is_zero());
  CHECK_THROWS_AS(normalize(W2, {{{}, {3}, 1}}), Error);
  CHECK_THROWS_AS(normalize(W2, {{{1}, {}, 1}}), Error);
}

TEST_CASE("normalize agrees with the transposition-count sign oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 6), idx(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> raw(static_cast<std::size_t>(len(rng)));
    for (int& a : raw) a = idx(rng);
    std::vector<int> sorted = raw;
    const auto sign = oracle::sort_with_sign(sorted);
    const SuperFunction got = normalize(W4, {{{}, raw, Rational(3)}});
    if (!sign) {
      CHECK(got.is_zero());
    } else {
      CHECK(got == odd_monomial(W4, sorted, Rational(3 * *sign)));
    }
  }
}

TEST_CASE("normalization is idempotent") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const SuperFunction f = oracle::random_function(J12, rng, 6);
    std::vector<RawTerm> raw;
    for (const auto& [mono, c] : f.terms()) raw.push_back({mono.base, odd_indices(mono.odd), c});
    CHECK(normalize(J12, raw) == f);
  }
}

TEST_CASE("multiply on generators") {
  CHECK(xi(W2, 1) * xi(W2, 2) == odd_monomial(W2, {1, 2}));
  CHECK(xi(W2, 2) * xi(W2, 1) == odd_monomial(W2, {1, 2}, -1));
  CHECK((one(W2) + xi(W2, 1)) * (one(W2) - xi(W2, 1)) == one(W2));
  CHECK((odd_monomial(W2, {1, 2}) * xi(W2, 1)).is_zero());
  const SuperFunction x = SuperFunction::even_generator(J12, 1);
  CHECK((x * x * x).is_zero());
  CHECK(x * xi(J12, 1) == xi(J12, 1) * x);
}

TEST_CASE("multiply matches the Grassmann oracle on all monomial pairs of W(4)") {
  for (const auto& ka : oracle::all_odd_monomials(4))
    for (const auto& kb : oracle::all_odd_monomials(4)) {
      const oracle::Grassmann expected = oracle::g_mul({{ka, Rational(1)}}, {{kb, Rational(1)}});
      CHECK(oracle::to_grassmann(odd_monomial(W4, ka) * odd_monomial(W4, kb)) == expected);
    }
}

TEST_CASE("supercommutativity on monomial bases for r <= 4") {
  for (int r = 1; r <= 4; ++r) {
    const ModelSpec spec{0, 0, r};
    for (const auto& ka : oracle::all_odd_monomials(r))
      for (const auto& kb : oracle::all_odd_monomials(r)) {
        const SuperFunction a = odd_monomial(spec, ka), b = odd_monomial(spec, kb);
        const int sign = (ka.size() * kb.size()) % 2 ? -1 : 1;
        CHECK(a * b == Rational(sign) * (b * a));
      }
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(13);
  for (const ModelSpec& spec : {W4, J12, ModelSpec{2, 2, 2}})
    for (int trial = 0; trial < 40; ++trial) {
      const SuperFunction a = oracle::random_function(spec, rng, 5);
      const SuperFunction b = oracle::random_function(spec, rng, 5);
      const SuperFunction c = oracle::random_function(spec, rng, 5);
      CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("grade_split") {
  const SuperFunction f =
      SuperFunction::constant(W2, 3) + xi(W2, 1) + odd_monomial(W2, {1, 2}, 2);
  const auto parts = grade_split(f);
  REQUIRE(parts.size() == 3);
  CHECK(parts.at(0) == SuperFunction::constant(W2, 3));
  CHECK(parts.at(1) == xi(W2, 1));
  CHECK(parts.at(2) == odd_monomial(W2, {1, 2}, 2));
  CHECK(grade_split(SuperFunction(W2)).empty());

  const auto product = grade_split((one(W2) + xi(W2, 1)) * (one(W2) + xi(W2, 2)));
  const oracle::Grassmann expanded =
      oracle::g_mul({{{}, Rational(1)}, {{1}, Rational(1)}}, {{{}, Rational(1)}, {{2}, Rational(1)}});
  REQUIRE(product.size() == 3);
  CHECK(product.at(0) == one(W2));
  CHECK(product.at(1) == xi(W2, 1) + xi(W2, 2));
  CHECK(product.at(2) == odd_monomial(W2, {1, 2}));
  CHECK(oracle::to_grassmann(product.at(2)) == oracle::Grassmann{{{1, 2}, expanded.at({1, 2})}});
}

TEST_CASE("grade_split components re-sum and have pure odd degree") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const SuperFunction f = oracle::random_function(J12, rng, 8);
    SuperFunction total(J12);
    for (const auto& [k, part] : grade_split(f)) {
      total += part;
      for (const auto& [mono, c] : part.terms()) CHECK(odd_degree(mono.odd) == k);
    }
    CHECK(total == f);
  }
}

TEST_CASE("parity of homogeneous and mixed functions") {
  CHECK(SuperFunction(W2).parity() == 0);
  CHECK(xi(W2, 1).parity() == 1);
  CHECK(odd_monomial(W2, {1, 2}).parity() == 0);
  CHECK((one(W2) + xi(W2, 1)).parity() == -1);
}

TEST_CASE("functions from different specs do not mix") {
  CHECK_THROWS_AS(xi(W2, 1) + xi(W4, 1), Error);
}
