#include "core/verification.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>

#include "core/error.hpp"

namespace svf {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

bool VerificationReport::any_fail() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return true;
  return false;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra",       "ideals",      "filtration",
                                              "automorphisms", "exceptional", "all"};
  return names;
}

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  Json witness;
  std::string skip_reason;
};

Outcome pass(std::string detail = {}) { return Outcome{CheckStatus::Pass, std::move(detail), {}, {}}; }
Outcome failure(Json witness, std::string detail = {}) {
  return Outcome{CheckStatus::Fail, std::move(detail), std::move(witness), {}};
}
Outcome skipped(std::string reason) { return Outcome{CheckStatus::Skipped, {}, {}, std::move(reason)}; }

const char* kJetSkip =
    "truncated jet model: the statement relies on genuine-manifold facts (a nonvanishing vector "
    "field is not ad-nilpotent) that fail after truncation; checked on point models only";

struct Context {
  const LieModel& m;
  std::uint64_t seed;
  std::map<int, Subspace> eigenspaces;
  std::vector<Matrix> automorphisms;  // collected for the p-homomorphism check
};

std::uint64_t check_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
  return seed ^ h;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

int random_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_nonzero(Rng& rng) {
  int v = random_int(rng, -3, 2);
  return Rational(v >= 0 ? v + 1 : v);
}

// Random homogeneous function of the given parity.
SuperFunction random_function(const ModelSpec& spec, Rng& rng, int parity) {
  const auto bases = base_monomials(spec);
  std::vector<OddMask> odds;
  for (OddMask o : odd_monomials(spec))
    if (odd_degree(o) % 2 == parity) odds.push_back(o);
  SuperFunction f(spec);
  const int terms = random_int(rng, 1, 3);
  for (int t = 0; t < terms; ++t)
    f.add_term(Monomial{bases[random_int(rng, 0, static_cast<int>(bases.size()) - 1)],
                        odds[random_int(rng, 0, static_cast<int>(odds.size()) - 1)]},
               random_nonzero(rng));
  return f;
}

Vector random_combination(const LieModel& m, Rng& rng, const std::vector<std::size_t>& indices,
                          int max_terms = 3) {
  Vector v(m.dimension());
  if (indices.empty()) return v;
  const int terms = random_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t)
    v[indices[random_int(rng, 0, static_cast<int>(indices.size()) - 1)]] += random_nonzero(rng);
  return v;
}

// (-1)^{pq}
int koszul_sign(int p, int q) { return (p & q) ? -1 : 1; }

Json pair_json(std::size_t i, std::size_t j) { return Json::array({i, j}); }

// ---------------------------------------------------------------- algebra

Outcome check_dimensions(Context& c) {
  const ModelSpec& spec = c.m.spec();
  const long long B = static_cast<long long>(base_monomials(spec).size());
  const int r = spec.odd_rank, s = spec.base_dim;
  Json mismatches = Json::array();
  std::string detail = "dim " + std::to_string(c.m.dimension());
  for (int k = -1; k <= r; ++k) {
    const long long expected = s * (B - 1) * binomial(r, k) + r * B * binomial(r, k + 1);
    auto it = c.eigenspaces.find(k);
    const long long got = it == c.eigenspaces.end() ? 0 : static_cast<long long>(it->second.dim());
    if (got != expected)
      mismatches.push_back(Json{{"degree", k}, {"expected", expected}, {"got", got}});
    if (got > 0) detail += ", g^" + std::to_string(k) + ": " + std::to_string(got);
  }
  const long long total = s * (B - 1) * (1LL << r) + r * B * (1LL << r);
  if (static_cast<long long>(c.m.dimension()) != total)
    mismatches.push_back(Json{{"total_expected", total}, {"got", c.m.dimension()}});
  if (!mismatches.empty()) return failure(mismatches);
  return pass(detail);
}

Outcome check_eigenspaces_match_labels(Context& c) {
  std::size_t total = 0;
  for (const auto& [k, space] : c.eigenspaces) {
    total += space.dim();
    if (!(space == Subspace::coordinate(c.m.dimension(), c.m.indices_of_degree(k))))
      return failure(Json{{"degree", k}});
  }
  if (total != c.m.dimension()) return failure(Json{{"sum_of_eigenspaces", total}});
  return pass("eigenspaces are spanned by the homogeneous basis");
}

Outcome check_antisymmetry(Context& c) {
  const std::size_t n = c.m.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector a = c.m.bracket(unit_vector(n, i), unit_vector(n, j));
      const Vector b = c.m.bracket(unit_vector(n, j), unit_vector(n, i));
      const int sign = -koszul_sign(c.m.parity(i), c.m.parity(j));
      if (a != Rational(sign) * b) return failure(pair_json(i, j));
    }
  return pass(std::to_string(n * n) + " pairs");
}

constexpr std::size_t kExhaustiveJacobiDim = 64;

// Jacobiator of basis triples straight from the sparse structure constants.
class BasisJacobiator {
 public:
  explicit BasisJacobiator(const LieModel& m) : m_(m), acc_(m.dimension()) {}

  // Nonzero entries of [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - (-1)^{|i||j|} [e_j,[e_i,e_k]].
  Json defect(std::size_t i, std::size_t j, std::size_t k) {
    for (const auto& t : m_.structure(j, k)) accumulate(m_.structure(i, t.index), t.coeff);
    for (const auto& t : m_.structure(i, j)) accumulate(m_.structure(t.index, k), -t.coeff);
    const Rational sign = -koszul_sign(m_.parity(i), m_.parity(j));
    for (const auto& t : m_.structure(i, k))
      accumulate(m_.structure(j, t.index), sign * t.coeff);
    Json out;
    for (std::size_t idx : touched_) {
      if (sgn(acc_[idx]) != 0) {
        if (out.is_null()) out = Json::object();
        out[std::to_string(idx)] = to_json(acc_[idx]);
      }
      acc_[idx] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  void accumulate(const std::vector<StructureTerm>& terms, const Rational& scale) {
    for (const auto& t : terms) {
      mpq_mul(tmp_.get_mpq_t(), scale.get_mpq_t(), t.coeff.get_mpq_t());
      acc_[t.index] += tmp_;
      touched_.push_back(t.index);
    }
  }

  const LieModel& m_;
  Vector acc_;
  Rational tmp_;
  std::vector<std::size_t> touched_;
};

Outcome check_jacobi_structure(Context& c) {
  const std::size_t n = c.m.dimension();
  BasisJacobiator jacobiator(c.m);
  if (n <= kExhaustiveJacobiDim) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Json d = jacobiator.defect(i, j, k);
          if (!d.is_null()) return failure(Json{{"triple", {i, j, k}}, {"defect", d}});
        }
    return pass(std::to_string(n * n * n) + " basis triples");
  }
  Rng rng(check_seed(c.seed, "jacobi"));
  for (int t = 0; t < 20000; ++t) {
    const std::size_t i = random_int(rng, 0, n - 1), j = random_int(rng, 0, n - 1),
                      k = random_int(rng, 0, n - 1);
    Json d = jacobiator.defect(i, j, k);
    if (!d.is_null()) return failure(Json{{"triple", {i, j, k}}, {"defect", d}});
  }
  return pass("20000 random basis triples");
}

SuperVectorField random_field(const LieModel& m, Rng& rng, int parity) {
  return m.field(random_combination(m, rng, m.indices_of_parity(parity)));
}

Outcome check_jacobi_fields(Context& c) {
  Rng rng(check_seed(c.seed, "jacobi_fields"));
  for (int t = 0; t < 200; ++t) {
    const int px = random_int(rng, 0, 1), py = random_int(rng, 0, 1), pz = random_int(rng, 0, 1);
    const SuperVectorField X = random_field(c.m, rng, px), Y = random_field(c.m, rng, py),
                           Z = random_field(c.m, rng, pz);
    const SuperVectorField lhs = bracket(X, bracket(Y, Z));
    const SuperVectorField rhs =
        bracket(bracket(X, Y), Z) + Rational(koszul_sign(px, py)) * bracket(Y, bracket(X, Z));
    if (!(lhs == rhs))
      return failure(Json{{"case", t}, {"X", to_json(X)}, {"Y", to_json(Y)}, {"Z", to_json(Z)}});
  }
  return pass("200 random homogeneous triples");
}

Outcome check_leibniz(Context& c) {
  Rng rng(check_seed(c.seed, "leibniz"));
  const ModelSpec& spec = c.m.spec();
  for (int t = 0; t < 200; ++t) {
    const int px = random_int(rng, 0, 1), pa = random_int(rng, 0, 1), pb = random_int(rng, 0, 1);
    const SuperVectorField X = random_field(c.m, rng, px);
    const SuperFunction a = random_function(spec, rng, pa), b = random_function(spec, rng, pb);
    const SuperFunction lhs = apply(X, a * b);
    const SuperFunction rhs = apply(X, a) * b + Rational(koszul_sign(px, pa)) * (a * apply(X, b));
    if (!(lhs == rhs))
      return failure(Json{{"case", t}, {"X", to_json(X)}, {"a", to_json(a)}, {"b", to_json(b)}});
  }
  return pass("200 random (X, a, b)");
}

Outcome check_bracket_operator(Context& c) {
  Rng rng(check_seed(c.seed, "bracket_operator"));
  const ModelSpec& spec = c.m.spec();
  std::vector<SuperFunction> monomials;
  for (const auto& base : base_monomials(spec))
    for (OddMask odd : odd_monomials(spec)) monomials.push_back(SuperFunction::monomial(spec, base, odd));
  for (int t = 0; t < 50; ++t) {
    const int px = random_int(rng, 0, 1), py = random_int(rng, 0, 1);
    const SuperVectorField X = random_field(c.m, rng, px), Y = random_field(c.m, rng, py);
    const SuperVectorField XY = bracket(X, Y);
    for (const auto& a : monomials) {
      const SuperFunction expected =
          apply(X, apply(Y, a)) - Rational(koszul_sign(px, py)) * apply(Y, apply(X, a));
      if (!(apply(XY, a) == expected))
        return failure(Json{{"X", to_json(X)}, {"Y", to_json(Y)}, {"function", to_json(a)}});
    }
  }
  return pass("50 random pairs against all monomials");
}

Outcome check_grading_closure(Context& c) {
  const std::size_t n = c.m.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : c.m.structure(i, j))
        if (c.m.degree(t.index) != c.m.degree(i) + c.m.degree(j))
          return failure(Json{{"pair", pair_json(i, j)}, {"component", t.index}});
  return pass("all " + std::to_string(n * n) + " basis pairs");
}

Outcome check_degree_surjectivity(Context& c) {
  std::set<std::pair<int, int>> failing;
  Json missing = Json::array();
  for (const auto& [p, gp] : c.eigenspaces)
    for (const auto& [q, gq] : c.eigenspaces) {
      if (q < p) continue;
      auto target = c.eigenspaces.find(p + q);
      if (target == c.eigenspaces.end()) continue;
      const Subspace span = bracket_span(c.m, gp, gq);
      if (!(span == target->second)) {
        failing.insert({p, q});
        missing.push_back(Json{{"p", p}, {"q", q}, {"span_dim", span.dim()},
                               {"target_dim", target->second.dim()}});
      }
    }
  // At a point, eps is not a commutator of degree-0 fields.
  std::set<std::pair<int, int>> expected;
  if (c.m.spec().is_point()) expected.insert({0, 0});
  std::string detail = "non-surjective pairs:";
  for (const auto& [p, q] : failing) detail += " (" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (failing.empty()) detail += " none";
  if (!c.m.spec().is_point())
    return skipped(std::string("truncated jet model: brackets cannot produce constant d/dx "
                               "coefficients, so surjectivity is a point-model statement; ") +
                   detail);
  if (failing != expected) return failure(missing, detail);
  return pass(detail);
}

Outcome check_anchor(Context& c) {
  Rng rng(check_seed(c.seed, "anchor"));
  const auto degree0 = c.m.indices_of_degree(0);
  for (int t = 0; t < 50; ++t) {
    const SuperVectorField X = c.m.field(random_combination(c.m, rng, degree0));
    const SuperVectorField Y = c.m.field(random_combination(c.m, rng, degree0));
    if (!(anchor(bracket(X, Y)) == bracket(anchor(X), anchor(Y))))
      return failure(Json{{"X", to_json(X)}, {"Y", to_json(Y)}});
  }
  return pass("50 random degree-0 pairs");
}

// ---------------------------------------------------------------- ideals

Subspace positive_even_sum(const Context& c) {
  Subspace out(c.m.dimension());
  for (const auto& [k, space] : c.eigenspaces)
    if (k > 0 && k % 2 == 0) out = sum(out, space);
  return out;
}

Outcome check_canonical_ideal(Context& c) {
  const Subspace ideal = canonical_ideal(c.m);
  if (!(ideal == positive_even_sum(c))) return failure(Json{{"dim", ideal.dim()}});
  if (!is_ideal_of(c.m, ideal, c.m.parity_subspace(0)))
    return failure(Json{{"reason", "not an ideal of g_0"}});
  for (std::size_t i = 0; i < ideal.dim(); ++i)
    if (!is_ad_nilpotent(c.m, ideal.basis()[i]))
      return failure(Json{{"reason", "basis vector is not ad-nilpotent"}, {"vector", i}});
  return pass("g' dim " + std::to_string(ideal.dim()));
}

Json analysis_witness(const NilpotentIdealAnalysis& a) {
  return Json{{"bruteforce_dim", a.ideal.dim()},
              {"prediction_dim", a.prediction.dim()},
              {"prediction_is_ideal", a.prediction_is_ideal},
              {"prediction_nilpotent", a.prediction_nilpotent},
              {"prediction_maximal", a.prediction_maximal},
              {"routes_agree", a.routes_agree}};
}

Outcome check_max_nilpotent_even(Context& c) {
  if (!c.m.spec().is_point()) return skipped(kJetSkip);
  const auto a = bruteforce_max_nilpotent_ideal(c.m, c.m.parity_subspace(0), c.m.whole());
  const Subspace expected = positive_even_sum(c);
  if (!(a.ideal == expected) || !a.routes_agree || !a.prediction_maximal)
    return failure(analysis_witness(a));
  return pass("dim " + std::to_string(a.ideal.dim()));
}

Outcome check_max_nilpotent_degree0(Context& c) {
  if (!c.m.spec().is_point()) return skipped(kJetSkip);
  const Subspace g00 = c.eigenspaces.at(0);
  const auto a = bruteforce_max_nilpotent_ideal(c.m, g00, g00);
  const Subspace expected = Subspace::span(c.m.dimension(), {c.m.euler_vector()});
  if (!(a.ideal == expected) || !a.routes_agree || !a.prediction_maximal)
    return failure(analysis_witness(a));
  return pass("span(eps)");
}

// ---------------------------------------------------------------- filtration

const char* kFiltrationHypothesis = "hypothesis \"rk V > 2, or dim M > 0 and rk V > 1\" not met";
const char* kJetFiltrationSkip =
    "truncated jet model: g' has no constant d/dx coefficients, so [g', g^(-1)] misses the "
    "constant-coefficient part of g^1; checked on point models only";

Outcome check_filtration_levels(Context& c) {
  if (!c.m.spec().filtration_hypothesis()) return skipped(kFiltrationHypothesis);
  if (!c.m.spec().is_point()) return skipped(kJetFiltrationSkip);
  const Filtration f = filtration(c.m);
  std::string detail;
  for (int p = -1; p <= f.top(); ++p) {
    const Subspace level = f.at(p);
    if (!(level == graded_prediction(c.m, p)))
      return failure(Json{{"level", p}, {"computed_dim", level.dim()},
                          {"expected_dim", graded_prediction(c.m, p).dim()}});
    detail += (detail.empty() ? "" : ", ") + ("(" + std::to_string(p) + "): " +
                                             std::to_string(level.dim()));
  }
  return pass(detail);
}

Outcome check_filtration_brackets(Context& c) {
  const Filtration f = filtration(c.m);
  for (int p = -1; p <= f.top(); ++p)
    for (int q = p; q <= f.top(); ++q) {
      const Subspace span = bracket_span(c.m, f.at(p), f.at(q));
      if (!f.at(p + q).contains(span)) return failure(Json{{"p", p}, {"q", q}});
    }
  for (int p = -1; p < f.top(); ++p)
    if (!f.at(p).contains(f.at(p + 2))) return failure(Json{{"not_decreasing_at", p}});
  return pass("levels -1.." + std::to_string(f.top()));
}

Outcome check_graded_quotient(Context& c) {
  if (!c.m.spec().filtration_hypothesis()) return skipped(kFiltrationHypothesis);
  if (!c.m.spec().is_point()) return skipped(kJetFiltrationSkip);
  const GradedQuotient gq = graded_quotient(c.m);
  const LieModel& q = gq.quotient.model;
  for (const auto& [k, space] : c.eigenspaces)
    if (q.indices_of_degree(k).size() != space.dim())
      return failure(Json{{"degree", k}, {"quotient_dim", q.indices_of_degree(k).size()},
                          {"model_dim", space.dim()}});
  if (!(gq.to_model * gq.from_model).is_identity()) return failure(Json{{"reason", "inverse"}});
  return pass("isomorphic, dim " + std::to_string(q.dimension()));
}

// ---------------------------------------------------------------- automorphisms

Json check_witness(const AutomorphismCheck& a) {
  Json w{{"reason", a.reason}, {"i", a.i}, {"j", a.j}};
  if (!a.defect.empty()) w["defect"] = to_json(a.defect);
  return w;
}

Outcome check_identity_and_scaling(Context& c) {
  const std::size_t n = c.m.dimension();
  const auto id = check_automorphism(c.m, Matrix::identity(n));
  if (!id.pass) return failure(check_witness(id));
  const auto scaled = check_automorphism(c.m, Rational(2) * Matrix::identity(n));
  if (scaled.pass || scaled.reason != "bracket")
    return failure(Json{{"reason", "2 * identity accepted"}});
  return pass("identity accepted, 2*identity rejected at " + std::to_string(scaled.i) + "," +
              std::to_string(scaled.j));
}

std::vector<Vector> random_ideal_samples(Context& c, const std::string& id, int count) {
  Rng rng(check_seed(c.seed, id));
  const Subspace ideal = canonical_ideal(c.m);
  std::vector<Vector> out;
  for (int t = 0; t < count; ++t) {
    Vector Y(c.m.dimension());
    for (const auto& b : ideal.basis()) axpy(Y, random_int(rng, -3, 3), b);
    out.push_back(std::move(Y));
  }
  return out;
}

Outcome check_ad_exp(Context& c) {
  if (canonical_ideal(c.m).is_zero()) return skipped("g' = 0");
  const auto samples = random_ideal_samples(c, "ad_exp", 20);
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const Matrix E = ad_exp(c.m, samples[t]);
    const auto check = check_automorphism(c.m, E);
    if (!check.pass) return failure(Json{{"sample", t}, {"check", check_witness(check)}});
    if (!(E * ad_exp(c.m, Rational(-1) * samples[t])).is_identity())
      return failure(Json{{"sample", t}, {"reason", "exp(Y) exp(-Y) != 1"}});
    c.automorphisms.push_back(E);
  }
  return pass("20 samples");
}

Outcome check_kernel_factorization(Context& c) {
  if (canonical_ideal(c.m).is_zero()) return skipped("g' = 0");
  const auto samples = random_ideal_samples(c, "kernel_factorization", 20);
  std::size_t max_stages = 0;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    Matrix psi = ad_exp(c.m, samples[t]);
    if (t % 2 == 1) psi = psi * ad_exp(c.m, samples[t - 1]);
    const auto ys = factor_kernel_automorphism(c.m, psi);
    max_stages = std::max(max_stages, ys.size());
    if (compose_corrections(c.m, ys) != psi)
      return failure(Json{{"sample", t}, {"reason", "recomposition differs"}});
    if (t % 2 == 0 && c.m.spec().is_point() && c.eigenspaces.count(2) &&
        c.eigenspaces.at(2).contains(samples[t]) &&
        !(ys.size() == 1 && ys[0].field == samples[t]))
      return failure(Json{{"sample", t}, {"reason", "degree-2 generator not recovered"}});
  }
  return pass("20 samples, up to " + std::to_string(max_stages) + " stages");
}

Matrix random_bundle_matrix(Rng& rng, int r) {
  for (;;) {
    Matrix T(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) T(i, j) = Rational(random_int(rng, -3, 3), random_int(rng, 1, 3));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) T(i, j).canonicalize();
    if (inverse(T)) return T;
  }
}

Outcome check_bundle_reconstruction(Context& c) {
  Rng rng(check_seed(c.seed, "bundle_reconstruction"));
  const int r = c.m.spec().odd_rank;
  Matrix previous = Matrix::identity(r);
  for (int t = 0; t < 10; ++t) {
    const Matrix T = random_bundle_matrix(rng, r);
    const Matrix chi = bundle_induced_automorphism(c.m, T);
    const auto check = check_automorphism(c.m, chi);
    if (!check.pass) return failure(Json{{"sample", t}, {"check", check_witness(check)}});
    if (reconstruct_bundle_map(c.m, chi) != T)
      return failure(Json{{"sample", t}, {"reason", "reconstructed matrix differs"}});
    const auto conj = verify_conjugation(c.m, T, chi);
    if (!conj.pass) return failure(Json{{"sample", t}, {"index", conj.index}});
    const Matrix composite = chi * bundle_induced_automorphism(c.m, previous);
    if (reconstruct_bundle_map(c.m, composite) != T * previous)
      return failure(Json{{"sample", t}, {"reason", "reconstruction is not multiplicative"}});
    previous = T;
    c.automorphisms.push_back(chi);
  }
  return pass("10 samples");
}

Outcome check_full_factorization(Context& c) {
  if (!c.m.spec().is_point()) return skipped("factorization needs a point base (s = 0)");
  if (c.m.spec().low_rank_exceptional()) return skipped("low-rank exceptional spec; see exceptional suite");
  Rng rng(check_seed(c.seed, "full_factorization"));
  const auto samples = random_ideal_samples(c, "full_factorization", 5);
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const Matrix T = random_bundle_matrix(rng, c.m.spec().odd_rank);
    const Matrix psi = bundle_induced_automorphism(c.m, T) * ad_exp(c.m, samples[t]);
    const FactorizationResult f = factor_automorphism(c.m, psi);
    if (f.bundle_part != T) return failure(Json{{"sample", t}, {"reason", "bundle part differs"}});
    if (recompose(c.m, f) != psi) return failure(Json{{"sample", t}, {"reason", "recomposition"}});
    if (!is_zero(samples[t])) {
      const auto conj = verify_conjugation(c.m, T, psi);
      if (conj.pass || conj.min_shift < 2)
        return failure(Json{{"sample", t}, {"reason", "defect not localized in degree >= 2"},
                            {"min_shift", conj.min_shift}});
    }
  }
  return pass("5 samples");
}

Outcome check_p_homomorphism(Context& c) {
  if (c.automorphisms.empty()) return skipped("no automorphisms generated");
  const FilteredQuotient q = filtered_quotient(c.m);
  std::vector<Matrix> images;
  for (const auto& psi : c.automorphisms) images.push_back(induced_graded_aut(q, psi));
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < c.automorphisms.size(); ++i)
    for (std::size_t j = 0; j < c.automorphisms.size(); ++j) {
      if (induced_graded_aut(q, c.automorphisms[i] * c.automorphisms[j]) != images[i] * images[j])
        return failure(pair_json(i, j));
      ++pairs;
    }
  return pass(std::to_string(pairs) + " pairs");
}

// ---------------------------------------------------------------- exceptional

const ModelSpec kSwapSpec{0, 0, 2};

Outcome check_swap(Context& c) {
  if (!(c.m.spec() == kSwapSpec)) return skipped("the swap is built on (0,0,2) only");
  const Matrix psi0 = construct_exceptional_swap(c.m, Matrix::identity(2));
  const auto check = check_automorphism(c.m, psi0);
  if (!check.pass) return failure(check_witness(check));
  if (detect_lambda(c.m, psi0) != -1) return failure(Json{{"reason", "lambda != -1"}});
  const Matrix square = psi0 * psi0;
  if (detect_lambda(c.m, square) != 1) return failure(Json{{"reason", "lambda(psi0^2) != 1"}});
  const Matrix T = reconstruct_bundle_map(c.m, square);
  if (!verify_conjugation(c.m, T, square).pass)
    return failure(Json{{"reason", "psi0^2 is not bundle-induced"}});
  c.automorphisms.push_back(psi0);
  c.automorphisms.push_back(square);
  return pass("lambda = -1; psi0^2 bundle-induced");
}

Outcome check_lambda_bundle(Context& c) {
  if (!c.m.spec().low_rank_exceptional()) return skipped("not a low-rank exceptional spec");
  Rng rng(check_seed(c.seed, "lambda_bundle"));
  for (int t = 0; t < 5; ++t) {
    const Matrix chi = bundle_induced_automorphism(c.m, random_bundle_matrix(rng, c.m.spec().odd_rank));
    if (detect_lambda(c.m, chi) != 1) return failure(Json{{"sample", t}});
    c.automorphisms.push_back(chi);
  }
  return pass("5 samples, lambda = +1");
}

Outcome check_euler_scan(Context& c) {
  if (!c.m.spec().low_rank_exceptional()) return skipped("not a low-rank exceptional spec");
  if (!c.eigenspaces.count(1)) return skipped("g^1 = 0, no eigenvalue +1 on g_1");
  const auto scalars = unit_spectrum_euler_scalars(c.m);
  Json found = Json::array();
  for (const auto& s : scalars) found.push_back(to_json(s));
  if (scalars != std::vector<Rational>{Rational(-1), Rational(1)})
    return failure(Json{{"scalars", found}});
  return pass("{eps, -eps}");
}

struct CheckDef {
  const char* suite;
  const char* id;
  const char* reference;
  Outcome (*run)(Context&);
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs{
      {"algebra", "algebra.dimension", "dim g^k = s(B-1)C(r,k) + rB C(r,k+1); r 2^r at a point",
       check_dimensions},
      {"algebra", "algebra.eigenspaces", "ad(eps) eigenspaces are spanned by the degree labels",
       check_eigenspaces_match_labels},
      {"algebra", "algebra.antisymmetry", "super antisymmetry of structure constants",
       check_antisymmetry},
      {"algebra", "algebra.jacobi", "super Jacobi identity on basis triples",
       check_jacobi_structure},
      {"algebra", "algebra.jacobi_fields", "super Jacobi identity on random homogeneous fields",
       check_jacobi_fields},
      {"algebra", "algebra.leibniz", "graded Leibniz rule X(ab) = X(a)b + (-1)^{|X||a|} a X(b)",
       check_leibniz},
      {"algebra", "algebra.bracket_operator",
       "coefficient bracket equals the operator supercommutator", check_bracket_operator},
      {"algebra", "algebra.grading_closure", "[g^p, g^q] lies in g^{p+q}", check_grading_closure},
      {"algebra", "algebra.degree_surjectivity",
       "[g^p, g^q] = g^{p+q}, except p = q = 0 at a point", check_degree_surjectivity},
      {"algebra", "algebra.anchor", "anchor map is a bracket homomorphism on degree 0",
       check_anchor},
      {"ideals", "ideals.canonical", "g' = sum of g^{2i}, i > 0, is an ad-nilpotent ideal of g_0",
       check_canonical_ideal},
      {"ideals", "ideals.max_nilpotent_even",
       "maximal ideal of g_0 acting ad-nilpotently on g equals g'", check_max_nilpotent_even},
      {"ideals", "ideals.max_nilpotent_degree0",
       "maximal ideal of g^0 acting nilpotently on g^0 is span(eps)", check_max_nilpotent_degree0},
      {"filtration", "filtration.levels", "g^(p) equals the sum of g^{p+2i}, i >= 0",
       check_filtration_levels},
      {"filtration", "filtration.brackets", "decreasing and [g^(p), g^(q)] in g^(p+q)",
       check_filtration_brackets},
      {"filtration", "filtration.graded_quotient",
       "graded quotient is isomorphic to g as a Z-graded superalgebra", check_graded_quotient},
      {"automorphisms", "automorphisms.identity", "identity accepted, 2*identity rejected",
       check_identity_and_scaling},
      {"automorphisms", "automorphisms.ad_exp", "exp(ad Y), Y in g', is an automorphism",
       check_ad_exp},
      {"automorphisms", "automorphisms.kernel_factorization",
       "kernel automorphisms factor as products of exp(ad Y_j), Y_j in g^{2j}",
       check_kernel_factorization},
      {"automorphisms", "automorphisms.bundle_reconstruction",
       "bundle-induced automorphisms reconstruct their bundle map and conjugate",
       check_bundle_reconstruction},
      {"automorphisms", "automorphisms.full_factorization",
       "automorphism = bundle-induced o product of exp(ad Y_j)", check_full_factorization},
      {"automorphisms", "automorphisms.p_homomorphism", "p(psi1 psi2) = p(psi1) p(psi2)",
       check_p_homomorphism},
      {"exceptional", "exceptional.swap",
       "grading-reversing automorphism psi0 with psi0(eps) = -eps on (0,0,2)", check_swap},
      {"exceptional", "exceptional.lambda_bundle", "bundle-induced automorphisms fix eps",
       check_lambda_bundle},
      {"exceptional", "exceptional.euler_scan",
       "c eps has spectrum {+1, -1} on g_1 exactly for c = +-1", check_euler_scan},
      {"exceptional", "exceptional.p_homomorphism", "p(psi1 psi2) = p(psi1) p(psi2)",
       check_p_homomorphism},
  };
  return defs;
}

}  // namespace

VerificationReport run_suite(const LieModel& m, const std::string& suite, std::uint64_t seed) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    fail(ErrorKind::Input, "unknown suite `" + suite + "`");
  VerificationReport report;
  report.suite = suite;
  report.spec = m.spec();
  report.seed = seed;
  Context ctx{m, seed, grading_eigenspaces(m), {}};
  std::string current_suite;
  for (const auto& def : registry()) {
    if (suite != "all" && suite != def.suite) continue;
    if (current_suite != def.suite) {
      ctx.automorphisms.clear();
      current_suite = def.suite;
    }
    CheckRecord record;
    record.id = def.id;
    record.reference = def.reference;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = def.run(ctx);
    } catch (const Error& e) {
      outcome = failure(Json{{"error", svf::to_string(e.kind())}, {"message", e.what()}});
    }
    record.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    record.status = outcome.status;
    record.detail = outcome.detail;
    record.witness = outcome.witness;
    record.skip_reason = outcome.skip_reason;
    report.checks.push_back(std::move(record));
  }
  return report;
}

Json to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"id", c.id},
                          {"status", to_string(c.status)},
                          {"reference", c.reference},
                          {"detail", c.detail},
                          {"witness", c.witness},
                          {"skip_reason", c.skip_reason},
                          {"wall_ms", c.wall_ms}});
  return Json{{"suite", report.suite},
              {"spec", to_json(report.spec)},
              {"seed", report.seed},
              {"any_fail", report.any_fail()},
              {"checks", checks}};
}

VerificationReport report_from_json(const Json& j) {
  try {
    VerificationReport report;
    report.suite = j.at("suite").get<std::string>();
    report.spec = model_spec_from_json(j.at("spec"));
    report.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks")) {
      CheckRecord r;
      r.id = c.at("id").get<std::string>();
      const std::string status = c.at("status").get<std::string>();
      if (status == "PASS") r.status = CheckStatus::Pass;
      else if (status == "FAIL") r.status = CheckStatus::Fail;
      else if (status == "SKIPPED") r.status = CheckStatus::Skipped;
      else fail(ErrorKind::Input, "field `status`: unknown value " + status);
      r.reference = c.at("reference").get<std::string>();
      r.detail = c.at("detail").get<std::string>();
      r.witness = c.at("witness");
      r.skip_reason = c.at("skip_reason").get<std::string>();
      r.wall_ms = c.at("wall_ms").get<double>();
      report.checks.push_back(std::move(r));
    }
    return report;
  } catch (const Json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed report: ") + e.what());
  }
}

}  // namespace svf
