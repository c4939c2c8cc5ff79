#include "core/lie_model.hpp"

#include <algorithm>
#include <sstream>

#include "core/error.hpp"

namespace svf {

bool LieModel::DescriptorLess::operator()(const BasisDescriptor& a,
                                          const BasisDescriptor& b) const {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.target != b.target) return a.target < b.target;
  if (a.base != b.base) return base_less(a.base, b.base);
  return odd_less(a.odd, b.odd);
}

LieModel::LieModel(ModelSpec spec, std::vector<SuperVectorField> basis, std::vector<int> degrees,
                   std::vector<std::vector<StructureTerm>> structure)
    : spec_(spec),
      basis_(std::move(basis)),
      degrees_(std::move(degrees)),
      structure_(std::move(structure)) {
  if (degrees_.size() != basis_.size() || structure_.size() != basis_.size() * basis_.size())
    fail(ErrorKind::Internal, "inconsistent Lie model data");
}

int LieModel::min_degree() const {
  return degrees_.empty() ? 0 : *std::min_element(degrees_.begin(), degrees_.end());
}

int LieModel::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

std::string LieModel::label(std::size_t i) const {
  if (!canonical_) return "[e" + std::to_string(i) + "]";
  const BasisDescriptor& d = descriptors_.at(i);
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << ' ';
    first = false;
  };
  for (std::size_t v = 0; v < d.base.size(); ++v) {
    if (d.base[v] == 0) continue;
    sep();
    out << 'x' << v + 1;
    if (d.base[v] > 1) out << '^' << d.base[v];
  }
  for (int a : odd_indices(d.odd)) {
    sep();
    out << "xi" << a;
  }
  sep();
  out << (d.kind == FieldKind::Even ? "d/dx" : "d/dxi") << d.target;
  return out.str();
}

Vector LieModel::bracket(const Vector& x, const Vector& y) const {
  const std::size_t n = dimension();
  Vector out(n);
  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < n; ++j)
    if (sgn(y[j]) != 0) ys.push_back(j);
  Rational xy, t;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j : ys) {
      const auto& terms = structure(i, j);
      if (terms.empty()) continue;
      mpq_mul(xy.get_mpq_t(), x[i].get_mpq_t(), y[j].get_mpq_t());
      for (const auto& term : terms) {
        mpq_mul(t.get_mpq_t(), xy.get_mpq_t(), term.coeff.get_mpq_t());
        out[term.index] += t;
      }
    }
  }
  return out;
}

Matrix LieModel::ad(const Vector& x) const {
  const std::size_t n = dimension();
  Matrix out(n, n);
  Rational t;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& term : structure(i, j)) {
        mpq_mul(t.get_mpq_t(), x[i].get_mpq_t(), term.coeff.get_mpq_t());
        out(term.index, j) += t;
      }
  }
  return out;
}

Vector LieModel::coordinates(const SuperVectorField& X) const {
  if (!canonical_) fail(ErrorKind::Internal, "coordinates need a canonical model");
  if (!(X.spec() == spec_)) fail(ErrorKind::Input, "field spec does not match the model");
  Vector out(dimension());
  auto place = [&](FieldKind kind, int target, const SuperFunction& coeff) {
    for (const auto& [mono, c] : coeff.terms()) {
      BasisDescriptor key{kind, target, mono.base, mono.odd};
      auto it = index_.find(key);
      if (it == index_.end())
        fail(ErrorKind::Input, "field has a component outside the model (constant d/dx terms are "
                               "not derivations of the truncated algebra)");
      out[it->second] += c;
    }
  };
  for (int i = 1; i <= spec_.base_dim; ++i) place(FieldKind::Even, i, X.even_coeff(i));
  for (int a = 1; a <= spec_.odd_rank; ++a) place(FieldKind::Odd, a, X.odd_coeff(a));
  return out;
}

SuperVectorField LieModel::field(const Vector& x) const {
  SuperVectorField out(spec_);
  for (std::size_t i = 0; i < dimension(); ++i)
    if (sgn(x[i]) != 0) out += x[i] * basis_[i];
  return out;
}

Vector LieModel::euler_vector() const {
  if (canonical_) return coordinates(euler_field(spec_));
  fail(ErrorKind::Internal, "Euler vector requested on a non-canonical model");
}

std::vector<std::size_t> LieModel::indices_of_degree(int m) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dimension(); ++i)
    if (degrees_[i] == m) out.push_back(i);
  return out;
}

std::vector<std::size_t> LieModel::indices_of_parity(int p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dimension(); ++i)
    if (parity(i) == p) out.push_back(i);
  return out;
}

Subspace LieModel::parity_subspace(int p) const {
  return Subspace::coordinate(dimension(), indices_of_parity(p));
}

std::size_t model_dimension(const ModelSpec& spec) {
  spec.validate();
  const std::size_t bases = base_monomials(spec).size();
  const std::size_t odds = std::size_t{1} << spec.odd_rank;
  return static_cast<std::size_t>(spec.base_dim) * (bases - 1) * odds +
         static_cast<std::size_t>(spec.odd_rank) * bases * odds;
}

LieModel build_model(const ModelSpec& spec, std::size_t dim_cap) {
  spec.validate();
  const std::size_t dim = model_dimension(spec);
  if (dim > dim_cap)
    fail(ErrorKind::Resource, "model " + spec.describe() + " has dimension " +
                                  std::to_string(dim) + ", above the cap " +
                                  std::to_string(dim_cap));
  LieModel m;
  m.spec_ = spec;
  m.canonical_ = true;
  const auto bases = base_monomials(spec);
  const auto odds = odd_monomials(spec);
  auto push = [&](FieldKind kind, int target, const BaseExponents& base, OddMask odd, int degree) {
    BasisDescriptor d{kind, target, base, odd};
    SuperVectorField X(spec);
    SuperFunction coeff = SuperFunction::monomial(spec, base, odd);
    if (kind == FieldKind::Even) X.set_even_coeff(target, coeff);
    else X.set_odd_coeff(target, coeff);
    m.index_.emplace(d, m.basis_.size());
    m.descriptors_.push_back(std::move(d));
    m.basis_.push_back(std::move(X));
    m.degrees_.push_back(degree);
  };
  for (int deg = -1; deg <= spec.odd_rank; ++deg) {
    if (deg >= 0)
      for (const auto& base : bases) {
        if (total_degree(base) == 0) continue;
        for (OddMask odd : odds) {
          if (odd_degree(odd) != deg) continue;
          for (int i = 1; i <= spec.base_dim; ++i) push(FieldKind::Even, i, base, odd, deg);
        }
      }
    for (const auto& base : bases)
      for (OddMask odd : odds) {
        if (odd_degree(odd) != deg + 1) continue;
        for (int c = 1; c <= spec.odd_rank; ++c) push(FieldKind::Odd, c, base, odd, deg);
      }
  }
  if (m.basis_.size() != dim) fail(ErrorKind::Internal, "basis enumeration miscounted");

  m.structure_.assign(dim * dim, {});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Vector c = m.coordinates(bracket(m.basis_[i], m.basis_[j]));
      auto& out = m.structure_[i * dim + j];
      for (std::size_t k = 0; k < dim; ++k)
        if (sgn(c[k]) != 0) out.push_back(StructureTerm{k, c[k]});
    }
  return m;
}

Subspace bracket_span(const LieModel& m, const Subspace& a, const Subspace& b) {
  Subspace out(m.dimension());
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) out.add(m.bracket(u, v));
  return out;
}

Subspace ideal_closure(const LieModel& m, const Subspace& within, const Subspace& seed) {
  Subspace ideal = seed;
  std::vector<Vector> frontier = seed.basis();
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& w : within.basis())
      for (const auto& v : frontier) {
        Vector b = m.bracket(w, v);
        if (ideal.add(b)) next.push_back(std::move(b));
      }
    frontier = std::move(next);
  }
  return ideal;
}

bool is_subalgebra(const LieModel& m, const Subspace& s) {
  return s.contains(bracket_span(m, s, s));
}

bool is_ideal_of(const LieModel& m, const Subspace& ideal, const Subspace& within) {
  return within.contains(ideal) && ideal.contains(bracket_span(m, within, ideal));
}

std::map<int, Subspace> grading_eigenspaces(const LieModel& m) {
  const Matrix ad_eps = m.ad(m.euler_vector());
  std::map<int, Subspace> out;
  std::size_t total = 0;
  for (int k = -1; k <= m.spec().odd_rank; ++k) {
    Matrix shifted = ad_eps;
    for (std::size_t i = 0; i < m.dimension(); ++i) shifted(i, i) -= k;
    Subspace eig = Subspace::span(m.dimension(), nullspace(shifted));
    if (eig.is_zero()) continue;
    total += eig.dim();
    out.emplace(k, std::move(eig));
  }
  if (total != m.dimension())
    fail(ErrorKind::Internal, "ad(eps) eigenspaces do not span the model");
  return out;
}

Subspace canonical_ideal(const LieModel& m) {
  Subspace out(m.dimension());
  for (const auto& [k, space] : grading_eigenspaces(m))
    if (k > 0 && k % 2 == 0) out = sum(out, space);
  return out;
}

bool is_ad_nilpotent(const LieModel& m, const Vector& x) {
  Matrix power = m.ad(x);
  // ad_x is nilpotent iff ad_x^n = 0; square until the exponent reaches n.
  for (std::size_t exponent = 1;; exponent *= 2) {
    if (power.is_zero()) return true;
    if (exponent >= m.dimension()) return false;
    power = power * power;
  }
}

bool acts_nilpotently(const LieModel& m, const Subspace& s, const Subspace& module) {
  Subspace current = module;
  while (!current.is_zero()) {
    Subspace next = bracket_span(m, s, current);
    if (next.dim() >= current.dim()) return false;
    current = std::move(next);
  }
  return true;
}

namespace {

// Matrices of ad(b)|_V for each basis vector b of `algebra`, in the echelon
// basis of V.
std::vector<Matrix> restricted_action(const LieModel& m, const Subspace& algebra,
                                      const Subspace& module) {
  std::vector<Matrix> out;
  const std::size_t d = module.dim();
  for (const auto& b : algebra.basis()) {
    Matrix rho(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const Vector image = module.coordinates(m.bracket(b, module.basis()[j]));
      for (std::size_t i = 0; i < d; ++i) rho(i, j) = image[i];
    }
    out.push_back(std::move(rho));
  }
  return out;
}

Rational trace_of_product(const Matrix& a, const Matrix& b) {
  Rational t = 0, prod;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0 || sgn(b(k, i)) == 0) continue;
      mpq_mul(prod.get_mpq_t(), a(i, k).get_mpq_t(), b(k, i).get_mpq_t());
      t += prod;
    }
  return t;
}

Subspace combine(const Subspace& algebra, const std::vector<Vector>& coefficient_vectors,
                 std::size_t ambient) {
  std::vector<Vector> vectors;
  for (const auto& c : coefficient_vectors) {
    Vector v(ambient);
    for (std::size_t i = 0; i < c.size(); ++i) axpy(v, c[i], algebra.basis()[i]);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(ambient, vectors);
}

Vector flatten(const Matrix& a) {
  Vector v;
  v.reserve(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
  return v;
}

Matrix unflatten(const Vector& v, std::size_t d) {
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = v[i * d + j];
  return a;
}

constexpr std::size_t kAssociativeRadicalMaxModule = 24;

// Radical of the unital associative algebra generated by the action: in
// characteristic zero it is the radical of the trace form, and its preimage
// in the Lie algebra is the largest ideal acting nilpotently.
Subspace associative_radical_preimage(const std::vector<Matrix>& rho, const Subspace& algebra,
                                      std::size_t ambient, std::size_t d) {
  Subspace span(d * d);
  std::vector<Matrix> frontier;
  auto admit = [&](const Matrix& a) {
    if (span.add(flatten(a))) frontier.push_back(a);
  };
  admit(Matrix::identity(d));
  for (const auto& r : rho) admit(r);
  while (!frontier.empty()) {
    std::vector<Matrix> current = std::move(frontier);
    frontier.clear();
    for (const auto& a : current)
      for (const auto& r : rho) admit(r * a);
  }
  Matrix functionals(span.dim(), rho.size());
  for (std::size_t k = 0; k < span.dim(); ++k) {
    const Matrix a = unflatten(span.basis()[k], d);
    for (std::size_t i = 0; i < rho.size(); ++i) functionals(k, i) = trace_of_product(rho[i], a);
  }
  return combine(algebra, nullspace(functionals), ambient);
}

}  // namespace

NilpotentIdealAnalysis bruteforce_max_nilpotent_ideal(const LieModel& m, const Subspace& within,
                                                      const Subspace& acting_on) {
  if (!m.spec().is_point())
    fail(ErrorKind::Unsupported,
         "maximal ad-nilpotent ideal search needs a point base (s = 0): in a truncated jet "
         "model, fields with nonvanishing anchor such as x^2 d/dx become ad-nilpotent");
  const std::size_t n = m.dimension();
  if (!m.parity_subspace(0).contains(within))
    fail(ErrorKind::Precondition, "`within` must lie in the even part g_0");
  if (!is_subalgebra(m, within)) fail(ErrorKind::Precondition, "`within` is not a subalgebra");
  if (!acting_on.contains(bracket_span(m, within, acting_on)))
    fail(ErrorKind::Precondition, "`acting_on` is not stable under `within`");

  NilpotentIdealAnalysis result;

  // Route 1: no grading. Any ideal acting nilpotently kills every composition
  // factor, so it lies in the radical of the trace form tr_V(ad x ad y).
  const auto rho = restricted_action(m, within, acting_on);
  Matrix gram(rho.size(), rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t j = i; j < rho.size(); ++j)
      gram(i, j) = gram(j, i) = trace_of_product(rho[i], rho[j]);
  Subspace radical = combine(within, nullspace(gram), n);
  if (acts_nilpotently(m, radical, acting_on)) {
    result.ideal = radical;
    result.certificate = NilpotentCertificate::TraceRadical;
  } else {
    if (acting_on.dim() > kAssociativeRadicalMaxModule)
      fail(ErrorKind::Unsupported,
           "trace radical is not nilpotent and the module is too large for the associative "
           "radical fallback");
    result.ideal = associative_radical_preimage(rho, within, n, acting_on.dim());
    result.certificate = NilpotentCertificate::AssociativeRadical;
  }

  // Route 2: the grading-based candidate, checked for the ideal property,
  // nilpotency and maximality against single basis vectors.
  Subspace positive(n);
  for (const auto& [k, space] : grading_eigenspaces(m))
    if (k > 0) positive = sum(positive, space);
  Subspace prediction = intersection(within, positive);
  const Vector eps = m.euler_vector();
  const Subspace eps_line = Subspace::span(n, {eps});
  if (within.contains(eps) && acts_nilpotently(m, eps_line, acting_on))
    prediction = sum(prediction, eps_line);
  result.prediction = prediction;
  result.prediction_is_ideal = is_ideal_of(m, prediction, within);
  result.prediction_nilpotent =
      result.prediction_is_ideal && acts_nilpotently(m, prediction, acting_on);
  result.prediction_maximal = result.prediction_nilpotent;
  if (result.prediction_maximal)
    for (const auto& v : within.basis()) {
      if (prediction.contains(v)) continue;
      Subspace seed = prediction;
      seed.add(v);
      if (acts_nilpotently(m, ideal_closure(m, within, seed), acting_on)) {
        result.prediction_maximal = false;
        break;
      }
    }
  result.routes_agree = result.ideal == prediction;
  return result;
}

Filtration::Filtration(std::size_t ambient, std::vector<Subspace> levels, Subspace g0, Subspace g1)
    : ambient_(ambient),
      levels_(std::move(levels)),
      even_(std::move(g0)),
      odd_(std::move(g1)),
      zero_(ambient) {}

const Subspace& Filtration::at(int p) const {
  if (p < -1) return (p % 2 == 0) ? even_ : odd_;
  if (p > top()) return zero_;
  return levels_[p + 1];
}

Filtration filtration(const LieModel& m) {
  const Subspace g1 = m.parity_subspace(1), g0 = m.parity_subspace(0);
  const Subspace ideal = canonical_ideal(m);
  std::vector<Subspace> levels{g1, g0};
  // Both parity chains decrease; stop once two consecutive levels vanish.
  for (int p = 1;; ++p) {
    levels.push_back(bracket_span(m, ideal, levels[p - 1]));
    if (levels[p + 1].is_zero() && levels[p].is_zero()) break;
  }
  return Filtration(m.dimension(), std::move(levels), g0, g1);
}

Subspace graded_prediction(const LieModel& m, int p) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < m.dimension(); ++i)
    if (m.degree(i) >= p && (m.degree(i) - p) % 2 == 0) indices.push_back(i);
  return Subspace::coordinate(m.dimension(), indices);
}

Vector FilteredQuotient::coset_coordinates(int p, const Vector& x) const {
  const Subspace& level = levels.at(p);
  if (!level.contains(x))
    fail(ErrorKind::Consistency, "vector does not lie in filtration level " + std::to_string(p));
  if (p > levels.top()) return {};
  Vector pivot_part;
  for (std::size_t piv : level.pivots()) pivot_part.push_back(x[piv]);
  return extractors[p + 1] * pivot_part;
}

FilteredQuotient filtered_quotient(const LieModel& m) {
  Filtration levels = filtration(m);
  std::vector<Vector> reps;
  std::vector<int> rep_level;
  std::vector<Matrix> extractors;
  std::vector<std::vector<std::size_t>> level_indices;
  for (int p = -1; p <= levels.top(); ++p) {
    const Subspace &level = levels.at(p), &below = levels.at(p + 2);
    if (!level.contains(below))
      fail(ErrorKind::Internal, "filtration is not decreasing at level " + std::to_string(p));
    Subspace grow = below;
    std::vector<Vector> level_reps;
    for (const auto& v : level.basis())
      if (grow.add(v)) level_reps.push_back(v);
    // Basis change from the echelon basis of the level to (reps, below).
    const std::size_t d = level.dim();
    std::vector<Vector> adapted = level_reps;
    adapted.insert(adapted.end(), below.basis().begin(), below.basis().end());
    Matrix change(d, d);  // column k = echelon coordinates of adapted[k]
    for (std::size_t k = 0; k < d; ++k) change.set_column(k, level.coordinates(adapted[k]));
    const auto inv = inverse(change);
    if (!inv) fail(ErrorKind::Internal, "adapted basis is singular");
    Matrix extractor(level_reps.size(), d);
    for (std::size_t i = 0; i < level_reps.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) extractor(i, j) = (*inv)(i, j);
    extractors.push_back(std::move(extractor));
    std::vector<std::size_t> idx;
    for (auto& v : level_reps) {
      idx.push_back(reps.size());
      reps.push_back(std::move(v));
      rep_level.push_back(p);
    }
    level_indices.push_back(std::move(idx));
  }

  FilteredQuotient q{LieModel(m.spec(), {}, {}, {}), reps, levels, extractors, level_indices};
  const std::size_t g = reps.size();
  std::vector<std::vector<StructureTerm>> structure(g * g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const int target = rep_level[i] + rep_level[j];
      const Vector b = m.bracket(reps[i], reps[j]);
      if (!levels.at(target).contains(b))
        fail(ErrorKind::Consistency, "bracket leaves filtration level " + std::to_string(target));
      if (target < -1 || target > levels.top()) continue;
      const Vector coords = q.coset_coordinates(target, b);
      const auto& targets = level_indices[target + 1];
      for (std::size_t k = 0; k < coords.size(); ++k)
        if (sgn(coords[k]) != 0) structure[i * g + j].push_back(StructureTerm{targets[k], coords[k]});
    }
  std::vector<SuperVectorField> fields;
  for (const auto& r : reps) fields.push_back(m.field(r));
  q.model = LieModel(m.spec(), std::move(fields), rep_level, std::move(structure));
  return q;
}

GradedQuotient graded_quotient(const LieModel& m) {
  if (!m.spec().filtration_hypothesis())
    fail(ErrorKind::Unsupported, "graded quotient isomorphism needs rk V > 2, or dim M > 0 and "
                                 "rk V > 1; spec " + m.spec().describe() + " is excluded");
  FilteredQuotient q = filtered_quotient(m);
  const std::size_t n = m.dimension(), g = q.model.dimension();
  if (g != n) fail(ErrorKind::Consistency, "graded quotient has dimension " + std::to_string(g) +
                                               ", model has " + std::to_string(n));
  Matrix to_model(n, g);
  for (std::size_t i = 0; i < g; ++i) {
    const int p = q.model.degree(i);
    for (std::size_t k = 0; k < n; ++k)
      if (m.degree(k) == p) to_model(k, i) = q.representatives[i][k];
  }
  auto from_model = inverse(to_model);
  if (!from_model) fail(ErrorKind::Consistency, "lowest-degree projection is not invertible");
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      Vector lhs(n);
      for (const auto& t : q.model.structure(i, j)) axpy(lhs, t.coeff, to_model.column(t.index));
      const Vector rhs = m.bracket(to_model.column(i), to_model.column(j));
      if (lhs != rhs)
        fail(ErrorKind::Consistency, "graded quotient bracket differs from the model bracket on "
                                     "basis pair (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ")");
    }
  return GradedQuotient{std::move(q), std::move(to_model), std::move(*from_model)};
}

}  // namespace svf
