#include "core/automorphism.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "core/error.hpp"

namespace svf {

namespace {

void require_shape(const LieModel& m, const Matrix& M) {
  if (M.rows() != m.dimension() || M.cols() != m.dimension())
    fail(ErrorKind::Input, "matrix is " + std::to_string(M.rows()) + "x" +
                               std::to_string(M.cols()) + ", model dimension is " +
                               std::to_string(m.dimension()));
}

void require_automorphism(const LieModel& m, const Matrix& M, const char* operation) {
  const AutomorphismCheck check = check_automorphism(m, M);
  if (!check.pass)
    fail(ErrorKind::Precondition, std::string(operation) + ": input is not an automorphism (" +
                                      check.reason + " violation at " + std::to_string(check.i) +
                                      ", " + std::to_string(check.j) + ")");
}

// Index of the constant field d/dxi^a.
std::size_t odd_partial_index(const LieModel& m, int a) {
  const Vector v = m.coordinates(SuperVectorField::odd_partial(m.spec(), a));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) return i;
  fail(ErrorKind::Internal, "d/dxi is missing from the basis");
}

}  // namespace

AutomorphismCheck check_automorphism(const LieModel& m, const Matrix& M) {
  AutomorphismCheck out;
  const std::size_t n = m.dimension();
  if (M.rows() != n || M.cols() != n) {
    out.reason = "shape";
    return out;
  }
  if (rank(M) < n) {
    out.reason = "singular";
    return out;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(M(k, j)) != 0 && m.parity(k) != m.parity(j)) {
        out.reason = "parity";
        out.i = j;
        out.j = k;
        return out;
      }
  std::vector<Vector> images(n);
  for (std::size_t j = 0; j < n; ++j) images[j] = M.column(j);
  Vector lhs(n);
  Rational t;
  for (std::size_t i = 0; i < n; ++i) {
    // Columns of ad(M e_i) M are [M e_i, M e_j].
    const Matrix rhs = m.ad(images[i]) * M;
    for (std::size_t j = 0; j < n; ++j) {
      for (auto& x : lhs) x = 0;
      for (const auto& term : m.structure(i, j)) {
        const Vector& image = images[term.index];
        for (std::size_t k = 0; k < n; ++k) {
          if (sgn(image[k]) == 0) continue;
          mpq_mul(t.get_mpq_t(), term.coeff.get_mpq_t(), image[k].get_mpq_t());
          lhs[k] += t;
        }
      }
      bool equal = true;
      for (std::size_t k = 0; k < n && equal; ++k) equal = lhs[k] == rhs(k, j);
      if (!equal) {
        out.reason = "bracket";
        out.i = i;
        out.j = j;
        out.defect = lhs - rhs.column(j);
        return out;
      }
    }
  }
  out.pass = true;
  return out;
}

Matrix induced_graded_aut(const FilteredQuotient& q, const Matrix& psi) {
  const std::size_t g = q.model.dimension();
  Matrix out(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    const int p = q.model.degree(i);
    // coset_coordinates rejects images outside g^(p).
    const Vector coords = q.coset_coordinates(p, psi * q.representatives[i]);
    const auto& targets = q.level_indices[p + 1];
    for (std::size_t k = 0; k < coords.size(); ++k) out(targets[k], i) = coords[k];
  }
  return out;
}

Matrix induced_graded_aut(const LieModel& m, const Matrix& psi) {
  require_shape(m, psi);
  require_automorphism(m, psi, "induced_graded_aut");
  return induced_graded_aut(filtered_quotient(m), psi);
}

bool in_kernel_of_p(const Filtration& f, const Matrix& psi) {
  for (int p = -1; p <= f.top(); ++p) {
    const Subspace &level = f.at(p), &target = f.at(p + 2);
    for (const auto& b : level.basis())
      if (!target.contains(psi * b - b)) return false;
  }
  return true;
}

Matrix ad_exp(const LieModel& m, const Vector& Y) {
  if (Y.size() != m.dimension()) fail(ErrorKind::Input, "vector length differs from dimension");
  if (!is_ad_nilpotent(m, Y)) fail(ErrorKind::Precondition, "ad_exp needs an ad-nilpotent vector");
  const Matrix ad = m.ad(Y);
  Matrix result = Matrix::identity(m.dimension());
  Matrix term = result;
  for (int k = 1;; ++k) {
    term = ad * term;
    term *= Rational(1) / k;
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

std::vector<Correction> factor_kernel_automorphism(const LieModel& m, const Matrix& psi) {
  require_shape(m, psi);
  require_automorphism(m, psi, "factor_kernel_automorphism");
  if (!in_kernel_of_p(filtration(m), psi))
    fail(ErrorKind::Precondition, "automorphism is not in the kernel of p");
  const std::size_t n = m.dimension();
  const Vector eps = m.euler_vector();
  const int span = m.max_degree() - m.min_degree();
  std::vector<Correction> out;
  Matrix current = psi;
  for (;;) {
    Matrix defect = current;
    for (std::size_t i = 0; i < n; ++i) defect(i, i) -= 1;
    if (defect.is_zero()) break;
    std::optional<int> shift;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(defect(k, j)) != 0) {
          const int s = m.degree(k) - m.degree(j);
          if (!shift || s < *shift) shift = s;
        }
    if (*shift <= 0 || *shift % 2 != 0 || *shift > span)
      fail(ErrorKind::Internal, "kernel automorphism has leading defect of degree shift " +
                                    std::to_string(*shift));
    const int s = *shift;
    const Vector moved = current * eps;
    Vector Y(n);
    for (std::size_t k : m.indices_of_degree(s)) Y[k] = moved[k];
    // The leading part is a derivation psi_s with psi_s(eps) = Y, which forces
    // psi_s = -(1/s) ad_Y.
    const Matrix expected = (Rational(-1) / s) * m.ad(Y);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m.degree(k) == m.degree(j) + s && defect(k, j) != expected(k, j))
          fail(ErrorKind::Internal, "leading defect is not -(1/" + std::to_string(s) +
                                        ") ad of its value on eps");
    const Vector Z = (Rational(1) / s) * Y;
    current = current * ad_exp(m, Z);
    out.push_back(Correction{s, Rational(-1) * Z});
    if (out.size() > static_cast<std::size_t>(span))
      fail(ErrorKind::Internal, "factorization did not terminate");
  }
  return out;
}

Matrix compose_corrections(const LieModel& m, const std::vector<Correction>& corrections) {
  Matrix result = Matrix::identity(m.dimension());
  for (const auto& c : corrections) result = ad_exp(m, c.field) * result;
  return result;
}

SuperFunction pull_back(const Matrix& T, const SuperFunction& f) {
  const ModelSpec& spec = f.spec();
  const int r = spec.odd_rank;
  if (T.rows() != static_cast<std::size_t>(r) || T.cols() != static_cast<std::size_t>(r))
    fail(ErrorKind::Input, "bundle matrix must be " + std::to_string(r) + "x" + std::to_string(r));
  std::vector<SuperFunction> images;
  for (int a = 1; a <= r; ++a) {
    SuperFunction g(spec);
    for (int b = 1; b <= r; ++b) g += T(a - 1, b - 1) * SuperFunction::odd_generator(spec, b);
    images.push_back(std::move(g));
  }
  SuperFunction out(spec);
  for (const auto& [mono, c] : f.terms()) {
    SuperFunction term = SuperFunction::monomial(spec, mono.base, 0, c);
    for (int a : odd_indices(mono.odd)) term = term * images[a - 1];
    out += term;
  }
  return out;
}

Matrix bundle_induced_automorphism(const LieModel& m, const Matrix& T) {
  const ModelSpec& spec = m.spec();
  const int r = spec.odd_rank;
  if (T.rows() != static_cast<std::size_t>(r) || T.cols() != static_cast<std::size_t>(r))
    fail(ErrorKind::Input, "bundle matrix must be " + std::to_string(r) + "x" + std::to_string(r));
  const auto T_inv = inverse(T);
  if (!T_inv) fail(ErrorKind::Precondition, "bundle matrix is singular");
  std::vector<SuperFunction> generator_images;
  for (int a = 1; a <= r; ++a)
    generator_images.push_back(pull_back(T, SuperFunction::odd_generator(spec, a)));
  const std::size_t n = m.dimension();
  Matrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const SuperVectorField& X = m.basis()[j];
    // A derivation is determined by its values on the generators x^i, xi^a.
    SuperVectorField image(spec);
    for (int i = 1; i <= spec.base_dim; ++i)
      image.set_even_coeff(i, pull_back(*T_inv, X.even_coeff(i)));
    for (int a = 1; a <= r; ++a)
      image.set_odd_coeff(a, pull_back(*T_inv, apply(X, generator_images[a - 1])));
    out.set_column(j, m.coordinates(image));
  }
  return out;
}

Matrix reconstruct_bundle_map(const LieModel& m, const Matrix& psi) {
  require_shape(m, psi);
  require_automorphism(m, psi, "reconstruct_bundle_map");
  const std::size_t n = m.dimension();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(psi(k, j)) != 0 && m.degree(k) != m.degree(j))
        fail(ErrorKind::Precondition, "automorphism does not preserve the Z-grading");
  const ModelSpec& spec = m.spec();
  const int r = spec.odd_rank;
  std::vector<std::size_t> partials;
  for (int a = 1; a <= r; ++a) partials.push_back(odd_partial_index(m, a));
  Matrix T(r, r);
  for (int a = 0; a < r; ++a)
    for (int c = 0; c < r; ++c) T(a, c) = psi(partials[a], partials[c]);
  if (!spec.is_point()) {
    // With a trivial base map, psi(f d/dxi^c) = f psi(d/dxi^c) on all of g^{-1}.
    for (std::size_t j : m.indices_of_degree(-1)) {
      const BasisDescriptor& d = m.descriptor(j);
      const SuperFunction f = SuperFunction::monomial(spec, d.base, 0);
      const SuperVectorField expected = multiply(f, m.field(psi.column(partials[d.target - 1])));
      if (m.coordinates(expected) != psi.column(j))
        fail(ErrorKind::Unsupported, "automorphism moves base functions; reconstructing the base "
                                     "map is outside the supported range");
    }
  }
  if (!inverse(T)) fail(ErrorKind::Consistency, "g^{-1} block is singular");
  return T;
}

ConjugationCheck verify_conjugation(const LieModel& m, const Matrix& T, const Matrix& psi) {
  require_shape(m, psi);
  const Matrix induced = bundle_induced_automorphism(m, T);
  ConjugationCheck out;
  for (std::size_t j = 0; j < m.dimension(); ++j) {
    Vector defect = psi.column(j) - induced.column(j);
    if (is_zero(defect)) continue;
    out.index = j;
    bool first = true;
    for (std::size_t k = 0; k < defect.size(); ++k)
      if (sgn(defect[k]) != 0) {
        const int s = m.degree(k) - m.degree(j);
        if (first || s < out.min_shift) out.min_shift = s;
        first = false;
      }
    out.defect = std::move(defect);
    return out;
  }
  out.pass = true;
  return out;
}

int detect_lambda(const LieModel& m, const Matrix& psi) {
  if (!m.spec().low_rank_exceptional())
    fail(ErrorKind::Precondition, "lambda detection applies to low-rank exceptional specs only; "
                                  "elsewhere psi(eps) = eps is forced");
  require_shape(m, psi);
  require_automorphism(m, psi, "detect_lambda");
  const Vector eps = m.euler_vector();
  const Vector image = psi * eps;
  std::size_t pivot = 0;
  while (sgn(eps[pivot]) == 0) ++pivot;
  const Rational lambda = image[pivot] / eps[pivot];
  if (image != lambda * eps) fail(ErrorKind::Consistency, "psi(eps) is not a multiple of eps");
  if (lambda != 1 && lambda != -1)
    fail(ErrorKind::Consistency, "psi(eps) = " + to_string(lambda) + " eps, expected +-1");
  if (lambda == -1)
    for (std::size_t j = 0; j < m.dimension(); ++j) {
      if (m.degree(j) != 1 && m.degree(j) != -1) continue;
      for (std::size_t k = 0; k < m.dimension(); ++k)
        if (sgn(psi(k, j)) != 0 && m.degree(k) != -m.degree(j))
          fail(ErrorKind::Consistency, "psi(eps) = -eps but g^{+1} and g^{-1} are not exchanged");
    }
  return lambda == 1 ? 1 : -1;
}

Matrix construct_exceptional_swap(const LieModel& m, const Matrix& iso) {
  const ModelSpec& spec = m.spec();
  if (!(spec == ModelSpec{0, 0, 2}))
    fail(ErrorKind::Precondition, "the exceptional swap exists on (0,0,2) only");
  if (iso.rows() != 2 || iso.cols() != 2) fail(ErrorKind::Input, "iso must be 2x2");
  if (!inverse(iso)) fail(ErrorKind::Precondition, "iso is singular");
  const std::size_t n = m.dimension();

  // Unknown images: g^0 inside g_0 and g^1 inside g_1. Every image is kept
  // as an affine function of the unknowns, stored as an n x (u + 1) matrix
  // whose last column is the constant part.
  std::vector<std::vector<std::size_t>> unknown_of(n);
  std::size_t u = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (m.degree(j) >= 0)
      for (std::size_t k : m.indices_of_parity(m.parity(j))) {
        (void)k;
        unknown_of[j].push_back(u++);
      }
  std::vector<Matrix> image(n, Matrix(n, u + 1));
  std::vector<Vector> known(2);
  for (int b = 1; b <= 2; ++b) {
    SuperVectorField target(spec);
    for (int a = 1; a <= 2; ++a)
      target.set_odd_coeff(a, iso(a - 1, b - 1) * SuperFunction::monomial(spec, {}, 0b11));
    known[b - 1] = m.coordinates(target);
  }
  std::vector<std::size_t> partials{odd_partial_index(m, 1), odd_partial_index(m, 2)};
  for (int b = 0; b < 2; ++b)
    for (std::size_t k = 0; k < n; ++k) image[partials[b]](k, u) = known[b][k];
  for (std::size_t j = 0; j < n; ++j) {
    if (unknown_of[j].empty()) continue;
    const auto rows = m.indices_of_parity(m.parity(j));
    for (std::size_t t = 0; t < rows.size(); ++t) image[j](rows[t], unknown_of[j][t]) = 1;
  }
  auto image_of = [&](const Vector& v) {
    Matrix out(n, u + 1);
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(v[k]) != 0) out += v[k] * image[k];
    return out;
  };

  struct Constraint {
    std::string name;
    Matrix residual;  // rows: residual = 0
  };
  std::vector<Constraint> constraints;
  const Vector eps = m.euler_vector();
  const Matrix ad_eps = m.ad(eps);
  for (int b = 0; b < 2; ++b) {
    const Matrix ad_known = m.ad(known[b]);
    for (std::size_t j = 0; j < n; ++j)
      constraints.push_back({"psi0([d/dxi" + std::to_string(b + 1) + ", " + m.label(j) +
                                 "]) = [psi0(d/dxi" + std::to_string(b + 1) + "), psi0(" +
                                 m.label(j) + ")]",
                             image_of(m.bracket(unit_vector(n, partials[b]), unit_vector(n, j))) -
                                 ad_known * image[j]});
  }
  {
    Matrix residual = image_of(eps);
    for (std::size_t k = 0; k < n; ++k) residual(k, u) += eps[k];
    constraints.push_back({"psi0(eps) = -eps", std::move(residual)});
  }
  for (std::size_t j = 0; j < n; ++j)
    constraints.push_back({"psi0([eps, " + m.label(j) + "]) = [-eps, psi0(" + m.label(j) + ")]",
                           image_of(ad_eps.column(j)) + ad_eps * image[j]});

  auto assemble = [&](std::size_t count) {
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t k = 0; k < n; ++k) {
        Vector row = constraints[c].residual.row(k);
        rhs.push_back(-row.back());
        row.pop_back();
        rows.push_back(std::move(row));
      }
    return std::make_pair(Matrix::from_rows(rows, u), rhs);
  };
  auto [A, rhs] = assemble(constraints.size());
  const auto solution = solve(A, rhs);
  if (!solution) {
    for (std::size_t c = 1; c <= constraints.size(); ++c) {
      auto [Ac, rc] = assemble(c);
      if (!solve(Ac, rc))
        fail(ErrorKind::Consistency,
             "no bracket-compatible extension: constraint " + constraints[c - 1].name +
                 " cannot be satisfied");
    }
    fail(ErrorKind::Internal, "inconsistent system without a failing prefix");
  }
  if (!nullspace(A).empty())
    fail(ErrorKind::Consistency, "bracket constraints leave the extension undetermined");

  Vector x = *solution;
  x.push_back(1);
  Matrix psi0(n, n);
  for (std::size_t j = 0; j < n; ++j) psi0.set_column(j, image[j] * x);
  const AutomorphismCheck check = check_automorphism(m, psi0);
  if (!check.pass)
    fail(ErrorKind::Consistency, "solved extension is not an automorphism (" + check.reason +
                                     " violation at " + std::to_string(check.i) + ", " +
                                     std::to_string(check.j) + ")");
  return psi0;
}

std::vector<Rational> unit_spectrum_euler_scalars(const LieModel& m) {
  const auto odd = m.indices_of_parity(1);
  const Matrix ad_eps = m.ad(m.euler_vector());
  const std::size_t d = odd.size();
  Matrix block(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) block(i, j) = ad_eps(odd[i], odd[j]);
  // Integer eigenvalue scan; it must exhaust g_1 for the spectrum to be read off.
  std::set<int> spectrum;
  std::size_t total = 0;
  const int bound = m.spec().odd_rank + 1;
  for (int k = -bound; k <= bound; ++k) {
    Matrix shifted = block;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= k;
    const std::size_t nullity = nullspace(shifted).size();
    if (nullity > 0) spectrum.insert(k);
    total += nullity;
  }
  if (total != d) fail(ErrorKind::Internal, "ad(eps) on g_1 is not diagonal over the integers");
  std::vector<Rational> out;
  if (spectrum.empty() || *spectrum.begin() == 0) return out;
  const int k0 = *spectrum.begin();
  const Rational inverse_k0 = Rational(1) / k0;
  for (const Rational& c : std::vector<Rational>{inverse_k0, -inverse_k0}) {
    std::set<Rational> scaled;
    for (int k : spectrum) scaled.insert(c * k);
    if (scaled == std::set<Rational>{Rational(-1), Rational(1)}) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FactorizationResult factor_automorphism(const LieModel& m, const Matrix& psi) {
  require_shape(m, psi);
  require_automorphism(m, psi, "factor_automorphism");
  const ModelSpec& spec = m.spec();
  if (!spec.is_point())
    fail(ErrorKind::Unsupported, "automorphism factorization needs a point base (s = 0)");
  FactorizationResult result;
  if (spec.low_rank_exceptional()) {
    result.lambda = detect_lambda(m, psi);
    Matrix graded = psi;
    if (result.lambda == -1) {
      const Matrix swap = construct_exceptional_swap(m, Matrix::identity(2));
      graded = psi * *inverse(swap);
      result.uses_swap = true;
    }
    result.bundle_part = reconstruct_bundle_map(m, graded);
    if (bundle_induced_automorphism(m, result.bundle_part) != graded)
      fail(ErrorKind::Consistency, "graded automorphism is not induced by its bundle map");
  } else {
    const GradedQuotient gq = graded_quotient(m);
    const Matrix graded =
        gq.to_model * (induced_graded_aut(gq.quotient, psi) * gq.from_model);
    result.bundle_part = reconstruct_bundle_map(m, graded);
    const Matrix chi = bundle_induced_automorphism(m, result.bundle_part);
    if (chi != graded)
      fail(ErrorKind::Consistency, "graded automorphism is not induced by its bundle map");
    result.corrections = factor_kernel_automorphism(m, *inverse(chi) * psi);
  }
  if (recompose(m, result) != psi)
    fail(ErrorKind::Internal, "factorization does not recompose to the input");
  return result;
}

Matrix recompose(const LieModel& m, const FactorizationResult& result) {
  Matrix out = bundle_induced_automorphism(m, result.bundle_part);
  if (result.uses_swap) out = out * construct_exceptional_swap(m, Matrix::identity(2));
  return out * compose_corrections(m, result.corrections);
}

}  // namespace svf
