#include "core/json_io.hpp"

#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace svf {

namespace {

const Json& require_field(const Json& j, const char* name, const std::string& context) {
  if (!j.is_object()) fail(ErrorKind::Input, context + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) fail(ErrorKind::Input, context + ": missing field `" + name + "`");
  return *it;
}

int int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(ErrorKind::Input, "field `" + field + "`: expected an integer");
  const auto value = j.get<long long>();
  if (value < -1000000 || value > 1000000)
    fail(ErrorKind::Input, "field `" + field + "`: integer out of range");
  return static_cast<int>(value);
}

const Json& require_array(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(ErrorKind::Input, "field `" + field + "`: expected an array");
  return j;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str());
}

Rational rational_from_json(const Json& j, const std::string& field) {
  if (!j.is_string())
    fail(ErrorKind::Input, "field `" + field + "`: rationals are strings such as \"3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(ErrorKind::Input, "field `" + field + "`: " + e.what());
  }
}

Json to_json(const Rational& q) { return to_string(q); }

ModelSpec model_spec_from_json(const Json& j) {
  const std::string ctx = "model spec";
  ModelSpec spec;
  spec.base_dim = int_from_json(require_field(j, "base_dim", ctx), "base_dim");
  spec.truncation_order = int_from_json(require_field(j, "truncation_order", ctx), "truncation_order");
  spec.odd_rank = int_from_json(require_field(j, "odd_rank", ctx), "odd_rank");
  spec.validate();
  return spec;
}

Json to_json(const ModelSpec& spec) {
  return Json{{"base_dim", spec.base_dim},
              {"truncation_order", spec.truncation_order},
              {"odd_rank", spec.odd_rank}};
}

SuperFunction superfunction_from_json(const ModelSpec& spec, const Json& j,
                                      const std::string& field) {
  require_array(j, field);
  std::vector<RawTerm> raw;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string ctx = field + "[" + std::to_string(t) + "]";
    const Json& term = j[t];
    RawTerm r;
    const Json& base = require_array(require_field(term, "base", ctx), ctx + ".base");
    for (std::size_t k = 0; k < base.size(); ++k)
      r.base.push_back(int_from_json(base[k], ctx + ".base"));
    const Json& odd = require_array(require_field(term, "odd", ctx), ctx + ".odd");
    for (std::size_t k = 0; k < odd.size(); ++k) r.odd.push_back(int_from_json(odd[k], ctx + ".odd"));
    r.coeff = rational_from_json(require_field(term, "coeff", ctx), ctx + ".coeff");
    raw.push_back(std::move(r));
  }
  try {
    return normalize(spec, raw);
  } catch (const Error& e) {
    fail(ErrorKind::Input, "field `" + field + "`: " + e.what());
  }
}

Json to_json(const SuperFunction& f) {
  Json out = Json::array();
  for (const auto& [mono, c] : f.terms())
    out.push_back(Json{{"base", mono.base}, {"odd", odd_indices(mono.odd)}, {"coeff", to_json(c)}});
  return out;
}

SuperVectorField vector_field_from_json(const Json& j) {
  const std::string ctx = "vector field";
  const ModelSpec spec = model_spec_from_json(require_field(j, "spec", ctx));
  const Json& even = require_array(require_field(j, "even_coeffs", ctx), "even_coeffs");
  const Json& odd = require_array(require_field(j, "odd_coeffs", ctx), "odd_coeffs");
  std::vector<SuperFunction> even_coeffs, odd_coeffs;
  for (std::size_t i = 0; i < even.size(); ++i)
    even_coeffs.push_back(
        superfunction_from_json(spec, even[i], "even_coeffs[" + std::to_string(i) + "]"));
  for (std::size_t a = 0; a < odd.size(); ++a)
    odd_coeffs.push_back(
        superfunction_from_json(spec, odd[a], "odd_coeffs[" + std::to_string(a) + "]"));
  return SuperVectorField::from_coefficients(spec, std::move(even_coeffs), std::move(odd_coeffs));
}

Json to_json(const SuperVectorField& X) {
  Json even = Json::array(), odd = Json::array();
  for (const auto& f : X.even_coeffs()) even.push_back(to_json(f));
  for (const auto& f : X.odd_coeffs()) odd.push_back(to_json(f));
  return Json{{"spec", to_json(X.spec())}, {"even_coeffs", even}, {"odd_coeffs", odd}};
}

Matrix matrix_from_json(const Json& j) {
  const std::string ctx = "matrix";
  const int dim = int_from_json(require_field(j, "dim", ctx), "dim");
  if (dim < 0) fail(ErrorKind::Input, "field `dim`: must be non-negative");
  const Json& rows = require_array(require_field(j, "entries", ctx), "entries");
  const std::size_t n = static_cast<std::size_t>(dim);
  if (rows.size() != n)
    fail(ErrorKind::Input, "field `entries`: expected " + std::to_string(n) + " rows");
  Matrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "entries[" + std::to_string(i) + "]";
    const Json& row = require_array(rows[i], field);
    if (row.size() != n)
      fail(ErrorKind::Input, "field `" + field + "`: expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      M(i, k) = rational_from_json(row[k], field + "[" + std::to_string(k) + "]");
  }
  return M;
}

Json to_json(const Matrix& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(to_json(M(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", M.rows()}, {"entries", rows}};
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

std::string format_vector(const LieModel& m, const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    const bool negative = sgn(v[i]) < 0;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const Rational magnitude = abs(v[i]);
    if (magnitude != 1) out += to_string(magnitude) + " ";
    out += m.label(i);
  }
  return out.empty() ? "0" : out;
}

Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(v));
  return Json{{"dim", s.dim()}, {"basis", basis}};
}

Json model_to_json(const LieModel& m) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    Json entry{{"index", i}, {"degree", m.degree(i)}, {"parity", m.parity(i)}};
    if (m.is_canonical()) {
      const BasisDescriptor& d = m.descriptor(i);
      entry["kind"] = d.kind == FieldKind::Even ? "d/dx" : "d/dxi";
      entry["target"] = d.target;
      entry["base"] = d.base;
      entry["odd"] = odd_indices(d.odd);
    }
    entry["label"] = m.label(i);
    basis.push_back(std::move(entry));
  }
  Json structure = Json::array();
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (std::size_t j = 0; j < m.dimension(); ++j)
      for (const auto& t : m.structure(i, j))
        structure.push_back(Json::array({i, j, t.index, to_json(t.coeff)}));
  return Json{{"spec", to_json(m.spec())},
              {"dimension", m.dimension()},
              {"basis", basis},
              {"structure_constants", structure}};
}

Json to_json(const FactorizationResult& result) {
  Json corrections = Json::array();
  for (const auto& c : result.corrections)
    corrections.push_back(Json{{"degree", c.degree}, {"field", to_json(c.field)}});
  return Json{{"bundle_part", to_json(result.bundle_part)},
              {"corrections", corrections},
              {"lambda", result.lambda},
              {"uses_swap", result.uses_swap}};
}

}  // namespace svf
