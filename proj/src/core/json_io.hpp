#pragma once

#include <string>

#include "json.hpp"

#include "core/automorphism.hpp"

namespace svf {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into input errors.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

Rational rational_from_json(const Json& j, const std::string& field);
Json to_json(const Rational& q);

ModelSpec model_spec_from_json(const Json& j);
Json to_json(const ModelSpec& spec);

/// [{"base": [...], "odd": [...], "coeff": "p/q"}, ...]; odd lists may be
/// unsorted and are normalized.
SuperFunction superfunction_from_json(const ModelSpec& spec, const Json& j,
                                      const std::string& field = "terms");
Json to_json(const SuperFunction& f);

/// {"spec": ..., "even_coeffs": [...], "odd_coeffs": [...]}
SuperVectorField vector_field_from_json(const Json& j);
Json to_json(const SuperVectorField& X);

/// {"dim": n, "entries": [[...], ...]} with string entries.
Matrix matrix_from_json(const Json& j);
Json to_json(const Matrix& M);

Json to_json(const Vector& v);
/// "2 xi1 d/dxi1 - xi2 d/dxi2" style rendering against the model's labels.
std::string format_vector(const LieModel& m, const Vector& v);
Json subspace_to_json(const Subspace& s);

/// Basis descriptors, labels and sparse structure constants [i, j, k, "p/q"].
Json model_to_json(const LieModel& m);

Json to_json(const FactorizationResult& result);

}  // namespace svf
