#include "svf/svf.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/verification.hpp"

struct svf_model {
  svf::LieModel model;
};

namespace {

thread_local std::string last_error;

svf_status status_of(svf::ErrorKind kind) {
  switch (kind) {
    case svf::ErrorKind::Input: return SVF_ERR_INPUT;
    case svf::ErrorKind::Precondition: return SVF_ERR_PRECONDITION;
    case svf::ErrorKind::Unsupported: return SVF_ERR_UNSUPPORTED;
    case svf::ErrorKind::Resource: return SVF_ERR_RESOURCE;
    case svf::ErrorKind::Consistency: return SVF_ERR_CONSISTENCY;
    case svf::ErrorKind::Internal: return SVF_ERR_INTERNAL;
  }
  return SVF_ERR_INTERNAL;
}

template <typename F>
svf_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return SVF_OK;
  } catch (const svf::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SVF_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SVF_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) svf::fail(svf::ErrorKind::Input, std::string(name) + " is null");
}

char* copy_out(const svf::Json& j) {
  const std::string text = j.dump(2);
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::size_t dim_cap_from_env() {
  const char* value = std::getenv("SVF_DIM_CAP");
  if (value == nullptr || *value == '\0') return svf::kDefaultDimCap;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(value, &end, 10);
  if (*end != '\0' || cap == 0 || value[0] == '-')
    svf::fail(svf::ErrorKind::Input, std::string("SVF_DIM_CAP must be a positive integer, got `") +
                                         value + "`");
  return static_cast<std::size_t>(cap);
}

svf::Json subspace_summary(const svf::LieModel& m, const svf::Subspace& s) {
  svf::Json basis = svf::Json::array();
  for (const auto& v : s.basis()) basis.push_back(svf::format_vector(m, v));
  svf::Json out = svf::subspace_to_json(s);
  out["fields"] = basis;
  return out;
}

svf::Json analysis_json(const svf::LieModel& m, const svf::NilpotentIdealAnalysis& a) {
  return svf::Json{
      {"ideal", subspace_summary(m, a.ideal)},
      {"certificate", a.certificate == svf::NilpotentCertificate::TraceRadical
                          ? "trace_radical"
                          : "associative_radical"},
      {"prediction_dim", a.prediction.dim()},
      {"prediction_is_ideal", a.prediction_is_ideal},
      {"prediction_nilpotent", a.prediction_nilpotent},
      {"prediction_maximal", a.prediction_maximal},
      {"routes_agree", a.routes_agree}};
}

}  // namespace

extern "C" {

const char* svf_last_error(void) { return last_error.c_str(); }

const char* svf_status_name(svf_status status) {
  switch (status) {
    case SVF_OK: return "ok";
    case SVF_ERR_INPUT: return "input error";
    case SVF_ERR_PRECONDITION: return "precondition error";
    case SVF_ERR_UNSUPPORTED: return "unsupported model";
    case SVF_ERR_RESOURCE: return "resource error";
    case SVF_ERR_CONSISTENCY: return "consistency error";
    case SVF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void svf_string_free(char* s) { std::free(s); }

svf_status svf_model_create_with_cap(const char* spec_json, size_t dim_cap, svf_model** out) {
  return guarded([&] {
    require(spec_json, "spec_json");
    require(out, "out");
    *out = nullptr;
    const svf::ModelSpec spec = svf::model_spec_from_json(svf::parse_json_text(spec_json));
    *out = new svf_model{svf::build_model(spec, dim_cap)};
  });
}

svf_status svf_model_create(const char* spec_json, svf_model** out) {
  std::size_t cap = svf::kDefaultDimCap;
  const svf_status s = guarded([&] { cap = dim_cap_from_env(); });
  if (s != SVF_OK) return s;
  return svf_model_create_with_cap(spec_json, cap, out);
}

void svf_model_free(svf_model* model) { delete model; }

size_t svf_model_dimension(const svf_model* model) {
  return model == nullptr ? 0 : model->model.dimension();
}

svf_status svf_model_export(const svf_model* model, char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(json_out, "json_out");
    *json_out = copy_out(svf::model_to_json(model->model));
  });
}

svf_status svf_grading(const svf_model* model, char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(json_out, "json_out");
    const svf::LieModel& m = model->model;
    svf::Json degrees = svf::Json::array();
    for (const auto& [k, space] : svf::grading_eigenspaces(m)) {
      svf::Json labels = svf::Json::array();
      for (std::size_t i : m.indices_of_degree(k)) labels.push_back(m.label(i));
      degrees.push_back(svf::Json{{"degree", k},
                                  {"parity", ((k % 2) + 2) % 2},
                                  {"dim", space.dim()},
                                  {"basis_labels", labels}});
    }
    *json_out = copy_out(svf::Json{{"spec", svf::to_json(m.spec())},
                                   {"dimension", m.dimension()},
                                   {"eigenspaces", degrees}});
  });
}

svf_status svf_ideal(const svf_model* model, char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(json_out, "json_out");
    const svf::LieModel& m = model->model;
    svf::Json out{{"spec", svf::to_json(m.spec())},
                  {"canonical_ideal", subspace_summary(m, svf::canonical_ideal(m))}};
    if (m.spec().is_point()) {
      const auto eig = svf::grading_eigenspaces(m);
      const svf::Subspace g00 = eig.at(0);
      out["even_part_on_all"] = analysis_json(
          m, svf::bruteforce_max_nilpotent_ideal(m, m.parity_subspace(0), m.whole()));
      out["degree0_on_degree0"] =
          analysis_json(m, svf::bruteforce_max_nilpotent_ideal(m, g00, g00));
    } else {
      out["bruteforce_skipped"] =
          "truncated jet model: brute-force nilpotent-ideal search runs on point models only";
    }
    *json_out = copy_out(out);
  });
}

svf_status svf_filtration(const svf_model* model, char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(json_out, "json_out");
    const svf::LieModel& m = model->model;
    const svf::Filtration f = svf::filtration(m);
    svf::Json levels = svf::Json::array();
    for (int p = -1; p <= f.top(); ++p)
      levels.push_back(svf::Json{{"p", p},
                                 {"dim", f.at(p).dim()},
                                 {"graded_prediction_dim", svf::graded_prediction(m, p).dim()},
                                 {"matches_grading", f.at(p) == svf::graded_prediction(m, p)}});
    svf::Json out{{"spec", svf::to_json(m.spec())},
                  {"hypothesis_holds", m.spec().filtration_hypothesis()},
                  {"levels", levels}};
    if (m.spec().filtration_hypothesis() && m.spec().is_point()) {
      const svf::GradedQuotient gq = svf::graded_quotient(m);
      out["graded_quotient"] = svf::Json{{"dimension", gq.quotient.model.dimension()},
                                         {"isomorphism_verified", true}};
    }
    *json_out = copy_out(out);
  });
}

svf_status svf_check_automorphism(const svf_model* model, const char* matrix_json,
                                  char** json_out, int* pass) {
  return guarded([&] {
    require(model, "model");
    require(matrix_json, "matrix_json");
    require(json_out, "json_out");
    require(pass, "pass");
    const svf::LieModel& m = model->model;
    const svf::Matrix M = svf::matrix_from_json(svf::parse_json_text(matrix_json));
    if (M.rows() != m.dimension())
      svf::fail(svf::ErrorKind::Input, "field `dim`: matrix dimension " +
                                           std::to_string(M.rows()) + " differs from model dimension " +
                                           std::to_string(m.dimension()));
    const svf::AutomorphismCheck c = svf::check_automorphism(m, M);
    svf::Json out{{"pass", c.pass}};
    if (!c.pass) {
      out["reason"] = c.reason;
      out["i"] = c.i;
      out["j"] = c.j;
      if (c.reason == "bracket") {
        out["pair"] = m.label(c.i) + " , " + m.label(c.j);
        out["defect"] = svf::to_json(c.defect);
        out["defect_fields"] = svf::format_vector(m, c.defect);
      }
    }
    *pass = c.pass ? 1 : 0;
    *json_out = copy_out(out);
  });
}

svf_status svf_factor_automorphism(const svf_model* model, const char* matrix_json,
                                   char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(matrix_json, "matrix_json");
    require(json_out, "json_out");
    const svf::LieModel& m = model->model;
    const svf::Matrix M = svf::matrix_from_json(svf::parse_json_text(matrix_json));
    const svf::FactorizationResult r = svf::factor_automorphism(m, M);
    svf::Json out = svf::to_json(r);
    svf::Json fields = svf::Json::array();
    for (const auto& c : r.corrections) fields.push_back(svf::format_vector(m, c.field));
    out["correction_fields"] = fields;
    out["recomposes"] = true;
    *json_out = copy_out(out);
  });
}

svf_status svf_exceptional_swap(const svf_model* model, const char* iso_json, char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(iso_json, "iso_json");
    require(json_out, "json_out");
    const svf::LieModel& m = model->model;
    const svf::Matrix iso = svf::matrix_from_json(svf::parse_json_text(iso_json));
    const svf::Matrix psi0 = svf::construct_exceptional_swap(m, iso);
    *json_out = copy_out(svf::Json{{"matrix", svf::to_json(psi0)},
                                   {"lambda", svf::detect_lambda(m, psi0)},
                                   {"automorphism", true}});
  });
}

svf_status svf_field_bracket(const char* x_json, const char* y_json, char** json_out) {
  return guarded([&] {
    require(x_json, "x_json");
    require(y_json, "y_json");
    require(json_out, "json_out");
    const svf::SuperVectorField X = svf::vector_field_from_json(svf::parse_json_text(x_json));
    const svf::SuperVectorField Y = svf::vector_field_from_json(svf::parse_json_text(y_json));
    if (!(X.spec() == Y.spec())) svf::fail(svf::ErrorKind::Input, "fields have different specs");
    *json_out = copy_out(svf::to_json(svf::bracket(X, Y)));
  });
}

svf_status svf_verify(const svf_model* model, const char* suite, uint64_t seed, char** json_out,
                      int* any_fail) {
  return guarded([&] {
    require(model, "model");
    require(suite, "suite");
    require(json_out, "json_out");
    require(any_fail, "any_fail");
    const svf::VerificationReport report = svf::run_suite(model->model, suite, seed);
    *any_fail = report.any_fail() ? 1 : 0;
    *json_out = copy_out(svf::to_json(report));
  });
}

uint64_t svf_default_seed(void) { return svf::kDefaultSeed; }

}  // extern "C"
