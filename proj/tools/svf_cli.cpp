// Command-line front end over the C API.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "svf/svf.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{"cannot open " + path};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void check(svf_status status) {
  if (status != SVF_OK)
    throw CliError{std::string(svf_status_name(status)) + ": " + svf_last_error()};
}

// Owns a JSON string returned by the library.
Json take(char* text) {
  Json j = Json::parse(text);
  svf_string_free(text);
  return j;
}

class Model {
 public:
  explicit Model(const std::string& spec_path) {
    const std::string text = read_file(spec_path);
    check(svf_model_create(text.c_str(), &handle_));
  }
  ~Model() { svf_model_free(handle_); }
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  const svf_model* get() const { return handle_; }

 private:
  svf_model* handle_ = nullptr;
};

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw CliError{"cannot write " + path};
  out << j.dump(2) << "\n";
}

std::string spec_string(const Json& spec) {
  return "(" + std::to_string(spec["base_dim"].get<int>()) + "," +
         std::to_string(spec["truncation_order"].get<int>()) + "," +
         std::to_string(spec["odd_rank"].get<int>()) + ")";
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Left-aligned columns separated by two spaces.
void print_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    std::cout << line << "\n";
  };
  emit(header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& row : rows) emit(row);
}

int cmd_model(const std::string& spec, const std::string& json_path) {
  Model m(spec);
  char* out = nullptr;
  check(svf_model_export(m.get(), &out));
  const Json j = take(out);
  if (json_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json(json_path, j);
    std::cout << "model " << spec_string(j["spec"]) << " dimension " << j["dimension"] << "\n";
  }
  return kExitPass;
}

int cmd_grading(const std::string& spec, const std::string& json_path) {
  Model m(spec);
  char* out = nullptr;
  check(svf_grading(m.get(), &out));
  const Json j = take(out);
  write_json(json_path, j);
  std::cout << "model " << spec_string(j["spec"]) << " dimension " << j["dimension"] << "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : j["eigenspaces"])
    rows.push_back({cell(e["degree"]), cell(e["parity"]), cell(e["dim"])});
  print_table({"degree", "parity", "dim"}, rows);
  return kExitPass;
}

void ideal_rows(const char* name, const Json& a, std::vector<std::vector<std::string>>& rows) {
  rows.push_back({name, cell(a["ideal"]["dim"]), cell(a["prediction_dim"]),
                  a["routes_agree"].get<bool>() ? "yes" : "no", cell(a["certificate"])});
}

int cmd_ideal(const std::string& spec, const std::string& json_path) {
  Model m(spec);
  char* out = nullptr;
  check(svf_ideal(m.get(), &out));
  const Json j = take(out);
  write_json(json_path, j);
  const Json& canonical = j["canonical_ideal"];
  std::cout << "model " << spec_string(j["spec"]) << "\n";
  std::cout << "canonical ideal dim " << canonical["dim"] << "\n";
  for (const auto& f : canonical["fields"]) std::cout << "  " << f.get<std::string>() << "\n";
  if (j.contains("bruteforce_skipped")) {
    std::cout << "brute force SKIPPED: " << j["bruteforce_skipped"].get<std::string>() << "\n";
    return kExitPass;
  }
  std::vector<std::vector<std::string>> rows;
  ideal_rows("even part on g", j["even_part_on_all"], rows);
  ideal_rows("degree 0 on degree 0", j["degree0_on_degree0"], rows);
  print_table({"action", "dim", "predicted", "agree", "certificate"}, rows);
  return kExitPass;
}

int cmd_filtration(const std::string& spec, const std::string& json_path) {
  Model m(spec);
  char* out = nullptr;
  check(svf_filtration(m.get(), &out));
  const Json j = take(out);
  write_json(json_path, j);
  std::cout << "model " << spec_string(j["spec"]) << " hypothesis "
            << (j["hypothesis_holds"].get<bool>() ? "holds" : "not met") << "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& l : j["levels"])
    rows.push_back({cell(l["p"]), cell(l["dim"]), cell(l["graded_prediction_dim"]),
                    l["matches_grading"].get<bool>() ? "yes" : "no"});
  print_table({"p", "dim", "predicted", "matches"}, rows);
  if (j.contains("graded_quotient"))
    std::cout << "graded quotient dimension " << j["graded_quotient"]["dimension"]
              << ", isomorphism verified\n";
  return kExitPass;
}

int cmd_check_aut(const std::string& spec, const std::string& matrix, const std::string& json_path) {
  Model m(spec);
  const std::string text = read_file(matrix);
  char* out = nullptr;
  int pass = 0;
  check(svf_check_automorphism(m.get(), text.c_str(), &out, &pass));
  const Json j = take(out);
  write_json(json_path, j);
  if (pass) {
    std::cout << "PASS\n";
    return kExitPass;
  }
  std::cout << "FAIL " << j["reason"].get<std::string>();
  if (j.contains("pair"))
    std::cout << " at [" << j["pair"].get<std::string>() << "], defect "
              << j["defect_fields"].get<std::string>();
  std::cout << "\n";
  return kExitFail;
}

int cmd_factor_aut(const std::string& spec, const std::string& matrix,
                   const std::string& json_path) {
  Model m(spec);
  const std::string text = read_file(matrix);
  char* out = nullptr;
  check(svf_factor_automorphism(m.get(), text.c_str(), &out));
  const Json j = take(out);
  write_json(json_path, j);
  std::cout << "lambda " << j["lambda"] << (j["uses_swap"].get<bool>() ? ", uses swap" : "")
            << "\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < j["corrections"].size(); ++i)
    rows.push_back({cell(j["corrections"][i]["degree"]), cell(j["correction_fields"][i])});
  if (rows.empty()) std::cout << "no corrections\n";
  else print_table({"degree", "correction"}, rows);
  std::cout << "recomposes to the input exactly\n";
  return kExitPass;
}

int cmd_swap(const std::string& spec, const std::string& iso, const std::string& json_path) {
  Model m(spec);
  const std::string text = read_file(iso);
  char* out = nullptr;
  check(svf_exceptional_swap(m.get(), text.c_str(), &out));
  const Json j = take(out);
  write_json(json_path, j);
  std::cout << "swap constructed, automorphism, lambda " << j["lambda"] << "\n";
  if (json_path.empty()) std::cout << j["matrix"].dump() << "\n";
  return kExitPass;
}

int cmd_verify(const std::string& spec, const std::string& suite, std::uint64_t seed,
               const std::string& json_path) {
  Model m(spec);
  char* out = nullptr;
  int any_fail = 0;
  check(svf_verify(m.get(), suite.c_str(), seed, &out, &any_fail));
  const Json j = take(out);
  write_json(json_path, j);
  std::cout << "suite " << suite << " on " << spec_string(j["spec"]) << ", seed " << seed << "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : j["checks"]) {
    std::string note = c["status"] == "SKIPPED" ? c["skip_reason"].get<std::string>()
                                                : c["detail"].get<std::string>();
    if (c["status"] == "FAIL") note += " | witness " + c["witness"].dump();
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(1);
    ms << c["wall_ms"].get<double>();
    rows.push_back({c["id"].get<std::string>(), c["status"].get<std::string>(), ms.str(), note});
  }
  print_table({"check", "status", "ms", "note"}, rows);
  return any_fail ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie superalgebras of super vector fields"};
  app.require_subcommand(1);

  std::string spec, matrix, json_path, suite = "all";
  std::uint64_t seed = svf_default_seed();

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("spec", spec, "model spec JSON file")->required();
    sub->add_option("--json", json_path, "write the full JSON result to this path");
    return sub;
  };
  CLI::App* model = add("model", "build the model and export basis and structure constants");
  CLI::App* grading = add("grading", "eigenspaces of ad(eps)");
  CLI::App* ideal = add("ideal", "canonical ideal and brute-force nilpotent ideals");
  CLI::App* filtration = add("filtration", "canonical filtration and graded quotient");
  CLI::App* check_aut = add("check-aut", "check that a matrix is an automorphism");
  check_aut->add_option("matrix", matrix, "matrix JSON file")->required();
  CLI::App* factor_aut = add("factor-aut", "factor an automorphism");
  factor_aut->add_option("matrix", matrix, "matrix JSON file")->required();
  CLI::App* swap = add("swap", "exceptional swap on (0,0,2)");
  swap->add_option("iso", matrix, "2x2 identification JSON file")->required();
  CLI::App* verify = add("verify", "run a verification suite");
  verify->add_option("--suite", suite, "algebra|ideals|filtration|automorphisms|exceptional|all")
      ->check(CLI::IsMember({"algebra", "ideals", "filtration", "automorphisms", "exceptional", "all"}));
  verify->add_option("--rng-seed", seed, "seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*model) return cmd_model(spec, json_path);
    if (*grading) return cmd_grading(spec, json_path);
    if (*ideal) return cmd_ideal(spec, json_path);
    if (*filtration) return cmd_filtration(spec, json_path);
    if (*check_aut) return cmd_check_aut(spec, matrix, json_path);
    if (*factor_aut) return cmd_factor_aut(spec, matrix, json_path);
    if (*swap) return cmd_swap(spec, matrix, json_path);
    if (*verify) return cmd_verify(spec, suite, seed, json_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitError;
  } catch (const Json::exception& e) {
    std::cerr << "error: unexpected library output: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
