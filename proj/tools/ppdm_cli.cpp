// Command-line front end; talks to the library through the C API only.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppdm/ppdm.h"

namespace {

using nlohmann::json;

struct string_deleter {
  void operator()(char* s) const { ppdm_string_free(s); }
};
struct config_deleter {
  void operator()(ppdm_config* c) const { ppdm_config_free(c); }
};
struct matrix_deleter {
  void operator()(ppdm_matrix* m) const { ppdm_matrix_free(m); }
};
using api_string = std::unique_ptr<char, string_deleter>;
using config_handle = std::unique_ptr<ppdm_config, config_deleter>;
using matrix_handle = std::unique_ptr<ppdm_matrix, matrix_deleter>;

// invalid-input and parse-error are caller mistakes (exit 2); everything else
// reports a structural property of the data (exit 1).
int exit_code_for(ppdm_status status) {
  if (status == PPDM_OK) return 0;
  if (status == PPDM_PARSE_ERROR || status == PPDM_INVALID_INPUT) return 2;
  return 1;
}

int report_failure(ppdm_status status) {
  std::cerr << "error (" << ppdm_status_name(status) << "): " << ppdm_last_error()
            << "\n";
  return exit_code_for(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

// --params accepts inline JSON or @path to load it from a file.
std::string resolve_params(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

config_handle load_config(const std::string& path, ppdm_status& status) {
  ppdm_config* raw = nullptr;
  status = ppdm_config_from_json(read_file(path).c_str(), &raw);
  return config_handle(raw);
}

int run_generate(const std::string& class_id, const std::string& params_arg,
                 std::uint64_t seed, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string params = resolve_params(params_arg);

  ppdm_config* ref_raw = nullptr;
  ppdm_config* equiv_raw = nullptr;
  char* used_raw = nullptr;
  ppdm_status status = ppdm_generate_pair(class_id.c_str(),
                                          params.empty() ? nullptr : params.c_str(),
                                          seed, &ref_raw, &equiv_raw, &used_raw);
  if (status != PPDM_OK) return report_failure(status);
  config_handle ref(ref_raw), equiv(equiv_raw);
  api_string used(used_raw);

  ppdm_matrix* mat_raw = nullptr;
  status = ppdm_compute(ref.get(), &mat_raw);
  if (status != PPDM_OK) return report_failure(status);
  matrix_handle mat(mat_raw);

  char* text = nullptr;
  const auto emit = [&](const std::string& name, ppdm_status st) {
    if (st != PPDM_OK) return st;
    api_string owned(text);
    write_file(out_dir + "/" + name, owned.get());
    std::cout << "wrote " << out_dir << "/" << name << "\n";
    return PPDM_OK;
  };
  if ((status = emit("reference.json", ppdm_config_to_json(ref.get(), &text))) ||
      (status = emit("equivalent.json", ppdm_config_to_json(equiv.get(), &text))) ||
      (status = emit("ppdm.csv", ppdm_matrix_to_csv(mat.get(), &text))))
    return report_failure(status);
  write_file(out_dir + "/params.json", used.get());
  std::cout << "wrote " << out_dir << "/params.json\n";

  char* verify_raw = nullptr;
  status = ppdm_verify_pair(ref.get(), equiv.get(), &verify_raw);
  if (status != PPDM_OK) return report_failure(status);
  api_string verify(verify_raw);
  const json rep = json::parse(verify.get());
  std::cout << class_id << " seed " << seed << ": " << rep["verdict"].get<std::string>()
            << " (ppdm diff " << rep["ppdm_max_diff"].get<double>() << ", congruence "
            << rep["congruence"].get<double>() << ")\n";
  return 0;
}

int run_classify(const std::string& input, double tol, int restarts, std::uint64_t seed,
                 const std::string& report_path) {
  ppdm_status status = PPDM_OK;
  config_handle config = load_config(input, status);
  if (status != PPDM_OK) return report_failure(status);

  char* report_raw = nullptr;
  status = ppdm_classify(config.get(), tol, restarts, seed, &report_raw);
  if (status != PPDM_OK) return report_failure(status);
  api_string report(report_raw);

  if (report_path.empty())
    std::cout << report.get();
  else
    write_file(report_path, report.get());

  const json rep = json::parse(report.get());
  if (rep["ambiguous"].get<bool>()) {
    std::string ids;
    for (const auto& m : rep["matched_classes"])
      ids += (ids.empty() ? "" : ", ") + m["class_id"].get<std::string>();
    std::cerr << "ambiguous: " << ids << "\n";
    return 1;
  }
  std::cerr << "unique\n";
  return 0;
}

int run_reconstruct(const std::string& input, int dimension, double tol, int anchor,
                    const std::string& out_path, const std::string& report_path) {
  ppdm_matrix* mat_raw = nullptr;
  ppdm_status status = ppdm_matrix_from_csv(read_file(input).c_str(), &mat_raw);
  if (status != PPDM_OK) return report_failure(status);
  matrix_handle mat(mat_raw);

  ppdm_config* config_raw = nullptr;
  char* report_raw = nullptr;
  status = ppdm_reconstruct(mat.get(), dimension, tol, anchor, &config_raw, &report_raw);
  if (status != PPDM_OK) return report_failure(status);
  config_handle config(config_raw);
  api_string report(report_raw);

  char* text_raw = nullptr;
  status = ppdm_config_to_json(config.get(), &text_raw);
  if (status != PPDM_OK) return report_failure(status);
  api_string text(text_raw);

  if (out_path.empty())
    std::cout << text.get();
  else
    write_file(out_path, text.get());
  if (!report_path.empty()) write_file(report_path, report.get());

  const json rep = json::parse(report.get());
  std::cerr << "reconstructed (ppdm residual " << rep["ppdm_residual"].get<double>()
            << ")\n";
  return 0;
}

int run_verify(const std::string& path_a, const std::string& path_b,
               const std::string& report_path) {
  ppdm_status status = PPDM_OK;
  config_handle a = load_config(path_a, status);
  if (status != PPDM_OK) return report_failure(status);
  config_handle b = load_config(path_b, status);
  if (status != PPDM_OK) return report_failure(status);

  char* report_raw = nullptr;
  status = ppdm_verify_pair(a.get(), b.get(), &report_raw);
  if (status != PPDM_OK) return report_failure(status);
  api_string report(report_raw);

  if (report_path.empty())
    std::cout << report.get();
  else
    write_file(report_path, report.get());

  const json rep = json::parse(report.get());
  const std::string verdict = rep["verdict"].get<std::string>();
  std::cerr << verdict << "\n";
  return verdict == "EqualPPDM-Distinct" ? 1 : 0;
}

int run_figures(int family, std::uint64_t seed, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<int> families;
  if (family > 0)
    families.push_back(family);
  else
    for (int id = 3; id <= 13; ++id) families.push_back(id);

  for (int id : families) {
    char* raw = nullptr;
    ppdm_status status = ppdm_figure_family(id, seed, &raw);
    if (status != PPDM_OK) return report_failure(status);
    api_string text(raw);
    const json doc = json::parse(text.get());
    for (const auto& file : doc["files"]) {
      const std::string name = file["name"].get<std::string>();
      write_file(out_dir + "/" + name, file["content"].get<std::string>());
      std::cout << "wrote " << out_dir << "/" << name << "\n";
    }
  }
  return 0;
}

int run_classes() {
  char* raw = nullptr;
  ppdm_status status = ppdm_known_class_ids(&raw);
  if (status != PPDM_OK) return report_failure(status);
  api_string text(raw);
  std::cout << text.get();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-to-plane distance matrices: generate ambiguous "
               "room/trajectory pairs, classify, reconstruct, verify"};
  app.require_subcommand(1);

  std::string class_id, params_arg, out_dir = ".", input, report_path, out_path;
  std::string path_a, path_b;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int restarts = 0, dimension = 3, anchor = 0, family = 0;

  auto* generate = app.add_subcommand("generate", "draw an equivalent pair from a class");
  generate->add_option("--class", class_id, "ambiguity class id (see `classes`)")
      ->required();
  generate->add_option("--params", params_arg, "JSON overrides, inline or @file");
  generate->add_option("--seed", seed, "RNG seed");
  generate->add_option("--out", out_dir, "output directory");

  auto* classify = app.add_subcommand("classify", "test a configuration for ambiguity");
  classify->add_option("--input", input, "configuration JSON file")->required();
  classify->add_option("--tol", tol, "numerical tolerance (default 1e-8)");
  classify->add_option("--restarts", restarts, "solver restarts (default 128)");
  classify->add_option("--seed", seed, "solver RNG seed");
  classify->add_option("--report", report_path, "write the JSON report here");

  auto* reconstruct =
      app.add_subcommand("reconstruct", "rebuild a configuration from a distance matrix");
  reconstruct->add_option("--input", input, "distance-matrix CSV file")->required();
  reconstruct->add_option("--dimension", dimension, "2 or 3")->required();
  reconstruct->add_option("--tol", tol, "rank tolerance (default 1e-8)");
  reconstruct->add_option("--anchor", anchor, "waypoint row placed at the origin");
  reconstruct->add_option("--out", out_path, "write the configuration JSON here");
  reconstruct->add_option("--report", report_path, "write the JSON report here");

  auto* verify = app.add_subcommand("verify", "compare two configurations");
  verify->add_option("--a", path_a, "first configuration JSON")->required();
  verify->add_option("--b", path_b, "second configuration JSON")->required();
  verify->add_option("--report", report_path, "write the JSON report here");

  auto* figures = app.add_subcommand("figures", "emit the worked example families");
  figures->add_option("--family", family, "family id 3..13 (default: all)");
  figures->add_option("--seed", seed, "RNG seed (output does not depend on it)");
  figures->add_option("--out", out_dir, "output directory");

  app.add_subcommand("classes", "list the ambiguity class ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; bad usage exits 2
  }

  try {
    if (generate->parsed()) return run_generate(class_id, params_arg, seed, out_dir);
    if (classify->parsed()) return run_classify(input, tol, restarts, seed, report_path);
    if (reconstruct->parsed())
      return run_reconstruct(input, dimension, tol, anchor, out_path, report_path);
    if (verify->parsed()) return run_verify(path_a, path_b, report_path);
    if (figures->parsed()) return run_figures(family, seed, out_dir);
    return run_classes();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
