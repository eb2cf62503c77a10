// Command-line front end.  Talks to the shared library through the C
// interface only; all documents are JSON on stdin/stdout/files.
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure,
// 3 I/O or parse failure.

#include "canonpair.h"

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;

int exit_code(cp_status s) {
  switch (s) {
    case CP_OK: return kExitOk;
    case CP_EVALIDATION: return kExitValidation;
    case CP_ENUMERIC: return kExitNumeric;
    case CP_EPARSE: return kExitIo;
  }
  return kExitNumeric;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text << "\n";
}

// Flag > environment variable > library default.
void env_default(double& value, bool flag_given, const char* env_name) {
  if (flag_given) return;
  const char* env = std::getenv(env_name);
  if (!env) return;
  try {
    value = std::stod(env);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("bad value in ") + env_name);
  }
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { cp_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

struct OwnedPair {
  cp_pair* p = nullptr;
  ~OwnedPair() { cp_pair_free(p); }
};

int fail(cp_status s) {
  std::cerr << "error: " << cp_last_error() << "\n";
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical forms for pairs of a nondegenerate Hermitian form "
               "and a self-adjoint antilinear operator"};
  app.require_subcommand(1);

  cp_tolerances tol;
  cp_default_tolerances(&tol);
  auto* rank_opt = app.add_option("--rank-tol", tol.rank_tol,
                                  "relative singular-value cutoff for rank decisions");
  auto* verify_opt = app.add_option("--verify-tol", tol.verify_tol,
                                    "residual acceptance threshold");
  auto* cluster_opt = app.add_option("--cluster-tol", tol.cluster_tol,
                                     "eigenvalue clustering radius");

  std::string input = "-", output = "-", form = "standard", form_file, target = "alt",
              spec;
  int size = 4;
  std::uint64_t seed = 0;

  CLI::App* validate = app.add_subcommand("validate", "check a pair document");
  validate->add_option("--input,-i", input, "pair document, '-' for stdin");

  CLI::App* canon = app.add_subcommand("canonicalize", "compute a canonical form");
  canon->add_option("--input,-i", input, "pair document, '-' for stdin");
  canon->add_option("--output,-o", output, "where to write the form document");
  canon->add_option("--form,-f", form, "standard | alt | operator | glr")
      ->check(CLI::IsMember({"standard", "alt", "operator", "glr"}));

  CLI::App* convert = app.add_subcommand("convert", "rewrite a form document");
  convert->add_option("--input,-i", input, "form document, '-' for stdin");
  convert->add_option("--output,-o", output, "where to write the result");
  convert->add_option("--to,-t", target, "standard | alt")
      ->check(CLI::IsMember({"standard", "alt"}));

  CLI::App* generate = app.add_subcommand("generate", "emit a deterministic random pair");
  generate->add_option("--size,-n", size, "dimension (ignored when --spec fixes it)");
  generate->add_option("--seed,-s", seed, "random seed");
  generate->add_option("--spec", spec,
                       "block list family:re:im:k:eps[;...] with family in "
                       "positive-real|zero|negative|nonreal");
  generate->add_option("--output,-o", output, "where to write the pair document");

  CLI::App* verify = app.add_subcommand("verify", "check a form against a pair");
  verify->add_option("--input,-i", input, "pair document, '-' for stdin");
  verify->add_option("--form-file", form_file, "form document to verify")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    env_default(tol.rank_tol, rank_opt->count() > 0, "CANONPAIR_RANK_TOL");
    env_default(tol.verify_tol, verify_opt->count() > 0, "CANONPAIR_VERIFY_TOL");
    env_default(tol.cluster_tol, cluster_opt->count() > 0, "CANONPAIR_CLUSTER_TOL");

    auto parse_pair = [&](OwnedPair& p) -> cp_status {
      std::string text = read_input(input);
      return cp_pair_parse(text.c_str(), &p.p);
    };

    if (validate->parsed()) {
      OwnedPair p;
      cp_status s = parse_pair(p);
      if (s != CP_OK) return fail(s);
      OwnedString report;
      s = cp_pair_validate(p.p, &tol, &report.s);
      write_output(output, report.str());
      if (s != CP_OK) return fail(s);
      return kExitOk;
    }

    if (canon->parsed()) {
      OwnedPair p;
      cp_status s = parse_pair(p);
      if (s != CP_OK) return fail(s);
      OwnedString doc;
      s = cp_pair_canonicalize(p.p, form.c_str(), &tol, &doc.s);
      if (s != CP_OK) return fail(s);
      write_output(output, doc.str());
      return kExitOk;
    }

    if (convert->parsed()) {
      std::string text = read_input(input);
      OwnedString doc;
      cp_status s = cp_convert(text.c_str(), target.c_str(), &tol, &doc.s);
      if (s != CP_OK) return fail(s);
      write_output(output, doc.str());
      return kExitOk;
    }

    if (generate->parsed()) {
      OwnedString doc;
      cp_status s = cp_generate(size, seed, spec.empty() ? nullptr : spec.c_str(),
                                &tol, &doc.s);
      if (s != CP_OK) return fail(s);
      write_output(output, doc.str());
      return kExitOk;
    }

    if (verify->parsed()) {
      OwnedPair p;
      cp_status s = parse_pair(p);
      if (s != CP_OK) return fail(s);
      std::string ftext = read_input(form_file);
      OwnedString report;
      s = cp_pair_verify(p.p, ftext.c_str(), &tol, &report.s);
      write_output(output, report.str());
      if (s != CP_OK) return fail(s);
      return kExitOk;
    }

    if (selftest->parsed()) {
      OwnedString report;
      int all_pass = 0;
      cp_status s = cp_selftest(&tol, &report.s, &all_pass);
      if (s != CP_OK) return fail(s);
      auto doc = nlohmann::json::parse(report.str());
      for (const auto& r : doc) {
        std::cout << "criterion " << r.at("id").get<int>() << ": "
                  << (r.at("pass").get<bool>() ? "PASS" : "FAIL") << " - "
                  << r.at("name").get<std::string>();
        std::string detail = r.value("detail", "");
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
      }
      return all_pass ? kExitOk : kExitNumeric;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
