#include "canonpair.h"

#include "core/altforms.hpp"
#include "core/canonicalize.hpp"
#include "core/acceptance.hpp"
#include "core/glr.hpp"
#include "core/harness.hpp"
#include "core/json_io.hpp"
#include "core/pair.hpp"

#include <nlohmann/json.hpp>

#include <cstring>
#include <new>
#include <string>

using json = nlohmann::json;
using namespace canonpair;

struct cp_pair {
  Mat h;
  Mat c;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ToleranceConfig to_config(const cp_tolerances* t) {
  ToleranceConfig cfg;
  if (t) {
    cfg.rank_tol = t->rank_tol;
    cfg.verify_tol = t->verify_tol;
    cfg.cluster_tol = t->cluster_tol;
  }
  return cfg;
}

// Runs the body, translating exceptions to status codes.
template <typename Fn>
cp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return CP_EPARSE;
  } catch (const InvalidInput& e) {
    g_last_error = e.what();
    return CP_EVALIDATION;
  } catch (const NumericalFailure& e) {
    g_last_error = e.what();
    return CP_ENUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CP_ENUMERIC;
  }
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string glr_to_json(const GlrForm& g) {
  json doc;
  doc["flavor"] = "glr";
  json blocks = json::array();
  int n = 0;
  for (const GlrBlock& b : g.blocks) {
    blocks.push_back({{"eta", {b.eta.real(), b.eta.imag()}},
                      {"k", b.k},
                      {"epsilon", b.epsilon},
                      {"real_eta", b.real_eta}});
    n += b.dim();
  }
  doc["n"] = n;
  doc["blocks"] = std::move(blocks);
  doc["transition"] = matrix_json(g.transition);
  doc["residuals"] = {{"h_residual", g.residuals.h_residual},
                      {"c_residual", g.residuals.c_residual}};
  return doc.dump(2);
}

}  // namespace

extern "C" {

void cp_default_tolerances(cp_tolerances* out) {
  if (!out) return;
  ToleranceConfig cfg;
  out->rank_tol = cfg.rank_tol;
  out->verify_tol = cfg.verify_tol;
  out->cluster_tol = cfg.cluster_tol;
}

cp_status cp_pair_parse(const char* pair_json, cp_pair** out) {
  if (!pair_json || !out) {
    g_last_error = "cp_pair_parse: null argument";
    return CP_EPARSE;
  }
  *out = nullptr;
  return guarded([&] {
    auto [h, c] = parse_pair_json(pair_json);
    *out = new cp_pair{std::move(h), std::move(c)};
    return CP_OK;
  });
}

void cp_pair_free(cp_pair* p) { delete p; }

cp_status cp_pair_validate(const cp_pair* p, const cp_tolerances* tol,
                           char** report_json) {
  if (!p || !report_json) {
    g_last_error = "cp_pair_validate: null argument";
    return CP_EPARSE;
  }
  return guarded([&] {
    PairDiagnostics d = diagnose_pair(p->h, p->c, to_config(tol));
    json doc = {{"valid", d.valid()},
                {"hermitian_residual", d.hermitian_residual},
                {"min_eig_ratio", d.min_eig_ratio},
                {"selfadjoint_residual", d.selfadjoint_residual}};
    if (!d.valid()) doc["violation"] = d.violation();
    *report_json = dup_string(doc.dump(2));
    if (!d.valid()) {
      g_last_error = "pair is not valid: " + d.violation();
      return CP_EVALIDATION;
    }
    return CP_OK;
  });
}

cp_status cp_pair_canonicalize(const cp_pair* p, const char* form,
                               const cp_tolerances* tol, char** form_json) {
  if (!p || !form_json) {
    g_last_error = "cp_pair_canonicalize: null argument";
    return CP_EPARSE;
  }
  std::string which = form ? form : "standard";
  if (which != "standard" && which != "alt" && which != "operator" &&
      which != "glr") {
    g_last_error = "unknown form '" + which + "'";
    return CP_EPARSE;
  }
  ToleranceConfig cfg = to_config(tol);
  return guarded([&] {
    if (which == "operator") {
      *form_json = dup_string(form_to_json(canonicalize_operator(p->c, cfg)));
      return CP_OK;
    }
    SelfAdjointPair sp = validate_pair(p->h, p->c, cfg);
    if (which == "standard") {
      *form_json = dup_string(form_to_json(canonicalize_pair(sp, cfg)));
    } else if (which == "alt") {
      *form_json = dup_string(form_to_json(alt_canonicalize(sp, cfg)));
    } else if (which == "glr") {
      *form_json = dup_string(glr_to_json(
          glr_canonicalize(sp.h, square_operator(sp.c), cfg)));
    }
    return CP_OK;
  });
}

cp_status cp_pair_verify(const cp_pair* p, const char* form_json,
                         const cp_tolerances* tol, char** report_json) {
  if (!p || !form_json || !report_json) {
    g_last_error = "cp_pair_verify: null argument";
    return CP_EPARSE;
  }
  ToleranceConfig cfg = to_config(tol);
  return guarded([&] {
    CanonicalForm f = parse_form_json(form_json);
    SelfAdjointPair sp = validate_pair(p->h, p->c, cfg);
    ResidualReport rep = verify_canonical(sp, f, cfg);
    bool ok = rep.pass(cfg.verify_tol);
    json doc = {{"h_residual", rep.h_residual},
                {"c_residual", rep.c_residual},
                {"pass", ok}};
    *report_json = dup_string(doc.dump(2));
    if (!ok) {
      g_last_error = "residuals exceed the verification tolerance";
      return CP_ENUMERIC;
    }
    return CP_OK;
  });
}

cp_status cp_convert(const char* form_json, const char* target,
                     const cp_tolerances* tol, char** form_json_out) {
  if (!form_json || !target || !form_json_out) {
    g_last_error = "cp_convert: null argument";
    return CP_EPARSE;
  }
  std::string want = target;
  ToleranceConfig cfg = to_config(tol);
  return guarded([&] {
    Flavor flavor;
    if (want == "standard") {
      flavor = Flavor::Standard;
    } else if (want == "alt") {
      flavor = Flavor::Alternative;
    } else {
      g_last_error = "unknown conversion target '" + want + "'";
      return CP_EPARSE;
    }
    CanonicalForm f = parse_form_json(form_json);
    *form_json_out = dup_string(form_to_json(convert_form(f, flavor, cfg)));
    return CP_OK;
  });
}

cp_status cp_generate(int size, uint64_t seed, const char* spec,
                      const cp_tolerances* tol, char** pair_json_out) {
  if (!pair_json_out) {
    g_last_error = "cp_generate: null argument";
    return CP_EPARSE;
  }
  ToleranceConfig cfg = to_config(tol);
  return guarded([&] {
    SelfAdjointPair p =
        random_canonical_pair(size, spec ? spec : "", seed, cfg);
    *pair_json_out = dup_string(pair_to_json(p.h, p.c));
    return CP_OK;
  });
}

cp_status cp_selftest(const cp_tolerances* tol, char** report_json,
                      int* all_pass) {
  if (!report_json || !all_pass) {
    g_last_error = "cp_selftest: null argument";
    return CP_EPARSE;
  }
  return guarded([&] {
    std::vector<CriterionResult> results = run_acceptance(to_config(tol));
    json doc = json::array();
    bool ok = true;
    for (const CriterionResult& r : results) {
      ok = ok && r.pass;
      doc.push_back({{"id", r.id},
                     {"name", r.name},
                     {"pass", r.pass},
                     {"detail", r.detail}});
    }
    *all_pass = ok ? 1 : 0;
    *report_json = dup_string(doc.dump(2));
    return CP_OK;
  });
}

const char* cp_last_error(void) { return g_last_error.c_str(); }

void cp_string_free(char* s) { delete[] s; }

}  // extern "C"
