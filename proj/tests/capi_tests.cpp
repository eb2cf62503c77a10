// Exercises the shared library strictly through the C interface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "canonpair.h"

#include <string>

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { cp_string_free(s); }
  std::string get() const { return s ? s : ""; }
};

struct Pair {
  cp_pair* p = nullptr;
  ~Pair() { cp_pair_free(p); }
};

}  // namespace

TEST_CASE("default tolerances are populated") {
  cp_tolerances tol{};
  cp_default_tolerances(&tol);
  CHECK(tol.rank_tol > 0);
  CHECK(tol.verify_tol > 0);
  CHECK(tol.cluster_tol > 0);
}

TEST_CASE("generate, parse, validate, canonicalize, verify pipeline") {
  cp_tolerances tol{};
  cp_default_tolerances(&tol);

  Str pair_doc;
  REQUIRE(cp_generate(5, 7, nullptr, &tol, &pair_doc.s) == CP_OK);

  Pair p;
  REQUIRE(cp_pair_parse(pair_doc.s, &p.p) == CP_OK);

  Str report;
  CHECK(cp_pair_validate(p.p, &tol, &report.s) == CP_OK);
  CHECK(report.get().find("\"valid\": true") != std::string::npos);

  Str form_doc;
  REQUIRE(cp_pair_canonicalize(p.p, "standard", &tol, &form_doc.s) == CP_OK);
  CHECK(form_doc.get().find("\"flavor\": \"standard\"") != std::string::npos);

  Str verify_report;
  CHECK(cp_pair_verify(p.p, form_doc.s, &tol, &verify_report.s) == CP_OK);
  CHECK(verify_report.get().find("\"pass\": true") != std::string::npos);

  Str alt_doc;
  REQUIRE(cp_convert(form_doc.s, "alt", &tol, &alt_doc.s) == CP_OK);
  CHECK(alt_doc.get().find("\"flavor\": \"alternative\"") != std::string::npos);

  Str back_doc;
  REQUIRE(cp_convert(alt_doc.s, "standard", &tol, &back_doc.s) == CP_OK);

  Str glr_doc;
  CHECK(cp_pair_canonicalize(p.p, "glr", &tol, &glr_doc.s) == CP_OK);
  Str op_doc;
  CHECK(cp_pair_canonicalize(p.p, "operator", &tol, &op_doc.s) == CP_OK);
}

TEST_CASE("generation is deterministic") {
  cp_tolerances tol{};
  cp_default_tolerances(&tol);
  Str a, b;
  REQUIRE(cp_generate(4, 7, nullptr, &tol, &a.s) == CP_OK);
  REQUIRE(cp_generate(4, 7, nullptr, &tol, &b.s) == CP_OK);
  CHECK(a.get() == b.get());
}

TEST_CASE("spectrum specs are honored") {
  cp_tolerances tol{};
  cp_default_tolerances(&tol);
  Str doc;
  REQUIRE(cp_generate(0, 3, "negative:-2:0:2:1", &tol, &doc.s) == CP_OK);
  Pair p;
  REQUIRE(cp_pair_parse(doc.s, &p.p) == CP_OK);
  Str form_doc;
  REQUIRE(cp_pair_canonicalize(p.p, "standard", &tol, &form_doc.s) == CP_OK);
  CHECK(form_doc.get().find("\"family\": \"negative\"") != std::string::npos);
}

TEST_CASE("error paths set statuses and messages") {
  cp_tolerances tol{};
  cp_default_tolerances(&tol);

  Pair bad;
  CHECK(cp_pair_parse("definitely not json", &bad.p) == CP_EPARSE);
  CHECK(std::string(cp_last_error()).size() > 0);

  // Valid document, invalid pair: identity form with a skew operator.
  const char* doc =
      "{\"n\":2,"
      "\"H\":[[[1,0],[0,0]],[[0,0],[1,0]]],"
      "\"C\":[[[0,0],[-1,0]],[[1,0],[0,0]]]}";
  Pair p;
  REQUIRE(cp_pair_parse(doc, &p.p) == CP_OK);
  Str report;
  CHECK(cp_pair_validate(p.p, &tol, &report.s) == CP_EVALIDATION);
  CHECK(report.get().find("self-adjoint") != std::string::npos);
  CHECK(cp_pair_canonicalize(p.p, "standard", &tol, &report.s) == CP_EVALIDATION);

  Str out;
  CHECK(cp_pair_canonicalize(p.p, "nonsense", &tol, &out.s) == CP_EPARSE);
  CHECK(cp_generate(3, 1, "bogus:0:0:1:1", &tol, &out.s) == CP_EVALIDATION);
}
