#include "json_io.hpp"

#include "atlas.hpp"

#include <nlohmann/json.hpp>

namespace canonpair {

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw ParseError(std::string(what) + ": expected a nonempty array of rows");
  const int rows = static_cast<int>(j.size());
  int cols = -1;
  Mat m;
  for (int i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array())
      throw ParseError(std::string(what) + ": row is not an array");
    if (cols < 0) {
      cols = static_cast<int>(row.size());
      m.resize(rows, cols);
    }
    if (static_cast<int>(row.size()) != cols)
      throw ParseError(std::string(what) + ": ragged rows");
    for (int k = 0; k < cols; ++k) {
      const json& e = row[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(std::string(what) + ": entry is not [re, im]");
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(what) + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

}  // namespace

std::pair<Mat, Mat> parse_pair_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("H") || !j.contains("C"))
    throw ParseError("pair document: need fields n, H, C");
  if (!j["n"].is_number_integer()) throw ParseError("pair document: n must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw ParseError("pair document: n must be >= 1");
  Mat h = matrix_from_json(j["H"], "H");
  Mat c = matrix_from_json(j["C"], "C");
  if (h.rows() != n || h.cols() != n || c.rows() != n || c.cols() != n)
    throw ParseError("pair document: matrix shapes do not match n");
  return {h, c};
}

std::string pair_to_json(const Mat& h, const Mat& c) {
  json j;
  j["n"] = static_cast<int>(h.rows());
  j["H"] = matrix_to_json(h);
  j["C"] = matrix_to_json(c);
  return j.dump(2);
}

CanonicalForm parse_form_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("flavor") || !j.contains("blocks") ||
      !j.contains("transition"))
    throw ParseError("form document: need fields flavor, blocks, transition");
  CanonicalForm f;
  std::string fl = j["flavor"].get<std::string>();
  if (fl == "standard") f.flavor = Flavor::Standard;
  else if (fl == "alternative") f.flavor = Flavor::Alternative;
  else if (fl == "operator-only" || fl == "operator") f.flavor = Flavor::OperatorOnly;
  else if (fl == "glr") f.flavor = Flavor::Glr;
  else throw ParseError("form document: unknown flavor '" + fl + "'");

  if (!j["blocks"].is_array()) throw ParseError("form document: blocks must be an array");
  for (const json& bj : j["blocks"]) {
    CanonicalBlock b;
    try {
      b.family = family_from_name(bj.at("family").get<std::string>());
      b.lambda = complex_from_json(bj.at("lambda"), "lambda");
      b.lambda_sq = complex_from_json(bj.at("lambda_sq"), "lambda_sq");
      b.k = bj.at("k").get<int>();
      b.epsilon = bj.at("epsilon").get<int>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("form document: bad block: ") + e.what());
    } catch (const InvalidInput& e) {
      throw ParseError(std::string("form document: bad block: ") + e.what());
    }
    check_block(b);
    f.blocks.push_back(b);
  }
  f.transition = matrix_from_json(j["transition"], "transition");
  if (f.transition.rows() != f.transition.cols() ||
      f.transition.rows() != f.total_dim())
    throw ParseError("form document: transition shape does not match blocks");
  if (j.contains("residuals")) {
    const json& r = j["residuals"];
    f.residuals.h_residual = r.value("h_residual", 0.0);
    f.residuals.c_residual = r.value("c_residual", 0.0);
  }
  return f;
}

std::string form_to_json(const CanonicalForm& f) {
  json j;
  j["flavor"] = flavor_name(f.flavor);
  j["n"] = f.total_dim();
  json blocks = json::array();
  for (const auto& b : f.blocks) {
    json bj;
    bj["family"] = family_name(b.family);
    bj["lambda"] = complex_to_json(b.lambda);
    bj["lambda_sq"] = complex_to_json(b.lambda_sq);
    bj["k"] = b.k;
    bj["epsilon"] = b.epsilon;
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  j["transition"] = matrix_to_json(f.transition);
  j["residuals"] = {{"h_residual", f.residuals.h_residual},
                    {"c_residual", f.residuals.c_residual}};
  return j.dump(2);
}

}  // namespace canonpair
