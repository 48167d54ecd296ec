// serialize.hpp: JSON encodings shared by the library and the CLI.
//
// Operator object: {"dim_a": d1, "dim_b": d2, "entries": [[re, im], ...]} with
// entries in row-major order. Operator entries keep full double precision so
// witness files round-trip exactly; report values are rounded to 15
// significant digits.

#pragma once

#include "gewit/operator.hpp"
#include "gewit/ppt.hpp"
#include "gewit/simplex.hpp"
#include "gewit/witness.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gewit {

using json = nlohmann::json;

/// x rounded to 15 significant digits.
inline double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline json complex_to_json(complex z, bool rounded = true) {
  if (rounded) return json::array({round15(z.real()), round15(z.imag())});
  return json::array({z.real(), z.imag()});
}

inline json to_json(const BipartiteOperator& op) {
  json entries = json::array();
  const Matrix& m = op.entries();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c), false));
  return {{"dim_a", op.dim_a()}, {"dim_b", op.dim_b()}, {"entries", std::move(entries)}};
}

inline BipartiteOperator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim_a") || !j.contains("dim_b") || !j.contains("entries")) {
    throw std::invalid_argument("operator JSON: expected object with dim_a, dim_b, entries");
  }
  const auto da = j.at("dim_a").get<std::size_t>();
  const auto db = j.at("dim_b").get<std::size_t>();
  const json& entries = j.at("entries");
  const std::size_t n = da * db;
  if (!entries.is_array() || entries.size() != n * n) {
    throw std::invalid_argument("operator JSON: entries must hold (dim_a*dim_b)^2 = " + std::to_string(n * n) +
                                " [re, im] pairs");
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n * n; ++k) {
    const json& z = entries[k];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw std::invalid_argument("operator JSON: entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
        complex(z[0].get<double>(), z[1].get<double>());
  }
  return {da, db, std::move(m)};
}

inline BipartiteOperator read_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open operator file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("operator file '" + path + "': " + e.what());
  }
  return operator_from_json(j);
}

inline json to_json(const SimplexParams& p) {
  return {{"alpha", round15(p.alpha)}, {"beta", round15(p.beta)}, {"gamma", round15(p.gamma)}};
}

inline SimplexParams simplex_params_from_json(const json& j) {
  return {j.at("alpha").get<double>(), j.at("beta").get<double>(), j.at("gamma").get<double>()};
}

inline json to_json(const HorodeckiParam& b) { return {{"b", round15(b.value())}}; }

inline HorodeckiParam horodecki_param_from_json(const json& j) { return HorodeckiParam(j.at("b").get<double>()); }

inline json to_json(const WitnessCertificate& c) {
  json table = json::array();
  for (std::size_t k = 0; k < c.c_table.size(); ++k) {
    if (k == 0) continue;
    table.push_back({{"n", k / c.d}, {"m", k % c.d}, {"c", complex_to_json(c.c_table[k])}});
  }
  return {{"d", c.d},
          {"in_lemma_form", c.in_lemma_form},
          {"a", round15(c.a)},
          {"c_table", std::move(table)},
          {"max_abs_c", round15(c.max_abs_c)},
          {"max_off_form", round15(c.max_off_form)},
          {"certified", c.certified}};
}

inline json to_json(const DetectionProfile& p) {
  return {{"gamma", round15(p.gamma)},
          {"lambda_1", round15(p.lambda_1)},
          {"lambda_2", round15(p.lambda_2)},
          {"lambda_min", round15(p.lambda_min)},
          {"detects", p.detects}};
}

inline json to_json(const PptVerdict& v) {
  return {{"label", v.label()}, {"min_pt_eigenvalue", round15(v.min_pt_eigenvalue)}, {"tolerance", v.tolerance}};
}

inline json to_json(const SeparableProbe& p) {
  return {{"minimum", round15(p.minimum)}, {"argmin_sample", p.argmin_sample}, {"samples", p.samples}};
}

}  // namespace gewit
