// atlas.hpp: point classification, gamma slices and lambda scans over the
// three-parameter family. Everything here is deterministic: rows come out in
// grid order and floats are printed with 15 significant digits.

#pragma once

#include "gewit/ppt.hpp"
#include "gewit/serialize.hpp"
#include "gewit/simplex.hpp"
#include "gewit/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gewit {

inline constexpr const char* kVersion = "gewit 1.0.0";

enum class RegionLabel { invalid, npt_i, npt_ii, ppt_detected_bound_entangled, ppt_unresolved };

inline const char* to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::invalid: return "invalid";
    case RegionLabel::npt_i: return "NPT-I";
    case RegionLabel::npt_ii: return "NPT-II";
    case RegionLabel::ppt_detected_bound_entangled: return "PPT-detected-bound-entangled";
    case RegionLabel::ppt_unresolved: return "PPT-unresolved";
  }
  return "?";
}

/// Witnesses evaluated on one slice of fixed gamma.
struct SliceWitnesses {
  double gamma = 0.0;
  RegionWitnesses region;
  /// C_{gamma, lambda_min}; present only when it detects (lambda_min < 1) and is certified.
  std::optional<LambdaLineWitness> line;
  std::optional<DetectionProfile> profile;

  static SliceWitnesses for_gamma(double gamma) {
    SliceWitnesses s{gamma, region_witnesses(), std::nullopt, std::nullopt};
    if (gamma != 0.0 && std::abs(gamma) <= kGammaMax) {
      s.profile = detection_profile(gamma);
      if (s.profile->detects) {
        LambdaLineWitness w = c_gamma_lambda(gamma, s.profile->lambda_min);
        if (certify_lemma1(w.op).certified) s.line = std::move(w);
      }
    }
    return s;
  }
};

struct RegionSample {
  SimplexParams params;
  bool valid = false;
  double min_pt_eigenvalue = 0.0;
  bool npt = false;
  RegionLabel label = RegionLabel::invalid;
  double w_c_i = 0.0;
  double w_c_ii = 0.0;
  std::optional<double> lambda_min;  // of the line witness, when present
  std::optional<double> w_line;
  std::optional<double> measure;
  std::string note;
};

/// Labels a point. NPT points go to region I or II: among the region witnesses
/// with negative expectation the one closer to the separable set wins; if
/// neither is negative (gamma != 0), the smaller expectation decides.
inline RegionSample classify_point(const SimplexParams& p, const SliceWitnesses& ctx, double tol = kPsdTol) {
  if (p.gamma != ctx.gamma) throw std::invalid_argument("classify_point: gamma differs from the slice context");
  RegionSample r;
  r.params = p;
  const BipartiteOperator op = simplex_operator(p);
  r.valid = simplex_min_eigenvalue(p) >= -tol;
  r.min_pt_eigenvalue = min_eigenvalue(partial_transpose(op, Subsystem::second));
  r.npt = r.min_pt_eigenvalue < -tol;
  r.w_c_i = ctx.region.c_i.expectation(op);
  r.w_c_ii = ctx.region.c_ii.expectation(op);
  if (ctx.line) {
    r.lambda_min = ctx.line->lambda;
    r.w_line = hs_inner(op, ctx.line->op).real();
  }
  if (!r.valid) {
    r.label = RegionLabel::invalid;
    return r;
  }
  if (r.npt) {
    const bool neg_i = r.w_c_i < 0.0;
    const bool neg_ii = r.w_c_ii < 0.0;
    bool region_i = false;
    if (neg_i && neg_ii) {
      region_i = r.w_c_i >= r.w_c_ii;
    } else if (neg_i || neg_ii) {
      region_i = neg_i;
    } else {
      region_i = r.w_c_i <= r.w_c_ii;
    }
    r.label = region_i ? RegionLabel::npt_i : RegionLabel::npt_ii;
    if (p.gamma == 0.0 && (region_i ? neg_i : neg_ii)) {
      r.measure = region_i ? region_i_distance(p.alpha, p.beta) : region_ii_distance(p.alpha, p.beta);
    }
    return r;
  }
  const bool detected = r.w_c_i < -tol || r.w_c_ii < -tol || (r.w_line && *r.w_line < -tol);
  if (detected) {
    r.label = RegionLabel::ppt_detected_bound_entangled;
  } else {
    r.label = RegionLabel::ppt_unresolved;
    if (p.gamma == 0.0) {
      r.measure = 0.0;
      r.note = "separable: every PPT state of the gamma = 0 slice is separable";
    }
  }
  return r;
}

inline RegionSample classify_point(const SimplexParams& p, double tol = kPsdTol) {
  return classify_point(p, SliceWitnesses::for_gamma(p.gamma), tol);
}

/// Classification of a Horodecki state through its simplex coordinates.
inline RegionSample classify_horodecki(const HorodeckiParam& b, double tol = kPsdTol) {
  RegionSample r = classify_point(horodecki_to_simplex(b), tol);
  if (r.label == RegionLabel::ppt_unresolved && b.value() >= 2.0 && b.value() <= 3.0) {
    r.note = "separable: Horodecki states with 2 <= b <= 3 are separable";
  }
  return r;
}

// ---------------------------------------------------------------------------
// CSV / JSON rows

inline constexpr const char* kSliceCsvHeader =
    "alpha,beta,gamma,valid,min_pt_eig,label,w_c_i,w_c_ii,lambda_min,w_c_line,measure";

inline std::string optional15(const std::optional<double>& v) { return v ? format15(*v) : std::string(); }

inline std::string to_csv_row(const RegionSample& r) {
  std::string s;
  s += format15(r.params.alpha) + "," + format15(r.params.beta) + "," + format15(r.params.gamma) + ",";
  s += std::string(r.valid ? "1" : "0") + "," + format15(r.min_pt_eigenvalue) + "," + to_string(r.label) + ",";
  s += format15(r.w_c_i) + "," + format15(r.w_c_ii) + "," + optional15(r.lambda_min) + "," + optional15(r.w_line) +
       "," + optional15(r.measure);
  return s;
}

inline json to_json(const RegionSample& r) {
  json witnesses = {{"C_I", round15(r.w_c_i)}, {"C_II", round15(r.w_c_ii)}};
  if (r.w_line) witnesses["C_gamma_lambda_min"] = round15(*r.w_line);
  json j = {{"params", to_json(r.params)},
            {"valid", r.valid},
            {"min_pt_eigenvalue", round15(r.min_pt_eigenvalue)},
            {"pt_verdict", r.npt ? "NPT" : "PPT"},
            {"label", to_string(r.label)},
            {"witness_values", std::move(witnesses)}};
  j["lambda_min"] = r.lambda_min ? json(round15(*r.lambda_min)) : json(nullptr);
  j["measure"] = r.measure ? json(round15(*r.measure)) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------------------
// Slices

struct PlaneBox {
  double alpha_min, alpha_max, beta_min, beta_max;
};

/// Bounding box in (alpha, beta) of the positivity triangle at fixed gamma.
inline PlaneBox positivity_box(double gamma) {
  // Each eigenvalue group >= 0 as  ca*alpha + cb*beta + c0 >= 0.
  const std::array<std::array<double, 3>, 4> lines{{
      {-1.0, -1.0, 1.0 - gamma},
      {8.0, -1.0, 1.0 - gamma},
      {-2.0, 7.0, 2.0 * (1.0 - gamma)},
      {-1.0, -1.0, 1.0 + 2.0 * gamma},
  }};
  PlaneBox box{1e300, -1e300, 1e300, -1e300};
  bool any = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& l1 = lines[i];
      const auto& l2 = lines[j];
      const double det = l1[0] * l2[1] - l1[1] * l2[0];
      if (std::abs(det) < 1e-15) continue;
      const double a = (-l1[2] * l2[1] + l2[2] * l1[1]) / det;
      const double b = (-l1[0] * l2[2] + l2[0] * l1[2]) / det;
      bool feasible = true;
      for (const auto& l : lines) feasible = feasible && (l[0] * a + l[1] * b + l[2] >= -1e-12);
      if (!feasible) continue;
      any = true;
      box.alpha_min = std::min(box.alpha_min, a);
      box.alpha_max = std::max(box.alpha_max, a);
      box.beta_min = std::min(box.beta_min, b);
      box.beta_max = std::max(box.beta_max, b);
    }
  }
  if (!any || box.alpha_max - box.alpha_min < 1e-15) {
    throw std::invalid_argument("positivity_box: no valid states at gamma = " + format15(gamma));
  }
  return box;
}

struct SweepReport {
  double gamma = 0.0;
  std::size_t grid_n = 0;
  PlaneBox box{};
  double tol = kPsdTol;
  std::vector<RegionSample> rows;
};

/// grid_n x grid_n points over the positivity box, alpha-major.
inline SweepReport slice(double gamma, std::size_t grid_n, double tol = kPsdTol) {
  if (grid_n < 2) throw std::invalid_argument("slice: grid must have at least 2 points per axis");
  SweepReport rep;
  rep.gamma = gamma;
  rep.grid_n = grid_n;
  rep.box = positivity_box(gamma);
  rep.tol = tol;
  const SliceWitnesses ctx = SliceWitnesses::for_gamma(gamma);
  rep.rows.reserve(grid_n * grid_n);
  const double n1 = static_cast<double>(grid_n - 1);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double alpha = rep.box.alpha_min + (rep.box.alpha_max - rep.box.alpha_min) * static_cast<double>(i) / n1;
    for (std::size_t j = 0; j < grid_n; ++j) {
      const double beta = rep.box.beta_min + (rep.box.beta_max - rep.box.beta_min) * static_cast<double>(j) / n1;
      rep.rows.push_back(classify_point({alpha, beta, gamma}, ctx, tol));
    }
  }
  return rep;
}

inline void write_csv(std::ostream& os, const SweepReport& rep) {
  os << "# " << kVersion << " slice gamma=" << format15(rep.gamma) << " grid=" << rep.grid_n
     << " tol=" << format15(rep.tol) << " alpha=[" << format15(rep.box.alpha_min) << ","
     << format15(rep.box.alpha_max) << "] beta=[" << format15(rep.box.beta_min) << ","
     << format15(rep.box.beta_max) << "]\n";
  os << kSliceCsvHeader << "\n";
  for (const auto& r : rep.rows) os << to_csv_row(r) << "\n";
}

inline json to_json(const SweepReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back(to_json(r));
  return {{"provenance", {{"version", kVersion}, {"tol", rep.tol}}},
          {"grid",
           {{"gamma", round15(rep.gamma)},
            {"n", rep.grid_n},
            {"alpha", {round15(rep.box.alpha_min), round15(rep.box.alpha_max)}},
            {"beta", {round15(rep.box.beta_min), round15(rep.box.beta_max)}}}},
          {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// Lambda scans

struct LambdaScan {
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  std::size_t steps = 0;
  std::vector<DetectionProfile> rows;
  double best_lambda_min = 0.0;
  double best_gamma = 0.0;
  /// Grid points where `detects` changes between neighbours (midpoints).
  std::vector<double> detection_flips;
};

inline LambdaScan lambda_scan(double gamma_min, double gamma_max, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("lambda_scan: steps must be at least 2");
  if (!(gamma_min <= gamma_max)) throw std::invalid_argument("lambda_scan: empty gamma range");
  LambdaScan scan{gamma_min, gamma_max, steps, {}, 0.0, 0.0, {}};
  scan.rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double g = gamma_min + (gamma_max - gamma_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    scan.rows.push_back(detection_profile(g));
  }
  const auto best = std::min_element(scan.rows.begin(), scan.rows.end(),
                                     [](const auto& a, const auto& b) { return a.lambda_min < b.lambda_min; });
  scan.best_lambda_min = best->lambda_min;
  scan.best_gamma = best->gamma;
  for (std::size_t i = 1; i < steps; ++i) {
    if (scan.rows[i].detects != scan.rows[i - 1].detects) {
      scan.detection_flips.push_back(0.5 * (scan.rows[i].gamma + scan.rows[i - 1].gamma));
    }
  }
  return scan;
}

inline constexpr const char* kLambdaCsvHeader = "gamma,lambda_1,lambda_2,lambda_min,detects";

inline void write_csv(std::ostream& os, const LambdaScan& scan) {
  os << "# " << kVersion << " lambda-scan gamma=[" << format15(scan.gamma_min) << "," << format15(scan.gamma_max)
     << "] steps=" << scan.steps << "\n";
  os << kLambdaCsvHeader << "\n";
  for (const auto& r : scan.rows) {
    os << format15(r.gamma) << "," << format15(r.lambda_1) << "," << format15(r.lambda_2) << ","
       << format15(r.lambda_min) << "," << (r.detects ? 1 : 0) << "\n";
  }
  os << "# summary: min lambda_min=" << format15(scan.best_lambda_min) << " at gamma=" << format15(scan.best_gamma);
  for (double f : scan.detection_flips) os << "; detects flips near gamma=" << format15(f);
  os << "\n";
}

inline json to_json(const LambdaScan& scan) {
  json rows = json::array();
  for (const auto& r : scan.rows) rows.push_back(to_json(r));
  json flips = json::array();
  for (double f : scan.detection_flips) flips.push_back(round15(f));
  return {{"provenance", {{"version", kVersion}}},
          {"grid", {{"gamma_min", round15(scan.gamma_min)}, {"gamma_max", round15(scan.gamma_max)}, {"steps", scan.steps}}},
          {"rows", std::move(rows)},
          {"summary",
           {{"min_lambda_min", round15(scan.best_lambda_min)},
            {"argmin_gamma", round15(scan.best_gamma)},
            {"detection_flips", std::move(flips)}}}};
}

}  // namespace gewit
