// gewit: command-line front end for the two-qutrit witness library.

#include "gewit/gewit.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace gewit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitBattery = 3;

constexpr const char* kSliceColumns = R"(slice CSV columns (one row per grid point, alpha-major):
  alpha, beta, gamma   simplex mixing weights
  valid                1 if the state is positive semidefinite within --tol
  min_pt_eig           smallest eigenvalue of the partial transpose (second factor)
  label                invalid | NPT-I | NPT-II | PPT-detected-bound-entangled | PPT-unresolved
  w_c_i, w_c_ii        Tr(rho C_I), Tr(rho C_II)
  lambda_min           detection threshold of the line witness of this gamma (empty if none)
  w_c_line             Tr(rho C_{gamma,lambda_min}) (empty if no certified line witness)
  measure              Hilbert-Schmidt distance to the separable set (gamma = 0 only)
A leading '# ' line records version, grid and tolerance.)";

constexpr const char* kLambdaColumns = R"(lambda-scan CSV columns:
  gamma, lambda_1, lambda_2, lambda_min, detects (1 if lambda_min < 1)
followed by a '# summary:' line with the minimum and where detection flips.)";

struct Options {
  std::optional<double> alpha, beta, gamma, b, lambda;
  double gamma_min = 0.2;
  double gamma_max = 3.0 / 7.0;
  std::size_t grid = 101;
  std::size_t steps = 1000;
  double tol = kPsdTol;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  std::string format;
  std::string out;
  std::string file;
  std::string kind = "c-i";
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

SimplexParams params_from(const Options& o) {
  if (o.b) {
    if (o.alpha || o.beta || o.gamma) throw UsageError("give either --b or --alpha/--beta/--gamma, not both");
    return horodecki_to_simplex(HorodeckiParam(*o.b));
  }
  if (!o.alpha || !o.beta || !o.gamma) throw UsageError("need --b or all of --alpha, --beta, --gamma");
  return {*o.alpha, *o.beta, *o.gamma};
}

std::string format_or(const Options& o, const char* fallback) { return o.format.empty() ? fallback : o.format; }

int cmd_classify(const Options& o) {
  const SimplexParams p = params_from(o);
  const RegionSample r = o.b ? classify_horodecki(HorodeckiParam(*o.b), o.tol) : classify_point(p, o.tol);
  if (!r.valid) {
    std::cerr << "error: (" << format15(p.alpha) << ", " << format15(p.beta) << ", " << format15(p.gamma)
              << ") is not a valid state: smallest eigenvalue " << format15(simplex_min_eigenvalue(p)) << "\n";
    return kExitUsage;
  }
  Sink sink(o.out);
  const std::string fmt = format_or(o, "text");
  if (fmt == "csv") {
    sink.os() << kSliceCsvHeader << "\n" << to_csv_row(r) << "\n";
    return kExitOk;
  }
  json j = to_json(r);
  if (o.b) j["b"] = round15(*o.b);
  if (fmt == "text") {
    sink.os() << "label: " << to_string(r.label);
    if (r.measure) sink.os() << "  measure: " << format15(*r.measure);
    sink.os() << "\n";
  }
  sink.os() << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_slice(const Options& o) {
  if (!o.gamma) throw UsageError("slice needs --gamma");
  const SweepReport rep = slice(*o.gamma, o.grid, o.tol);
  Sink sink(o.out);
  if (format_or(o, "csv") == "json") {
    sink.os() << to_json(rep).dump(1) << "\n";
  } else {
    write_csv(sink.os(), rep);
  }
  return kExitOk;
}

int cmd_lambda_scan(const Options& o) {
  const LambdaScan scan = lambda_scan(o.gamma_min, o.gamma_max, o.steps);
  Sink sink(o.out);
  if (format_or(o, "csv") == "json") {
    sink.os() << to_json(scan).dump(1) << "\n";
  } else {
    write_csv(sink.os(), scan);
  }
  return kExitOk;
}

int cmd_reproduce(const Options& o) {
  BatteryOptions opt;
  opt.sampler_count = o.samples;
  Sink sink(o.out);
  const bool as_json = o.format == "json";
  json rows = json::array();
  const auto results = run_battery(opt, [&](const CriterionResult& r) {
    if (as_json) {
      rows.push_back({{"id", r.id},
                      {"name", r.name},
                      {"target", r.target},
                      {"computed", round15(r.computed)},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass},
                      {"detail", r.detail}});
    } else {
      sink.os() << format_result(r) << std::endl;
    }
  });
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  if (as_json) {
    sink.os() << json{{"version", kVersion}, {"criteria", rows}, {"failed", failed}}.dump(2) << "\n";
  } else {
    sink.os() << (failed == 0 ? "all " + std::to_string(results.size()) + " criteria pass"
                              : std::to_string(failed) + " criteria FAILED:")
              << "\n";
    for (const auto& r : results)
      if (!r.pass) sink.os() << "  #" << r.id << " " << r.name << "\n";
  }
  return failed == 0 ? kExitOk : kExitBattery;
}

int cmd_witness_check(const Options& o) {
  const BipartiteOperator w = read_operator_file(o.file);
  require_hermitian(w, kHermitianTol, "witness-check");
  const WitnessCertificate cert = certify_lemma1(w);
  json j{{"certificate", to_json(cert)}};
  if (!cert.certified) {
    const SeparableProbe probe = min_separable_expectation(w, {o.seed, o.samples, 1});
    j["sampler_probe"] = to_json(probe);
    j["sampler_probe"]["seed"] = o.seed;
    j["sampler_probe"]["caveat"] =
        probe.minimum < 0.0
            ? "a separable state with negative expectation was found: the operator is not a witness"
            : "one-sided evidence only: no negative value among the samples, which does not prove positivity "
              "on all separable states";
  }
  Sink sink(o.out);
  sink.os() << (cert.certified ? "certified" : "not certified") << "\n" << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_nearest_ppt(const Options& o) {
  std::optional<DensityMatrix> rho;
  if (!o.file.empty()) {
    rho.emplace(read_operator_file(o.file));
  } else {
    const SimplexParams p = params_from(o);
    const SimplexState s = simplex_state(p, o.tol);
    if (!s.valid) throw UsageError("parameters do not give a valid state");
    rho.emplace(s.density());
  }
  const NearestPptResult res = nearest_ppt(*rho, o.tol);
  json j{{"converged", res.converged},
         {"iterations", res.iterations},
         {"residual", round15(res.residual)},
         {"distance", round15(res.distance)},
         {"min_pt_eigenvalue", round15(res.min_pt_eigenvalue)},
         {"state", to_json(res.state.op())}};
  Sink sink(o.out);
  sink.os() << j.dump(2) << "\n";
  if (!res.converged) {
    std::cerr << "error: nearest-ppt did not converge in " << res.iterations << " iterations\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_emit_witness(const Options& o) {
  BipartiteOperator w = BipartiteOperator::zero(kQutrit, kQutrit);
  if (o.kind == "c-i") {
    w = region_witnesses().c_i.op;
  } else if (o.kind == "c-ii") {
    w = region_witnesses().c_ii.op;
  } else {
    if (!o.gamma) throw UsageError("emit-witness line needs --gamma");
    const double lambda = o.lambda ? *o.lambda : detection_profile(*o.gamma).lambda_min;
    w = c_gamma_lambda(*o.gamma, lambda).op;
  }
  Sink sink(o.out);
  sink.os() << to_json(w).dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witnesses and PPT regions of two-qutrit Bell-diagonal states.", "gewit"};
  app.set_version_flag("--version", kVersion);
  app.footer(std::string(kSliceColumns) + "\n\n" + kLambdaColumns +
             "\n\nExit codes: 0 success, 1 usage or invalid input, 2 non-convergence, 3 reproduction failure.");
  app.require_subcommand(1);

  Options o;
  auto add_state = [&](CLI::App* c) {
    c->add_option("--alpha", o.alpha, "weight of P00");
    c->add_option("--beta", o.beta, "weight of P10 + P20");
    c->add_option("--gamma", o.gamma, "weight of P01 + P11 + P21");
    c->add_option("--b", o.b, "Horodecki parameter in [0, 5]")->check(CLI::Range(0.0, 5.0));
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--tol", o.tol, "PSD / PPT tolerance")->capture_default_str();
    c->add_option("--out", o.out, "write output to FILE instead of stdout");
  };
  auto format_set = [](std::initializer_list<std::string> v) { return CLI::IsMember(std::vector<std::string>(v)); };

  auto* classify = app.add_subcommand("classify", "validity, PT verdict, witness values and region label of a state");
  add_state(classify);
  add_common(classify);
  classify->add_option("--format", o.format, "text (default), csv or json")
      ->check(format_set({"text", "csv", "json"}));

  auto* sl = app.add_subcommand("slice", "classify a grid over the fixed-gamma slice (CSV by default)");
  sl->add_option("--gamma", o.gamma, "slice value")->required();
  sl->add_option("--grid", o.grid, "points per axis")->capture_default_str()->check(CLI::Range(2, 1000));
  sl->add_option("--format", o.format, "csv (default) or json")->check(format_set({"csv", "json"}));
  add_common(sl);

  auto* ls = app.add_subcommand("lambda-scan", "detection thresholds of the line witness over a gamma range");
  ls->add_option("--gamma-min", o.gamma_min, "first gamma")->capture_default_str();
  ls->add_option("--gamma-max", o.gamma_max, "last gamma")->capture_default_str();
  ls->add_option("--steps", o.steps, "number of gamma values")->capture_default_str()->check(CLI::Range(2, 10000000));
  ls->add_option("--format", o.format, "csv (default) or json")->check(format_set({"csv", "json"}));
  ls->add_option("--out", o.out, "write output to FILE instead of stdout");

  auto* rep = app.add_subcommand("reproduce", "run the threshold battery; exit 3 if any criterion fails");
  rep->add_option("--samples", o.samples, "product samples per witness")->capture_default_str()->check(CLI::PositiveNumber);
  rep->add_option("--format", o.format, "text (default) or json")->check(format_set({"text", "json"}));
  rep->add_option("--out", o.out, "write output to FILE instead of stdout");

  auto* wc = app.add_subcommand("witness-check", "Weyl-product certificate of an operator file; sampler probe if uncertified");
  wc->add_option("FILE", o.file, "operator JSON {dim_a, dim_b, entries}")->required();
  wc->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
  wc->add_option("--samples", o.samples, "product samples")->capture_default_str()->check(CLI::PositiveNumber);
  wc->add_option("--out", o.out, "write output to FILE instead of stdout");

  auto* np = app.add_subcommand("nearest-ppt", "nearest PPT state by Dykstra projections; exit 2 on non-convergence");
  add_state(np);
  np->add_option("--state", o.file, "operator JSON instead of parameters");
  np->add_option("--tol", o.tol, "convergence tolerance")->capture_default_str();
  np->add_option("--out", o.out, "write output to FILE instead of stdout");

  auto* ew = app.add_subcommand("emit-witness", "write C_I, C_II or C_{gamma,lambda} as an operator JSON file");
  ew->add_option("--kind", o.kind, "c-i, c-ii or line")->capture_default_str()->check(format_set({"c-i", "c-ii", "line"}));
  ew->add_option("--gamma", o.gamma, "gamma of the line witness");
  ew->add_option("--lambda", o.lambda, "lambda of the line witness (default: lambda_min)");
  ew->add_option("--out", o.out, "write output to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify) return cmd_classify(o);
    if (*sl) return cmd_slice(o);
    if (*ls) return cmd_lambda_scan(o);
    if (*rep) return cmd_reproduce(o);
    if (*wc) return cmd_witness_check(o);
    if (*np) return cmd_nearest_ppt(o);
    if (*ew) return cmd_emit_witness(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
