#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fintriple/fastpath.hpp"
#include "fintriple/scan.hpp"
#include "fintriple/serialization.hpp"
#include "fintriple/standard_model.hpp"
#include "fintriple/triple.hpp"

using namespace fintriple;

namespace {

// Documented exit contract: 0 success/agreement, 2 semantic failure (axiom
// or cross-check), 1 operational error (I/O, parse, flags).
constexpr int kOk = 0;
constexpr int kOperational = 1;
constexpr int kSemantic = 2;

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOperational;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOperational;
  } catch (const AlgebraError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSemantic;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOperational;
  }
}

struct ToleranceOptions {
  double rel = Tolerance{}.rel;
  double floor = Tolerance{}.abs_floor;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", rel,
                    "Relative tolerance for rank and zero decisions (env FINTRIPLE_TOL_REL)")
        ->envname("FINTRIPLE_TOL_REL")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-floor", floor,
                    "Absolute tolerance floor (env FINTRIPLE_TOL_FLOOR)")
        ->envname("FINTRIPLE_TOL_FLOOR")
        ->check(CLI::PositiveNumber);
  }
  Tolerance make() const { return Tolerance{rel, floor}; }
};

Json tolerance_json(const Tolerance& tol) {
  return Json{{"rel", tol.rel}, {"abs_floor", tol.abs_floor}};
}

std::string display_axiom(const std::string& key) {
  if (key == "dirac_self_adjoint") return "dirac self-adjointness";
  if (key == "gamma_self_adjoint") return "gamma self-adjointness";
  std::string out = key;
  for (char& ch : out)
    if (ch == '_') ch = ' ';
  return out;
}

std::string block_table(const std::vector<WedderburnBlock>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += " ";
    out += "(m=" + std::to_string(b.m) + ", k=" + std::to_string(b.k) + ")";
  }
  return out;
}

Json block_json(const std::vector<WedderburnBlock>& blocks) {
  Json arr = Json::array();
  for (const auto& b : blocks) arr.push_back(Json{{"m", b.m}, {"k", b.k}});
  return arr;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }
const char* true_false(bool b) { return b ? "true" : "false"; }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    save_text(out_path, text);
}

int do_check(const std::string& path, const Tolerance& tol, bool json) {
  const RealSpectralTriple t = load_triple(path);
  const ValidationReport rep = validate(t, tol);
  if (json) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = "check";
    j["file"] = path;
    j["tolerance"] = tolerance_json(tol);
    Json checks = Json::array();
    for (const auto& c : rep.checks)
      checks.push_back(Json{{"axiom", c.axiom},
                            {"residual", c.residual},
                            {"threshold", c.threshold},
                            {"pass", c.pass}});
    j["checks"] = std::move(checks);
    j["warnings"] = rep.warnings;
    j["valid"] = rep.valid();
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
  } else {
    int failures = 0;
    for (const auto& c : rep.checks) {
      failures += c.pass ? 0 : 1;
      std::printf("%-4s  %-34s residual %.3e (threshold %.3e)\n", c.pass ? "pass" : "FAIL",
                  display_axiom(c.axiom).c_str(), c.residual, c.threshold);
    }
    for (const auto& w : rep.warnings) std::printf("warning: %s\n", w.c_str());
    if (failures == 0)
      std::printf("all %zu axiom checks pass\n", rep.checks.size());
    else
      std::printf("%d of %zu axiom checks failed\n", failures, rep.checks.size());
  }
  return rep.valid() ? kOk : kSemantic;
}

int do_analyze(const std::string& path, const Tolerance& tol, bool json) {
  const RealSpectralTriple t = load_triple(path);
  const ValidationReport rep = validate(t, tol);
  if (!rep.valid()) {
    const AxiomCheck* bad = rep.failing();
    std::fprintf(stderr, "error: triple fails axiom '%s' (residual %.3e)\n",
                 display_axiom(bad->axiom).c_str(), bad->residual);
    return kSemantic;
  }

  const StarAlgebra alg = wedderburn(complex_algebra(t, tol), tol);
  const MatrixSubspace om = omega1(t, tol);
  const StarAlgebra cl = wedderburn(clifford(t, tol), tol);
  const DiracDecomposition dec = decompose(t, tol);
  const FirstOrderVerdict first = first_order_via_decomposition(t, tol);
  const SecondOrderVerdict second = second_order(t, tol);
  const HodgeDiagnostics hd = hodge(t, tol);
  const StarAlgebra aprime = commutant(t.algebra_generators, tol);
  const double dr_residual = aprime.space.residual(dec.dr);
  const bool dr_in_commutant = subspace_contains(aprime.space, dec.dr, tol);

  if (json) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = "analyze";
    j["file"] = path;
    j["tolerance"] = tolerance_json(tol);
    j["dim_h"] = t.dim_h;
    j["algebra"] = Json{{"dim", alg.dim()}, {"blocks", block_json(*alg.structure)}};
    j["algebra_commutant_dim"] = aprime.dim();
    j["one_forms_dim"] = om.dim();
    j["clifford"] = Json{{"dim", cl.dim()}, {"blocks", block_json(*cl.structure)}};
    j["clifford_commutant_dim"] = hd.commutant_dim;
    j["circled_clifford_dim"] = hd.circle_dim;
    j["first_order"] = Json{{"holds", first.holds}, {"witness", first.witness}};
    j["second_order"] = Json{{"holds", second.holds},
                             {"residual", second.residual},
                             {"threshold", second.threshold}};
    j["hodge"] = Json{{"holds", hd.holds},
                      {"circle_in_commutant", hd.circle_in_commutant},
                      {"projector_distance", hd.projector_distance}};
    j["decomposition_norms"] = Json{{"d0", hs_norm(dec.d0)},
                                    {"d1", hs_norm(dec.d1)},
                                    {"d2", hs_norm(dec.d2)},
                                    {"dr", hs_norm(dec.dr)}};
    j["dr_in_algebra_commutant"] =
        Json{{"holds", dr_in_commutant}, {"residual", dr_residual}};
    j["warnings"] = rep.warnings;
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
  } else {
    std::printf("triple: dim_h %d, %zu generators, grading %s\n", t.dim_h,
                t.algebra_generators.size(), t.gamma ? "present" : "absent");
    std::printf("algebra: dim %d, blocks %s\n", alg.dim(), block_table(*alg.structure).c_str());
    std::printf("algebra commutant: dim %d\n", aprime.dim());
    std::printf("one-forms: dim %d\n", om.dim());
    std::printf("clifford: dim %d, blocks %s\n", cl.dim(), block_table(*cl.structure).c_str());
    std::printf("clifford commutant: dim %d, circled clifford: dim %d\n", hd.commutant_dim,
                hd.circle_dim);
    if (first.holds)
      std::printf("first order: true\n");
    else
      std::printf("first order: false (violated: %s)\n", first.witness.c_str());
    std::printf("second order: %s (residual %.3e, threshold %.3e)\n", true_false(second.holds),
                second.residual, second.threshold);
    std::printf("hodge: %s (circled copy inside commutant: %s, projector distance %.3e)\n",
                true_false(hd.holds), yes_no(hd.circle_in_commutant), hd.projector_distance);
    std::printf("decomposition norms: |d0| %.6g, |d1| %.6g, |d2| %.3e, |dr| %.6g\n",
                hs_norm(dec.d0), hs_norm(dec.d1), hs_norm(dec.d2), hs_norm(dec.dr));
    std::printf("d_r in algebra commutant: %s (residual %.3e)\n", yes_no(dr_in_commutant),
                dr_residual);
    for (const auto& w : rep.warnings) std::printf("warning: %s\n", w.c_str());
  }
  return kOk;
}

int do_sm_build(const std::string& params_path, const std::string& out_path,
                const Tolerance& tol) {
  const SMDiracParams p = load_sm_params(params_path);
  const SMTriple t = sm_build(p, tol);
  emit(write_triple(t.triple), out_path);
  if (!out_path.empty())
    std::printf("wrote triple (dim_h %d, %d generation%s) to %s\n", t.triple.dim_h,
                p.generations, p.generations == 1 ? "" : "s", out_path.c_str());
  return kOk;
}

int do_sm_cc(double yn, double ye, double yu, double yd, double yr,
             const std::string& out_path) {
  emit(write_sm_params(cc_params(yn, ye, yu, yd, yr)), out_path);
  if (!out_path.empty()) std::printf("wrote parameters to %s\n", out_path.c_str());
  return kOk;
}

int do_sm_classify(const std::string& params_path, const Tolerance& tol, bool json) {
  const SMDiracParams p = load_sm_params(params_path);
  const std::set<int> cases = classify_cases(p, tol);
  const bool second_closed = second_order_closed(p, tol);
  const std::optional<bool> hodge_cf = hodge_closed(p, tol);

  const SMTriple t = sm_build(p, tol);
  const ValidationReport rep = validate(t.triple, tol);
  const SecondOrderVerdict second_engine = second_order(t.triple, tol);
  // The full Hodge computation scales poorly with generations; the closed
  // form it would cross-check only exists for one generation anyway.
  std::optional<HodgeDiagnostics> hodge_engine;
  if (p.generations == 1) hodge_engine = hodge(t.triple, tol);

  bool agree = second_closed == second_engine.holds;
  if (hodge_cf && hodge_engine) agree = agree && *hodge_cf == hodge_engine->holds;

  if (json) {
    Json j;
    j["schema_version"] = "1";
    j["command"] = "sm classify";
    j["file"] = params_path;
    j["tolerance"] = tolerance_json(tol);
    j["generations"] = p.generations;
    j["cases"] = cases;
    j["second_order_closed"] = second_closed;
    j["second_order_engine"] = Json{{"holds", second_engine.holds},
                                    {"residual", second_engine.residual},
                                    {"threshold", second_engine.threshold}};
    j["hodge_closed"] = hodge_cf ? Json(*hodge_cf) : Json(nullptr);
    j["hodge_engine"] = hodge_engine
                            ? Json{{"holds", hodge_engine->holds},
                                   {"clifford_dim", hodge_engine->clifford_dim},
                                   {"commutant_dim", hodge_engine->commutant_dim},
                                   {"circle_dim", hodge_engine->circle_dim}}
                            : Json(nullptr);
    j["agreement"] = agree;
    j["warnings"] = rep.warnings;
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
  } else {
    std::string case_set;
    for (int c : cases) case_set += (case_set.empty() ? "" : ", ") + std::to_string(c);
    std::printf("cases: %s\n", cases.empty() ? "none" : ("{" + case_set + "}").c_str());
    std::printf("second order (closed form): %s\n", true_false(second_closed));
    std::printf("second order (engine):      %s (residual %.3e, threshold %.3e)\n",
                true_false(second_engine.holds), second_engine.residual, second_engine.threshold);
    if (hodge_cf)
      std::printf("hodge (closed form): %s\n", true_false(*hodge_cf));
    else
      std::printf("hodge (closed form): no closed form %s\n",
                  p.generations > 1 ? "(generations > 1)" : "(no case pattern applies)");
    if (hodge_engine)
      std::printf("hodge (engine):      %s (clifford %d, commutant %d, circled %d)\n",
                  true_false(hodge_engine->holds), hodge_engine->clifford_dim,
                  hodge_engine->commutant_dim, hodge_engine->circle_dim);
    else
      std::printf("hodge (engine):      skipped for generations > 1; run analyze on the built triple\n");
    std::printf("%s\n", agree ? "closed forms agree with the engine"
                              : "DISAGREEMENT between closed forms and the engine");
    for (const auto& w : rep.warnings) std::printf("warning: %s\n", w.c_str());
  }
  return agree ? kOk : kSemantic;
}

int do_scan(const std::string& case_flag, int samples, std::uint64_t seed,
            double degenerate_fraction, const Tolerance& tol, bool json,
            const std::string& out_path) {
  ScanOptions opts;
  opts.which_case = case_flag == "all" ? 0 : case_flag[0] - '0';
  opts.samples = samples;
  opts.seed = seed;
  opts.degenerate_fraction = degenerate_fraction;
  opts.tol = tol;
  const ScanOutcome outcome = run_scan(opts);
  const std::string report = scan_report_json(outcome);
  if (!out_path.empty()) save_text(out_path, report);
  if (json) {
    std::fputs(report.c_str(), stdout);
  } else {
    std::printf("case %s: %d samples, seed %llu, degenerate fraction %g\n", case_flag.c_str(),
                samples, static_cast<unsigned long long>(seed), degenerate_fraction);
    std::printf("agreements %d / %d\n", outcome.agreements, samples);
    for (const auto& d : outcome.disagreements)
      std::printf("  sample %d (case %d): engine=%s closed_form=%s (commutant %d, clifford %d)\n",
                  d.sample, d.which_case, true_false(d.engine_verdict),
                  true_false(d.closed_form_verdict), d.engine.commutant_dim,
                  d.engine.clifford_dim);
    if (!out_path.empty()) std::printf("report written to %s\n", out_path.c_str());
    std::printf("timing %.1f s\n", outcome.timing_seconds);
  }
  return outcome.disagreements.empty() ? kOk : kSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite real spectral triples: axiom checks, structure analysis, and "
      "Monte Carlo cross-validation of closed-form criteria"};
  app.require_subcommand(1);
  int exit_code = kOk;

  // check
  auto* check = app.add_subcommand("check", "Validate every axiom of a triple file");
  static std::string check_path;
  static ToleranceOptions check_tol;
  static bool check_json = false;
  check->add_option("file", check_path, "Triple document")->required();
  check_tol.attach(check);
  check->add_flag("--json", check_json, "Machine-readable report");
  check->callback([&] {
    exit_code = run_guarded([] { return do_check(check_path, check_tol.make(), check_json); });
  });

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Dimensions, block structures, order conditions, and the Hodge verdict");
  static std::string analyze_path;
  static ToleranceOptions analyze_tol;
  static bool analyze_json = false;
  analyze->add_option("file", analyze_path, "Triple document")->required();
  analyze_tol.attach(analyze);
  analyze->add_flag("--json", analyze_json, "Machine-readable report");
  analyze->callback([&] {
    exit_code =
        run_guarded([] { return do_analyze(analyze_path, analyze_tol.make(), analyze_json); });
  });

  // sm
  auto* sm = app.add_subcommand("sm", "Internal-space constructions");
  sm->require_subcommand(1);

  auto* build = sm->add_subcommand("build", "Build the triple from a parameter document");
  static std::string build_params, build_out;
  static ToleranceOptions build_tol;
  build->add_option("--params", build_params, "Parameter document")->required();
  build->add_option("--out", build_out, "Write the triple here instead of stdout");
  build_tol.attach(build);
  build->callback([&] {
    exit_code =
        run_guarded([] { return do_sm_build(build_params, build_out, build_tol.make()); });
  });

  auto* classify = sm->add_subcommand(
      "classify", "Case membership and closed-form verdicts with engine cross-checks");
  static std::string classify_params;
  static ToleranceOptions classify_tol;
  static bool classify_json = false;
  classify->add_option("--params", classify_params, "Parameter document")->required();
  classify_tol.attach(classify);
  classify->add_flag("--json", classify_json, "Machine-readable report");
  classify->callback([&] {
    exit_code = run_guarded(
        [] { return do_sm_classify(classify_params, classify_tol.make(), classify_json); });
  });

  auto* cc = sm->add_subcommand(
      "cc", "Generate the diagonal-Yukawa parameter document from coupling values");
  static double cc_yn = 0, cc_ye = 0, cc_yu = 0, cc_yd = 0, cc_yr = 0;
  static std::string cc_out;
  cc->add_option("--yn", cc_yn, "Neutrino coupling")->required();
  cc->add_option("--ye", cc_ye, "Electron coupling")->required();
  cc->add_option("--yu", cc_yu, "Up coupling")->required();
  cc->add_option("--yd", cc_yd, "Down coupling")->required();
  cc->add_option("--yr", cc_yr, "Majorana coupling (default 0)");
  cc->add_option("--out", cc_out, "Write the parameters here instead of stdout");
  cc->callback([&] {
    exit_code =
        run_guarded([] { return do_sm_cc(cc_yn, cc_ye, cc_yu, cc_yd, cc_yr, cc_out); });
  });

  // scan
  auto* scan = app.add_subcommand(
      "scan", "Sample case parameters and cross-validate engine against closed forms");
  static std::string scan_case = "all";
  static int scan_samples = 0;
  static std::uint64_t scan_seed = 0;
  static double scan_fraction = 0.25;
  static ToleranceOptions scan_tol;
  static bool scan_json = false;
  static std::string scan_out;
  scan->add_option("--case", scan_case, "Coupling case: 1, 2, 3, 4, or all")
      ->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
  scan->add_option("--samples", scan_samples, "Number of samples")
      ->required()
      ->check(CLI::Range(1, 100000000));
  scan->add_option("--seed", scan_seed, "Scan seed (per-sample streams split from it)");
  scan->add_option("--degenerate-fraction", scan_fraction,
                   "Probability of forcing a criterion-violating degeneracy")
      ->check(CLI::Range(0.0, 1.0));
  scan_tol.attach(scan);
  scan->add_flag("--json", scan_json, "Print the full report document");
  scan->add_option("--out", scan_out, "Also write the report document here");
  scan->callback([&] {
    exit_code = run_guarded([] {
      return do_scan(scan_case, scan_samples, scan_seed, scan_fraction, scan_tol.make(),
                     scan_json, scan_out);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kOperational;
  }
  return exit_code;
}
