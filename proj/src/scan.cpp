#include "fintriple/scan.hpp"

#include <chrono>
#include <cmath>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

#include "fintriple/rng.hpp"
#include "fintriple/serialization.hpp"

namespace fintriple {
namespace {

// Couplings a case pattern leaves free; everything else stays zero. Each
// name resolves through SMDiracParams::entries().
const std::vector<const char*>& free_couplings(int which_case) {
  static const std::vector<const char*> case1 = {"a13", "a14", "a23", "a24",
                                                 "b13", "b14", "b23", "b24"};
  static const std::vector<const char*> case2 = {"a23", "a24", "b13", "b14",
                                                 "b23", "b24", "d21"};
  static const std::vector<const char*> case3 = {"a13", "a14", "a23", "a24", "b23", "b24",
                                                 "d12", "d13", "d14", "d22", "d23", "d24"};
  static const std::vector<const char*> case4 = {"a23", "a24", "b23", "b24",
                                                 "d21", "d22", "d23", "d24"};
  switch (which_case) {
    case 1: return case1;
    case 2: return case2;
    case 3: return case3;
    default: return case4;
  }
}

ComplexMatrix* entry(SMDiracParams& p, const char* name) {
  for (auto& [key, slot] : p.entries())
    if (std::string_view(key) == name) return slot;
  throw AlgebraError(std::string("draw_case_sample: unknown coupling ") + name);
}

void zero_entries(SMDiracParams& p, std::initializer_list<const char*> names) {
  for (const char* name : names) entry(p, name)->setZero();
}

Complex random_phase(GaussianSource& rng) {
  const Complex z(rng.normal(), rng.normal());
  return std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0);
}

// One forced violation of the case criterion. Mode draws stay inside the
// per-sample stream so the scheme is frozen by (seed, case, index).
void force_degeneracy(SMDiracParams& p, int which_case, GaussianSource& rng) {
  const auto pick = [&](int modes) {
    const int m = static_cast<int>(rng.uniform01() * modes);
    return m < modes ? m : modes - 1;
  };
  switch (which_case) {
    case 1:
      switch (pick(5)) {
        case 0: zero_entries(p, {"a13", "a14"}); break;
        case 1: zero_entries(p, {"a23", "a24"}); break;
        case 2: zero_entries(p, {"b13", "b14"}); break;
        case 3: zero_entries(p, {"b23", "b24"}); break;
        default: {
          // Both coupling rows unimodular multiples of their partners.
          const Complex u = random_phase(rng), v = random_phase(rng);
          p.a13 = u * p.b13;
          p.a14 = u * p.b14;
          p.a23 = v * p.b23;
          p.a24 = v * p.b24;
          break;
        }
      }
      break;
    case 2:
      switch (pick(4)) {
        case 0: zero_entries(p, {"d21"}); break;
        case 1: zero_entries(p, {"a23", "a24"}); break;
        case 2: zero_entries(p, {"b13", "b14"}); break;
        default: zero_entries(p, {"b23", "b24"}); break;
      }
      break;
    case 3: {
      // Either the required row, or two of the four vectors of the
      // at-least-three condition.
      const int mode = pick(7);
      if (mode == 0) {
        zero_entries(p, {"b23", "b24"});
        break;
      }
      static const std::initializer_list<const char*> vectors[] = {
          {"a13", "a14"}, {"a23", "a24"}, {"d12", "d13", "d14"}, {"d22", "d23", "d24"}};
      static const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      const auto [first, second] = pairs[mode - 1];
      zero_entries(p, vectors[first]);
      zero_entries(p, vectors[second]);
      break;
    }
    default:
      switch (pick(4)) {
        case 0: zero_entries(p, {"d21"}); break;
        case 1: zero_entries(p, {"a23", "a24"}); break;
        case 2: zero_entries(p, {"b23", "b24"}); break;
        default: zero_entries(p, {"d22", "d23", "d24"}); break;
      }
      break;
  }
}

std::string case_label(int which_case) {
  return which_case == 0 ? "all" : std::to_string(which_case);
}

}  // namespace

SMDiracParams draw_case_sample(int which_case, std::uint64_t seed, int index,
                               double degenerate_fraction) {
  if (which_case < 1 || which_case > 4)
    throw DimensionError("draw_case_sample: case must be between 1 and 4");
  GaussianSource rng(mix_seed(seed, static_cast<std::uint64_t>(which_case),
                              static_cast<std::uint64_t>(index)));
  SMDiracParams p = SMDiracParams::zero(1);
  for (const char* name : free_couplings(which_case))
    (*entry(p, name))(0, 0) = Complex(rng.normal(), rng.normal());
  p.yr(0, 0) = Complex(rng.normal(), rng.normal());
  if (rng.uniform01() < degenerate_fraction) force_degeneracy(p, which_case, rng);
  return p;
}

ScanOutcome run_scan(const ScanOptions& opts) {
  if (opts.samples < 1) throw DimensionError("run_scan: samples must be at least 1");
  if (opts.which_case < 0 || opts.which_case > 4)
    throw DimensionError("run_scan: case must be 1..4 or 0 for all");
  if (!(opts.degenerate_fraction >= 0.0 && opts.degenerate_fraction <= 1.0))
    throw DimensionError("run_scan: degenerate fraction must lie in [0, 1]");

  const auto start = std::chrono::steady_clock::now();
  const MatrixSubspace aprime = sm_internal_commutant(1, opts.tol);

  ScanOutcome out;
  out.options = opts;
  for (int i = 0; i < opts.samples; ++i) {
    const int c = opts.which_case ? opts.which_case : i % 4 + 1;
    SMDiracParams p = draw_case_sample(c, opts.seed, i, opts.degenerate_fraction);
    const SMTriple t = sm_build(p, opts.tol);
    const SMHodgeVerdict engine = sm_hodge_fast(t, aprime, opts.tol);
    const bool closed = hodge_closed(p, opts.tol).value();
    if (engine.holds == closed)
      ++out.agreements;
    else
      out.disagreements.push_back({i, c, std::move(p), engine.holds, closed, engine});
  }
  out.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string scan_report_json(const ScanOutcome& outcome) {
  Json j;
  j["schema_version"] = "1";
  j["seed"] = outcome.options.seed;
  j["case"] = case_label(outcome.options.which_case);
  j["samples"] = outcome.options.samples;
  j["degenerate_fraction"] = outcome.options.degenerate_fraction;
  j["tolerance"] = Json{{"rel", outcome.options.tol.rel}, {"abs_floor", outcome.options.tol.abs_floor}};
  j["agreements"] = outcome.agreements;
  Json disagreements = Json::array();
  for (const auto& d : outcome.disagreements) {
    Json item;
    item["sample"] = d.sample;
    item["case"] = d.which_case;
    item["params"] = params_to_json(d.params);
    item["engine_verdict"] = d.engine_verdict;
    item["closed_form_verdict"] = d.closed_form_verdict;
    item["residuals"] = Json{{"commutant_dim", d.engine.commutant_dim},
                             {"clifford_dim", d.engine.clifford_dim},
                             {"opposite_residual", d.engine.opposite_residual}};
    disagreements.push_back(std::move(item));
  }
  j["disagreements"] = std::move(disagreements);
  j["timing_seconds"] = outcome.timing_seconds;
  return j.dump(2) + "\n";
}

}  // namespace fintriple
