#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fintriple/fastpath.hpp"
#include "fintriple/standard_model.hpp"

namespace fintriple {

struct ScanOptions {
  int which_case = 1;  // 1..4, or 0 to cycle through all four cases
  int samples = 0;
  std::uint64_t seed = 0;
  double degenerate_fraction = 0.25;
  Tolerance tol;
};

struct ScanDisagreement {
  int sample = 0;
  int which_case = 0;
  SMDiracParams params;
  bool engine_verdict = false;
  bool closed_form_verdict = false;
  SMHodgeVerdict engine;
};

struct ScanOutcome {
  ScanOptions options;
  int agreements = 0;
  std::vector<ScanDisagreement> disagreements;
  double timing_seconds = 0.0;
};

/// Deterministic draw of sample `index` of a case scan: unit-variance
/// Gaussian entries on the couplings the case pattern leaves free, and with
/// probability degenerate_fraction one forced criterion-violating degeneracy
/// (a zeroed coupling row or vector, or a unimodular row relation). The
/// stream is split from (seed, case, index) alone, so any sample regenerates
/// without replaying the run.
SMDiracParams draw_case_sample(int which_case, std::uint64_t seed, int index,
                               double degenerate_fraction);

/// Runs the engine Hodge verdict against the closed form on every sample.
/// Samples are independent and keyed by index; identical options give an
/// identical outcome up to timing_seconds.
ScanOutcome run_scan(const ScanOptions& opts);

/// Report document; byte-identical across runs except the timing field.
std::string scan_report_json(const ScanOutcome& outcome);

}  // namespace fintriple
