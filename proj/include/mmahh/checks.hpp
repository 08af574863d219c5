#pragma once

// Named validation checks: every closed form is cross-checked against an
// independent route (exact linear-solve oracle, hand-derived fixture, or
// Monte Carlo with explicit error bands). The CLI groups them into suites;
// the acceptance harness composes its criteria from the same checks.

#include <cstdint>
#include <string>
#include <vector>

namespace mmahh {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // observed vs expected plus the tolerance used
};

// --- closed forms vs exact oracles -----------------------------------------
CheckResult check_pkh_vs_phase_oracle();   // n in {5,10,20}, three rates, all (k,h)
CheckResult check_pkh_recurrence();        // one-step recurrence fixture, random tuples
CheckResult check_pkh_gamma_form();        // product form == Gamma-ratio form
CheckResult check_pkh_ow_mirror();         // OW phase outcome vs mirrored expression
CheckResult check_drift_exact_grid();      // drift formulas vs phase-kernel solves, n <= 50
CheckResult check_drift_mc_spots();        // ten Monte Carlo spot configurations
CheckResult check_minimality();            // p_k^h >= p_n^0 and monotonicity, n <= 50
CheckResult check_limit_sequence();        // deviation from exp(-1) shrinks like 1/ln n

// --- selector and engine statistics ----------------------------------------
CheckResult check_phase_geometric();       // phase-length mean vs 1/rate
CheckResult check_stationary_fraction();   // partner occupation vs p/(p+q)
CheckResult check_independence();          // corr(phase length, start layer) ~ 0
CheckResult check_mean_phases_to_optimum();// mean full-slope phases <= 1/p0n + band

// --- bounds -----------------------------------------------------------------
CheckResult check_am_success_bound();      // Monte Carlo event probability >= bound
CheckResult check_bound_shapes();          // frozen values, scaling ratios, gap drift

// Suite names: pkh, drifts, phases, minimality, limit, bounds.
std::vector<std::string> validate_suite_names();
std::vector<CheckResult> validate_suite(const std::string& suite);

}  // namespace mmahh
