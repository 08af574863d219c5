#pragma once

// Config-driven experiment sweeps: a JSON spec expands into (family-param, n)
// cells; each cell simulates `trials` independent runs and is summarized as
// one CSV row. Cell seeds are base_seed + cell_index and trials use streams
// (cell_seed, trial_index), so any row can be reproduced exactly by feeding
// its parameters and recorded seed back as a single-cell config.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mmahh {

enum class Family : std::uint8_t { onemax, jump, cliff, trap, seqopt };
enum class AlgoChoice : std::uint8_t { mmahh_oi_ow, mmahh_oi_am, mahh };

struct ParamRule {
  enum class Kind : std::uint8_t {
    pair_explicit,    // p, q as given
    quasilinear,      // p = q = 1/(n ln n)
    case1,            // q = 1/2,     p = m q / (2 n)
    case2,            // q = 1/(d m), p = m q / (c n)
    mixing_explicit,  // mahh: mixing as given
    mixing_over_cn,   // mahh: mixing = 1/(c n)
  };
  Kind kind = Kind::pair_explicit;
  double p = 0, q = 0;   // pair_explicit
  double mixing = 0;     // mixing_explicit
  double c = 2, d = 1;   // preset constants
};

struct SweepSpec {
  Family family = Family::onemax;
  std::vector<std::uint32_t> ns;
  std::vector<std::uint32_t> family_params;                 // m (jump) / d (cliff)
  std::vector<std::vector<std::uint32_t>> optima_vectors;   // seqopt interior optima
  AlgoChoice algo = AlgoChoice::mmahh_oi_ow;
  ParamRule rule;
  std::uint64_t trials = 100;
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t seed = 1;
  bool uniform_start = true;
  std::uint32_t start_layer = 0;
  std::string out;  // CSV destination; empty = stdout
};

// Parses and fully validates a config document (strict keys, typed fields,
// family/algorithm/rule consistency). Throws std::invalid_argument.
SweepSpec sweep_from_json(const std::string& text);

// Human-readable config schema for --print-schema.
std::string sweep_schema();

struct CellResult {
  std::string family;
  std::uint32_t n = 0;
  std::string param_label;  // "m=3", "d=4", "opt=5;2" or "-"
  std::string algo;
  double p = 0;             // mixing probability for mahh rows
  double q = 0;             // NaN for mahh rows
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double mean_t = 0, sd_t = 0, ci95_lo = 0, ci95_hi = 0;  // over successful runs
  std::uint64_t seed = 0;   // cell seed: reproduces the cell as a base seed
};

// Runs all cells in enumeration order (family params outer, sizes inner).
// Invalid cells are skipped with one explanatory line on skip_log.
std::vector<CellResult> run_sweep(const SweepSpec& spec, unsigned parallel,
                                  std::ostream* skip_log);

// Deterministic CSV: fixed header, '.' decimals, LF endings, shortest
// round-trip doubles ("nan" where undefined), rows in cell order.
std::string csv_text(std::span<const CellResult> cells);
std::vector<CellResult> cells_from_csv(const std::string& text);

// Shortest round-trip decimal rendering (std::to_chars), shared by the CSV
// writer and the JSON-ish CLI reports.
std::string format_double(double v);

const char* family_name(Family f);
const char* algo_name(AlgoChoice a);

}  // namespace mmahh
