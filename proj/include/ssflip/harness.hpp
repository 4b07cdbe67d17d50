#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssflip/code.hpp"
#include "ssflip/decoder.hpp"
#include "ssflip/graph.hpp"

namespace ssflip {
namespace harness {

using nlohmann::json;

// How (gamma, delta) are established before trials: deltas are inputs,
// gammas are measured by exhaustive subset enumeration up to subset_cap
// unless the caller asserts them (then flagged "assumed" in reports).
struct ExpansionSettings {
  double delta_a = 0.15;
  double delta_b = 0.15;
  uint32_t subset_cap = 2;
  bool exhaustive = true;
  uint32_t samples = 200;
  std::optional<double> assume_gamma_a;
  std::optional<double> assume_gamma_b;
};

enum class ErrorModel { RandomSupport, ExhaustiveUpToWeight };
enum class TrialSide { X, Z, Both };

struct TrialConfig {
  ErrorModel model = ErrorModel::RandomSupport;
  uint32_t weight_min = 1;
  uint32_t weight_max = 1;
  uint32_t trials_per_weight = 100;  // ignored by the exhaustive model
  uint64_t master_seed = 1;
  TrialSide side = TrialSide::Both;
  ExpansionSettings expansion;
  uint32_t threads = 1;
};

struct TrialRecord {
  uint64_t trial = 0;
  uint32_t weight = 0;
  uint64_t support_hash = 0;
  bool success = false;
  bool correctly_decoded = false;
  uint32_t iterations = 0;
  uint64_t sum_flip_sizes = 0;
  uint32_t syndrome_weight = 0;
  double wall_ms = 0;
};

struct SimulationResult {
  std::vector<TrialRecord> records;  // sorted by trial id
  json summary;
};

// Runs the configured trials (parallel across threads, deterministic
// per-trial seeding, records merged by trial id). k = 0 codes run
// syndrome-zeroing trials only and the summary is flagged accordingly.
SimulationResult run_simulation(const CssCode& code, const TrialConfig& config);

json record_to_json(const TrialRecord& r);
std::string record_to_csv(const TrialRecord& r);
std::string csv_header();

// Guaranteed correctable weight min(gamma_a n_a, gamma_b n_b) / (3(1+delta_b)).
double guaranteed_weight(double gamma_a, uint32_t n_a, double gamma_b, uint32_t n_b,
                         uint32_t delta_b);

// --- verify ----------------------------------------------------------------

struct CheckResult {
  std::string name;
  enum class Status { Pass, Fail, Skipped, NotApplicable } status;
  std::string detail;
};

struct VerifyOptions {
  ExpansionSettings expansion;
  uint64_t seed = 1;
  uint32_t samples = 200;           // sampled trials per randomized check
  uint32_t distance_kernel_cap = 24;  // kernel-dimension budget for distances
};

std::vector<CheckResult> run_verify(const BipartiteGraph& g, const VerifyOptions& options);
json verify_report_json(const std::vector<CheckResult>& checks);
// 0 all pass, 1 any failure, 3 no failure but infeasible skips.
int verify_exit_code(const std::vector<CheckResult>& checks);

// --- bench -------------------------------------------------------------------

struct BenchConfig {
  std::vector<uint32_t> sizes_n_a;  // n_b = 3/4 n_a by default degrees
  uint32_t delta_a = 3;
  uint32_t delta_b = 4;
  uint32_t fixed_weight = 3;
  bool sqrt_weight = true;  // also run weight ~ sqrt(n)
  uint32_t trials = 50;
  uint64_t seed = 1;
};

json run_bench(const BenchConfig& config);

}  // namespace harness
}  // namespace ssflip
