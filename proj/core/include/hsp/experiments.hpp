#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hsp/group.hpp"
#include "hsp/qsim.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

// Probability facts about the family decision made from one batch of k
// coset-sampling rounds on Z_p x Z_p. All are exact in double precision for
// the parameter ranges this toolkit targets (p^(2k-1) < 2^53).

/// Probability that a single round is informative (c != 0) when the hidden
/// subgroup is two-generated: 1 - 1/p.
double informative_round_probability(std::uint64_t p);

/// Probability that a full batch on a two-generated subgroup yields no
/// informative round: p^-k. (With the single retry batch: p^-2k.)
double twogen_failure_probability(std::uint64_t p, std::uint32_t k);

/// Upper bound (2^k - 1) / p^(k-1) on the probability that a cyclic hidden
/// subgroup is misread as two-generated from one batch.
double cyclic_error_bound(std::uint64_t p, std::uint32_t k);

/// Exact single-batch probability of that misread:
/// ((2p-1)^k - p^k) / p^(2k-1).
double exact_cyclic_error(std::uint64_t p, std::uint32_t k);

/// Probability that a batch on a cyclic subgroup has no survivors: p^-k.
double all_zero_probability(std::uint64_t p, std::uint32_t k);

/// Exact misread probability including the single retry batch:
/// E * (1 + p^-k) with E = exact_cyclic_error.
double exact_cyclic_error_with_retry(std::uint64_t p, std::uint32_t k);

/// Guaranteed overall success probability of the family decision,
/// 1 - (2^k * p - p + 1) / p^k, valid for every hidden subgroup.
double success_bound(std::uint64_t p, std::uint32_t k);

/// Monte-Carlo harness configuration. Each trial rebuilds the oracle (with
/// labels scrambled under a per-trial key unless disabled) and runs the
/// solver with a per-trial seed; both derive from master_seed, so a report is
/// a pure function of (spec, hidden, config).
struct ExperimentConfig {
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
  SolveConfig solve;
  bool scramble_labels = true;
  /// Force the general (splitting) solver or the canonical-shape solver;
  /// unset picks the canonical solver exactly when the shape allows it.
  std::optional<bool> use_general;
  bool include_timing = false;  // carried into report_json
};

struct ExperimentReport {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t phi11 = 0;
  std::string hidden;  // descriptor text of the planted subgroup
  std::uint64_t trials = 0;
  std::uint64_t success = 0;
  std::uint64_t wrong_h = 0;        // two-generated answer with the wrong slope
  std::uint64_t wrong_family = 0;   // any other wrong answer
  std::uint64_t no_survivor_failures = 0;
  std::uint64_t rejected_candidates = 0;
  std::uint64_t other_solver_errors = 0;
  std::uint32_t rounds_per_batch = 0;
  std::uint64_t master_seed = 0;
  bool used_general_solver = false;
  double empirical_success = 0.0;
  double bound = 0.0;      // success_bound(p, rounds_per_batch)
  double wall_ms = 0.0;    // harness wall time; excluded from comparisons
};

/// Runs `config.trials` independent solve attempts against a planted hidden
/// subgroup and tallies the outcome taxonomy.
ExperimentReport estimate_success(const GroupSpec& spec,
                                  const SubgroupDesc& hidden,
                                  const ExperimentConfig& config);

/// JSON rendering of a report. Timing is emitted only when include_timing is
/// set, so default output is bit-stable across machines for a fixed seed.
std::string report_json(const ExperimentReport& report, bool include_timing,
                        bool pretty = false);

}  // namespace hsp
