#include "hsp/experiments.hpp"

#include <chrono>
#include <cmath>
#include <variant>

#include <json.hpp>

#include "hsp/errors.hpp"
#include "hsp/oracle.hpp"
#include "hsp/rng.hpp"

namespace hsp {

namespace {

void check_pk(std::uint64_t p, std::uint32_t k) {
  if (p < 3 || p % 2 == 0) {
    throw domain_error("probability bounds: p must be an odd prime size");
  }
  if (k < 1 || k > 32) {
    throw domain_error("probability bounds: k must be in [1, 32]");
  }
}

double dpow(std::uint64_t base, std::uint32_t exp) {
  return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

}  // namespace

// claim: single-round-success :: hsp::informative_round_probability
double informative_round_probability(std::uint64_t p) {
  check_pk(p, 1);
  return 1.0 - 1.0 / static_cast<double>(p);
}

// claim: twogen-failure-bound :: hsp::twogen_failure_probability
double twogen_failure_probability(std::uint64_t p, std::uint32_t k) {
  check_pk(p, k);
  return 1.0 / dpow(p, k);
}

// claim: cyclic-error-bound :: hsp::cyclic_error_bound
double cyclic_error_bound(std::uint64_t p, std::uint32_t k) {
  check_pk(p, k);
  return (dpow(2, k) - 1.0) / dpow(p, k - 1);
}

// claim: exact-cyclic-error :: hsp::exact_cyclic_error
double exact_cyclic_error(std::uint64_t p, std::uint32_t k) {
  check_pk(p, k);
  return (dpow(2 * p - 1, k) - dpow(p, k)) / dpow(p, 2 * k - 1);
}

double all_zero_probability(std::uint64_t p, std::uint32_t k) {
  check_pk(p, k);
  return 1.0 / dpow(p, k);
}

double exact_cyclic_error_with_retry(std::uint64_t p, std::uint32_t k) {
  return exact_cyclic_error(p, k) * (1.0 + all_zero_probability(p, k));
}

// claim: total-success-bound :: hsp::success_bound
double success_bound(std::uint64_t p, std::uint32_t k) {
  check_pk(p, k);
  return 1.0 - (dpow(2, k) * static_cast<double>(p) -
                static_cast<double>(p) + 1.0) /
                   dpow(p, k);
}

namespace {

enum class TrialOutcome {
  success,
  wrong_h,
  wrong_family,
  no_survivors,
  rejected,
  other_error,
};

TrialOutcome classify_answer(const SubgroupDesc& answer,
                             const SubgroupDesc& truth,
                             const GroupSpec& spec) {
  if (same_subgroup(answer, truth, spec)) return TrialOutcome::success;
  const SubgroupDesc a = canonicalize(answer, spec);
  const SubgroupDesc b = canonicalize(truth, spec);
  const auto* at = std::get_if<TwoGenDesc>(&a);
  const auto* bt = std::get_if<TwoGenDesc>(&b);
  if (at != nullptr && bt != nullptr && at->t == bt->t && at->s == bt->s) {
    return TrialOutcome::wrong_h;
  }
  return TrialOutcome::wrong_family;
}

}  // namespace

ExperimentReport estimate_success(const GroupSpec& spec,
                                  const SubgroupDesc& hidden,
                                  const ExperimentConfig& config) {
  if (config.trials == 0) {
    throw domain_error("estimate_success: trials must be positive");
  }
  validate_desc(hidden, spec);
  const bool use_general =
      config.use_general.value_or(!spec.canonical_shape().has_value());
  if (!use_general && !spec.canonical_shape()) {
    throw domain_error("estimate_success: canonical solver needs a "
                       "2^t0 * p^r group order");
  }

  ExperimentReport report;
  report.n = spec.n();
  report.p = spec.p();
  report.phi11 = spec.phi11();
  report.hidden = to_string(hidden);
  report.trials = config.trials;
  report.rounds_per_batch = config.solve.rounds_per_batch;
  report.master_seed = config.master_seed;
  report.used_general_solver = use_general;
  report.bound = success_bound(spec.p(), config.solve.rounds_per_batch);

  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t oracle_seed = derive_seed(config.master_seed, 2 * trial);
    const std::uint64_t solve_seed = derive_seed(config.master_seed, 2 * trial + 1);
    const HidingOracle oracle =
        config.scramble_labels
            ? HidingOracle::scrambled(spec, hidden, oracle_seed)
            : HidingOracle::canonical(spec, hidden);

    TrialOutcome outcome;
    try {
      if (use_general) {
        GeneralSolveConfig general{.inner = config.solve, .verify = false};
        const GeneralSolveResult result =
            solve_general(oracle, solve_seed, general);
        outcome = classify_answer(result.hidden, hidden, spec);
      } else {
        const SolveResult result = solve_2pr(oracle, solve_seed, config.solve);
        outcome = classify_answer(result.hidden, hidden, spec);
      }
    } catch (const solver_error& err) {
      switch (err.reason()) {
        case solver_error::Reason::no_survivors:
          outcome = TrialOutcome::no_survivors;
          break;
        case solver_error::Reason::rejected_candidate:
          outcome = TrialOutcome::rejected;
          break;
        default:
          outcome = TrialOutcome::other_error;
          break;
      }
    }

    switch (outcome) {
      case TrialOutcome::success: ++report.success; break;
      case TrialOutcome::wrong_h: ++report.wrong_h; break;
      case TrialOutcome::wrong_family: ++report.wrong_family; break;
      case TrialOutcome::no_survivors: ++report.no_survivor_failures; break;
      case TrialOutcome::rejected: ++report.rejected_candidates; break;
      case TrialOutcome::other_error: ++report.other_solver_errors; break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  report.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  report.empirical_success = static_cast<double>(report.success) /
                             static_cast<double>(report.trials);
  return report;
}

std::string report_json(const ExperimentReport& report, bool include_timing,
                        bool pretty) {
  nlohmann::json j{
      {"group", {{"n", report.n}, {"p", report.p}, {"phi11", report.phi11}}},
      {"hidden", report.hidden},
      {"trials", report.trials},
      {"outcomes",
       {{"success", report.success},
        {"wrong_h", report.wrong_h},
        {"wrong_family", report.wrong_family},
        {"no_survivor_failures", report.no_survivor_failures},
        {"rejected_candidates", report.rejected_candidates},
        {"other_solver_errors", report.other_solver_errors}}},
      {"rounds_per_batch", report.rounds_per_batch},
      {"master_seed", report.master_seed},
      {"used_general_solver", report.used_general_solver},
      {"empirical_success", report.empirical_success},
      {"success_bound", report.bound},
  };
  if (include_timing) j["wall_ms"] = report.wall_ms;
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace hsp
