#include "hsp/cli.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsp/decomposition.hpp"
#include "hsp/errors.hpp"
#include "hsp/experiments.hpp"
#include "hsp/group.hpp"
#include "hsp/oracle.hpp"
#include "hsp/qsim.hpp"
#include "hsp/rng.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

namespace {

using nlohmann::json;

json group_json(const GroupSpec& spec) {
  json j{{"n", spec.n()}, {"p", spec.p()}, {"phi11", spec.phi11()}};
  if (const auto& shape = spec.canonical_shape()) {
    j["t0"] = shape->t0;
    j["r"] = shape->r;
  }
  return j;
}

json queries_json(const QueryCount& q) {
  return json{{"quantum", q.quantum},
              {"classical", q.classical},
              {"total", q.total()}};
}

void emit(const json& j, bool pretty) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

void emit_error(const char* kind, const std::string& message, bool pretty) {
  emit(json{{"error", {{"type", kind}, {"message", message}}}}, pretty);
  std::cerr << "error: " << message << "\n";
}

struct GroupFlags {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t phi11 = 0;

  void attach(CLI::App& cmd) {
    cmd.add_option("--N", n, "cyclic-part modulus N")->required();
    cmd.add_option("--p", p, "top modulus p (odd prime)")->required();
    cmd.add_option("--phi11", phi11, "twist residue in [1, N)")->required();
  }

  GroupSpec spec() const { return validate_spec(n, p, phi11); }
};

struct EnumerateCmd {
  std::uint64_t p = 0;
  std::uint32_t r = 0;
  std::uint32_t t0 = 0;

  int run(bool pretty) const {
    const GroupSpec spec = make_canonical_spec(t0, p, r);
    const std::vector<SubgroupDesc> subgroups = enumerate_subgroups(spec);
    json list = json::array();
    for (const SubgroupDesc& desc : subgroups) {
      const std::uint64_t order = subgroup_order(desc, spec);
      list.push_back(json{{"desc", to_string(desc)},
                          {"order", order},
                          {"index", spec.order() / order}});
    }
    emit(json{{"group", group_json(spec)},
              {"count", subgroups.size()},
              {"subgroups", std::move(list)}},
         pretty);
    return 0;
  }
};

struct SolveCmd {
  GroupFlags group;
  std::string hidden_text;
  std::uint32_t k = 8;
  std::uint64_t seed = 0;
  bool scramble = false;
  bool verify = false;
  bool force_general = false;

  int run(bool pretty) const {
    const GroupSpec spec = group.spec();
    const SubgroupDesc hidden = parse_subgroup(hidden_text, spec);
    const HidingOracle oracle =
        scramble ? HidingOracle::scrambled(spec, hidden,
                                           derive_seed(seed, 0xF00D))
                 : HidingOracle::canonical(spec, hidden);

    const bool general = force_general || !spec.canonical_shape().has_value();
    json j{{"group", group_json(spec)},
           {"hidden", to_string(canonicalize(hidden, spec))},
           {"seed", seed},
           {"k", k},
           {"scrambled_labels", scramble},
           {"solver", general ? "general" : "canonical"}};

    if (general) {
      GeneralSolveConfig config;
      config.inner.rounds_per_batch = k;
      config.verify = verify;
      const GeneralSolveResult result = solve_general(oracle, seed, config);
      json gens = json::array();
      for (const Element& g : result.generators) {
        gens.push_back(to_tuple_string(g));
      }
      j["answer"] = to_string(result.hidden);
      j["correct"] = same_subgroup(result.hidden, hidden, spec);
      j["generators"] = std::move(gens);
      j["coprime_stride"] = result.coprime_stride;
      if (result.inner) {
        j["inner"] = json{{"answer", to_string(result.inner->hidden)},
                          {"t", result.inner->t},
                          {"s", result.inner->s},
                          {"batches", result.inner->batches}};
      }
      j["queries"] = queries_json(result.queries);
    } else {
      SolveConfig config;
      config.rounds_per_batch = k;
      config.verify = verify;
      const SolveResult result = solve_2pr(oracle, seed, config);
      j["answer"] = to_string(result.hidden);
      j["correct"] = same_subgroup(result.hidden, hidden, spec);
      j["abelian_stride"] = result.abelian_stride;
      j["t"] = result.t;
      j["s"] = result.s;
      j["batches"] = result.batches;
      j["queries"] = queries_json(result.queries);
    }
    if (verify) j["verified"] = true;  // a failed check throws instead
    emit(j, pretty);
    return 0;
  }
};

struct EstimateCmd {
  GroupFlags group;
  std::string hidden_text;
  std::uint64_t trials = 1000;
  std::uint32_t k = 8;
  std::uint64_t seed = 0;
  bool canonical_labels = false;
  bool force_general = false;
  bool timing = false;

  int run(bool pretty) const {
    const GroupSpec spec = group.spec();
    const SubgroupDesc hidden = parse_subgroup(hidden_text, spec);
    ExperimentConfig config;
    config.trials = trials;
    config.master_seed = seed;
    config.solve.rounds_per_batch = k;
    config.scramble_labels = !canonical_labels;
    if (force_general) config.use_general = true;
    config.include_timing = timing;
    const ExperimentReport report = estimate_success(spec, hidden, config);
    std::cout << report_json(report, timing, pretty) << "\n";
    return 0;
  }
};

struct DecomposeCmd {
  GroupFlags group;

  int run(bool pretty) const {
    const GroupSpec spec = group.spec();
    json j{{"group", group_json(spec)}};
    json factors = json::array();
    for (const PrimePower& pp : factorize(spec.n()).factors) {
      factors.push_back(json{{"prime", pp.prime}, {"exponent", pp.exponent}});
    }
    j["factorization"] = std::move(factors);
    const bool ok = check_hypothesis(spec.n(), spec.p());
    j["hypothesis_holds"] = ok;
    if (!ok) {
      j["note"] = "some prime q | N has p | q - 1; no splitting";
      emit(j, pretty);
      return 0;
    }
    const FactorLocation loc = locate_k(spec.n(), spec.p());
    j["r_k"] = loc.r_k;
    if (loc.r_k == 0) {
      j["m0"] = spec.n();
      j["p_power"] = 1;
      j["inner"] = nullptr;
      j["note"] = "p does not divide N; the group is the direct product "
                  "Z_N x Z_p";
    } else {
      const DecomposedSpec dec = decompose(spec);
      j["m0"] = dec.coprime_modulus;
      j["p_power"] = dec.p_power;
      j["k_index"] = dec.k_index;
      j["inner"] = group_json(dec.inner);
    }
    emit(j, pretty);
    return 0;
  }
};

struct DistributionCmd {
  std::uint64_t p = 0;
  std::uint32_t r = 0;
  std::uint32_t t = 0;
  std::uint32_t s = 0;
  std::optional<std::uint32_t> t0;
  std::string hidden_text;

  int run(bool pretty) const {
    const GroupSpec spec = make_canonical_spec(t0.value_or(t), p, r);
    const SubgroupDesc hidden = parse_subgroup(hidden_text, spec);
    const HidingOracle oracle = HidingOracle::canonical(spec, hidden);
    const std::vector<double> dist = round_distribution(oracle, t, s);
    json matrix = json::array();
    for (std::uint64_t c = 0; c < p; ++c) {
      json row = json::array();
      for (std::uint64_t d = 0; d < p; ++d) row.push_back(dist[c * p + d]);
      matrix.push_back(std::move(row));
    }
    emit(json{{"group", group_json(spec)},
              {"hidden", to_string(hidden)},
              {"level", {{"t", t}, {"s", s}}},
              {"matrix", std::move(matrix)}},
         pretty);
    return 0;
  }
};

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Exact toolkit for hidden subgroups of Z_N x| Z_p"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent JSON output");

  EnumerateCmd enumerate;
  CLI::App* enum_cmd = app.add_subcommand(
      "enumerate-subgroups", "list every subgroup of Z_{2^t0 p^r} x| Z_p");
  enum_cmd->add_option("--p", enumerate.p, "odd prime p")->required();
  enum_cmd->add_option("--r", enumerate.r, "exponent of p in N")->required();
  enum_cmd->add_option("--t0", enumerate.t0, "exponent of 2 in N (0 or 1)")
      ->required();

  SolveCmd solve;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve-hsp", "run the solver against a planted hidden subgroup");
  solve.group.attach(*solve_cmd);
  solve_cmd->add_option("--hidden", solve.hidden_text,
                        "hidden subgroup, e.g. T(0,1,1) or C(1,2) or Y(0)")
      ->required();
  solve_cmd->add_option("--k", solve.k, "coset-sampling rounds per batch");
  solve_cmd->add_option("--seed", solve.seed, "master seed")
      ->envname("HSP_SEED");
  solve_cmd->add_flag("--scramble", solve.scramble,
                      "permute oracle labels with a key derived from --seed");
  solve_cmd->add_flag("--verify", solve.verify,
                      "check the answer against the full oracle table");
  solve_cmd->add_flag("--general", solve.force_general,
                      "use the splitting solver even on 2^t0 p^r groups");

  EstimateCmd estimate;
  CLI::App* estimate_cmd = app.add_subcommand(
      "estimate-success", "Monte-Carlo success estimate for a planted subgroup");
  estimate.group.attach(*estimate_cmd);
  estimate_cmd->add_option("--hidden", estimate.hidden_text,
                           "hidden subgroup descriptor")
      ->required();
  estimate_cmd->add_option("--trials", estimate.trials, "number of trials")
      ->required();
  estimate_cmd->add_option("--k", estimate.k,
                           "coset-sampling rounds per batch");
  estimate_cmd->add_option("--seed", estimate.seed, "master seed")
      ->envname("HSP_SEED");
  estimate_cmd->add_flag("--canonical-labels", estimate.canonical_labels,
                         "disable per-trial label scrambling");
  estimate_cmd->add_flag("--general", estimate.force_general,
                         "force the splitting solver");
  estimate_cmd->add_flag("--timing", estimate.timing,
                         "include wall-clock time in the report");

  DecomposeCmd decompose_flags;
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "split N and derive the inner twisted factor");
  decompose_flags.group.attach(*decompose_cmd);

  DistributionCmd distribution;
  CLI::App* dist_cmd = app.add_subcommand(
      "distribution", "exact Fourier-sample distribution of one round");
  dist_cmd->add_option("--p", distribution.p, "odd prime p")->required();
  dist_cmd->add_option("--r", distribution.r, "exponent of p in N")->required();
  dist_cmd->add_option("--t", distribution.t, "level: exponent of 2")
      ->required();
  dist_cmd->add_option("--s", distribution.s, "level: exponent of p")
      ->required();
  dist_cmd
      ->add_option("--t0", distribution.t0,
                   "exponent of 2 in N (defaults to --t)")
      ->check(CLI::Range(0u, 1u));
  dist_cmd->add_option("--hidden", distribution.hidden_text,
                       "hidden subgroup descriptor")
      ->required();

  for (CLI::App* sub : {enum_cmd, solve_cmd, estimate_cmd, decompose_cmd,
                        dist_cmd}) {
    sub->fallthrough();  // lets --pretty appear after the subcommand
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    app.exit(help);
    return 0;
  } catch (const CLI::ParseError& err) {
    app.exit(err);  // prints the usage message
    return 64;
  }

  try {
    if (app.got_subcommand(enum_cmd)) return enumerate.run(pretty);
    if (app.got_subcommand(solve_cmd)) return solve.run(pretty);
    if (app.got_subcommand(estimate_cmd)) return estimate.run(pretty);
    if (app.got_subcommand(decompose_cmd)) return decompose_flags.run(pretty);
    if (app.got_subcommand(dist_cmd)) return distribution.run(pretty);
  } catch (const theory_violation& err) {
    emit_error("internal", err.what(), pretty);
    return 2;
  } catch (const solver_error& err) {
    emit_error("solver", err.what(), pretty);
    return 1;
  } catch (const domain_error& err) {
    emit_error("domain", err.what(), pretty);
    return 1;
  } catch (const std::exception& err) {
    emit_error("domain", err.what(), pretty);
    return 1;
  }
  return 0;
}

}  // namespace hsp
