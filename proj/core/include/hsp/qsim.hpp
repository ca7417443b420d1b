#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hsp/group.hpp"
#include "hsp/oracle.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

/// Dense state vector over a computational basis indexed 0..dim-1.
struct QState {
  std::vector<std::complex<double>> amps;

  std::uint64_t dim() const { return amps.size(); }
  double norm() const;
  /// |amp|^2 for each index, normalized to sum to 1.
  std::vector<double> probabilities() const;
};

/// Fourier transform on Z_d (d = state.dim()): index l maps to
/// (1/sqrt(d)) * sum_k exp(+2*pi*i*k*l/d) |k>. Zero input amplitudes are
/// skipped, so the cost is O(d * support).
QState apply_qft(const QState& state);

/// Fourier transform applied to each register of a two-register state over
/// Z_rows x Z_cols, stored row-major (index = a * cols + b).
QState apply_qft_2d(const QState& state, std::uint64_t rows, std::uint64_t cols);

/// Samples an index from the state's measurement distribution by exact
/// cumulative-sum inversion of one uniform draw.
std::uint64_t sample_index(const QState& state, std::mt19937_64& rng);

/**
 * Query support for one coset-sampling round at level (t, s), s >= 1, on a
 * canonically shaped group: the p*p elements x^(a * 2^t * p^(s-1)) y^b for
 * (a, b) in Z_p x Z_p, stored row-major in (a, b).
 */
std::vector<Element> solver_grid(const GroupSpec& spec, std::uint32_t t,
                                 std::uint32_t s);

/// Partition of indices 0..labels.size()-1 into classes of equal label, in
/// first-occurrence order. Solvers group by this so their behaviour is
/// invariant under any relabeling of oracle values.
std::vector<std::vector<std::uint64_t>> group_by_label(
    std::span<const std::uint64_t> labels);

/// Outcome of one coset-sampling round: the Fourier sample (c, d) over
/// Z_p x Z_p, and the slope -d/c mod p when c != 0 (absent for c = 0).
struct RoundOutcome {
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  std::optional<std::uint64_t> h;
};

/**
 * One round: prepare the uniform superposition over solver_grid(t, s), query
 * the oracle once (quantumly), measure the label register, Fourier transform
 * both index registers and measure them.
 */
RoundOutcome run_round(const HidingOracle& oracle, std::uint32_t t,
                       std::uint32_t s, std::mt19937_64& rng);

/// Exact sampling distribution of run_round's (c, d), indexed c * p + d.
/// Consumes one quantum query to read the grid's labels.
std::vector<double> round_distribution(const HidingOracle& oracle,
                                       std::uint32_t t, std::uint32_t s);

/// Family decision from a batch of rounds: every surviving round (c != 0)
/// pins the same slope h -> two-generator subgroup; two distinct slopes ->
/// cyclic; no survivors -> indeterminate, caller retries once.
enum class FamilyDecision { two_gen, cyclic, no_survivors };

struct Decision {
  FamilyDecision family = FamilyDecision::no_survivors;
  std::optional<std::uint64_t> h;
};

Decision decide_family(std::span<const RoundOutcome> rounds);

/**
 * Fourier-sampling solver for a hidden subgroup of Z_m presented through
 * `embed`: assumes label(embed(u)) is constant exactly on the cosets of
 * <D> for some divisor D of m, and returns D. Draws ceil(log2 m) + extra
 * rounds, each one quantum query, then spends two classical queries checking
 * the candidate; throws solver_error if the check rejects it.
 */
std::uint64_t abelian_hsp_cyclic(
    const HidingOracle& oracle, std::uint64_t m,
    const std::function<Element(std::uint64_t)>& embed, std::mt19937_64& rng,
    std::uint32_t extra_rounds = 8);

struct SolveConfig {
  std::uint32_t rounds_per_batch = 8;   // coset-sampling rounds per batch
  std::uint32_t abelian_extra_rounds = 8;
  bool verify = false;  // check the answer against the full table afterwards
};

struct SolveResult {
  SubgroupDesc hidden = CyclicXDesc{0, 0};
  std::uint64_t abelian_stride = 1;  // generator index of H intersect <x>
  std::uint32_t t = 0;
  std::uint32_t s = 0;
  std::vector<RoundOutcome> rounds;  // empty when s = 0
  std::uint32_t batches = 0;         // coset-sampling batches used (0, 1 or 2)
  QueryCount queries;                // oracle traffic attributable to this call
};

/**
 * Full solver for a canonically shaped group (N = 2^t0 * p^r): finds the
 * hidden subgroup of `oracle` with one abelian stage along <x> followed, when
 * needed, by batches of coset-sampling rounds and the family decision.
 * Deterministic in (oracle table, seed). Throws solver_error when both
 * batches produce no survivors or a verification query fails.
 */
SolveResult solve_2pr(const HidingOracle& oracle, std::uint64_t seed,
                      const SolveConfig& config = {});

struct GeneralSolveConfig {
  SolveConfig inner;
  bool verify = false;
};

struct GeneralSolveResult {
  std::vector<Element> generators;  // of the hidden subgroup, identity omitted
  SubgroupDesc hidden = CyclicXDesc{0, 0};  // canonicalized closure
  std::uint64_t coprime_stride = 1;  // stage-A divisor of the p-free part
  std::optional<SolveResult> inner;  // present when the twisted part ran
  QueryCount queries;
};

/**
 * Solver for any valid group satisfying the splitting hypothesis (no prime
 * q | N with p | q - 1): splits off the p-free part of N, solves it with the
 * abelian stage, solves the p-power part with solve_2pr (or a second abelian
 * stage when p does not divide N), and assembles the answer through the
 * splitting isomorphism.
 */
GeneralSolveResult solve_general(const HidingOracle& oracle, std::uint64_t seed,
                                 const GeneralSolveConfig& config = {});

}  // namespace hsp
