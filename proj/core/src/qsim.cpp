#include "hsp/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "hsp/decomposition.hpp"
#include "hsp/errors.hpp"
#include "hsp/modmath.hpp"
#include "hsp/rng.hpp"

namespace hsp {

namespace {

QueryCount operator-(const QueryCount& lhs, const QueryCount& rhs) {
  return {lhs.quantum - rhs.quantum, lhs.classical - rhs.classical};
}

std::uint32_t valuation(std::uint64_t& value, std::uint64_t base) {
  std::uint32_t count = 0;
  while (value % base == 0) {
    value /= base;
    ++count;
  }
  return count;
}

// Roots of unity exp(+2*pi*i*j/d) for j in [0, d).
std::vector<std::complex<double>> root_table(std::uint64_t d) {
  std::vector<std::complex<double>> roots(d);
  for (std::uint64_t j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(d);
    roots[j] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

}  // namespace

double QState::norm() const {
  double sum = 0.0;
  for (const auto& amp : amps) sum += std::norm(amp);
  return std::sqrt(sum);
}

std::vector<double> QState::probabilities() const {
  double total = 0.0;
  std::vector<double> probs(amps.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    probs[i] = std::norm(amps[i]);
    total += probs[i];
  }
  if (total <= 0.0) {
    throw theory_violation("QState::probabilities: zero state");
  }
  for (double& value : probs) value /= total;
  return probs;
}

// claim: qft-definition :: hsp::apply_qft
QState apply_qft(const QState& state) {
  const std::uint64_t d = state.dim();
  if (d == 0) throw domain_error("apply_qft: empty state");
  const auto roots = root_table(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  // Gather the support once; typical inputs here are collapsed coset states
  // with support far below d.
  std::vector<std::uint64_t> support;
  for (std::uint64_t l = 0; l < d; ++l) {
    if (state.amps[l] != std::complex<double>{}) support.push_back(l);
  }

  QState out;
  out.amps.assign(d, {});
  for (std::uint64_t k = 0; k < d; ++k) {
    std::complex<double> acc{};
    for (const std::uint64_t l : support) {
      acc += state.amps[l] * roots[(k * l) % d];
    }
    out.amps[k] = acc * scale;
  }
  return out;
}

QState apply_qft_2d(const QState& state, std::uint64_t rows,
                    std::uint64_t cols) {
  if (state.dim() != rows * cols || rows == 0 || cols == 0) {
    throw domain_error("apply_qft_2d: dimension mismatch");
  }
  // Transform the column register within each row, then the row register
  // within each column.
  QState mid;
  mid.amps.assign(rows * cols, {});
  for (std::uint64_t a = 0; a < rows; ++a) {
    QState row;
    row.amps.assign(state.amps.begin() + static_cast<std::ptrdiff_t>(a * cols),
                    state.amps.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols));
    QState rowed = apply_qft(row);
    std::copy(rowed.amps.begin(), rowed.amps.end(),
              mid.amps.begin() + static_cast<std::ptrdiff_t>(a * cols));
  }
  QState out;
  out.amps.assign(rows * cols, {});
  for (std::uint64_t b = 0; b < cols; ++b) {
    QState col;
    col.amps.resize(rows);
    for (std::uint64_t a = 0; a < rows; ++a) col.amps[a] = mid.amps[a * cols + b];
    QState coled = apply_qft(col);
    for (std::uint64_t a = 0; a < rows; ++a) out.amps[a * cols + b] = coled.amps[a];
  }
  return out;
}

std::uint64_t sample_index(const QState& state, std::mt19937_64& rng) {
  double total = 0.0;
  for (const auto& amp : state.amps) total += std::norm(amp);
  if (total <= 0.0) throw theory_violation("sample_index: zero state");
  const double target = canonical_unit(rng) * total;
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    const double w = std::norm(state.amps[i]);
    if (w > 0.0) last_nonzero = i;
    acc += w;
    if (target < acc) return i;
  }
  return last_nonzero;  // rounding spill lands on the top of the support
}

// claim: coset-grid-subset :: hsp::solver_grid
std::vector<Element> solver_grid(const GroupSpec& spec, std::uint32_t t,
                                 std::uint32_t s) {
  const auto& shape = spec.canonical_shape();
  if (!shape) {
    throw domain_error("solver_grid: group order is not 2^t0 * p^r");
  }
  if (s < 1 || s > shape->r || t > shape->t0) {
    throw domain_error("solver_grid: level out of range");
  }
  std::uint64_t stride = 1;
  for (std::uint32_t i = 0; i < t; ++i) stride *= 2;
  for (std::uint32_t i = 0; i + 1 < s; ++i) stride *= spec.p();

  std::vector<Element> grid;
  grid.reserve(spec.p() * spec.p());
  for (std::uint64_t a = 0; a < spec.p(); ++a) {
    for (std::uint64_t b = 0; b < spec.p(); ++b) {
      grid.push_back(Element{a * stride % spec.n(), b});
    }
  }
  return grid;
}

std::vector<std::vector<std::uint64_t>> group_by_label(
    std::span<const std::uint64_t> labels) {
  std::vector<std::vector<std::uint64_t>> classes;
  std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
  first_seen.reserve(labels.size());
  for (std::uint64_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = first_seen.try_emplace(labels[i], classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

namespace {

// Picks a class with probability |class| / total using one integer draw.
std::uint64_t sample_class(const std::vector<std::vector<std::uint64_t>>& classes,
                           std::uint64_t total, std::mt19937_64& rng) {
  const std::uint64_t target = uniform_below(rng, total);
  std::uint64_t acc = 0;
  for (std::uint64_t j = 0; j < classes.size(); ++j) {
    acc += classes[j].size();
    if (target < acc) return j;
  }
  throw theory_violation("sample_class: classes do not cover the basis");
}

QState collapsed_state(const std::vector<std::uint64_t>& members,
                       std::uint64_t dim) {
  QState state;
  state.amps.assign(dim, {});
  const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
  for (const std::uint64_t i : members) state.amps[i] = amp;
  return state;
}

using EmbedFn = std::function<Element(const Element&)>;

// claim: round-procedure :: hsp::run_round
RoundOutcome run_round_embedded(const HidingOracle& oracle,
                                const GroupSpec& spec, const EmbedFn& embed,
                                std::uint32_t t, std::uint32_t s,
                                std::mt19937_64& rng) {
  std::vector<Element> grid = solver_grid(spec, t, s);
  if (embed) {
    for (Element& g : grid) g = embed(g);
  }
  const std::vector<std::uint64_t> labels = oracle.label_superposition(grid);
  const auto classes = group_by_label(labels);
  const std::uint64_t j = sample_class(classes, labels.size(), rng);
  const QState post = apply_qft_2d(collapsed_state(classes[j], labels.size()),
                                   spec.p(), spec.p());
  const std::uint64_t idx = sample_index(post, rng);

  RoundOutcome outcome;
  outcome.c = idx / spec.p();
  outcome.d = idx % spec.p();
  if (outcome.c != 0) {
    // claim: h-extraction :: hsp::run_round
    const std::uint64_t inv_c = pow_mod(outcome.c, spec.p() - 2, spec.p());
    outcome.h = (spec.p() - outcome.d % spec.p() * inv_c % spec.p()) % spec.p();
  }
  return outcome;
}

}  // namespace

RoundOutcome run_round(const HidingOracle& oracle, std::uint32_t t,
                       std::uint32_t s, std::mt19937_64& rng) {
  return run_round_embedded(oracle, oracle.spec(), nullptr, t, s, rng);
}

// claim: twogen-distribution :: hsp::round_distribution
// claim: cyclic-distribution :: hsp::round_distribution
std::vector<double> round_distribution(const HidingOracle& oracle,
                                       std::uint32_t t, std::uint32_t s) {
  const GroupSpec& spec = oracle.spec();
  const std::vector<Element> grid = solver_grid(spec, t, s);
  const std::vector<std::uint64_t> labels = oracle.label_superposition(grid);
  const auto classes = group_by_label(labels);

  std::vector<double> dist(labels.size(), 0.0);
  const double total = static_cast<double>(labels.size());
  for (const auto& members : classes) {
    const QState post = apply_qft_2d(collapsed_state(members, labels.size()),
                                     spec.p(), spec.p());
    const double weight = static_cast<double>(members.size()) / total;
    for (std::uint64_t i = 0; i < dist.size(); ++i) {
      dist[i] += weight * std::norm(post.amps[i]);
    }
  }
  return dist;
}

// claim: family-decision-rule :: hsp::decide_family
Decision decide_family(std::span<const RoundOutcome> rounds) {
  Decision decision;
  for (const RoundOutcome& round : rounds) {
    if (!round.h) continue;
    if (decision.family == FamilyDecision::no_survivors) {
      decision.family = FamilyDecision::two_gen;
      decision.h = round.h;
    } else if (decision.h != round.h) {
      decision.family = FamilyDecision::cyclic;
      decision.h.reset();
      break;
    }
  }
  return decision;
}

namespace {

std::uint64_t abelian_embedded(const HidingOracle& oracle, std::uint64_t m,
                               const std::function<Element(std::uint64_t)>& embed,
                               std::mt19937_64& rng,
                               std::uint32_t extra_rounds) {
  if (m == 0) throw domain_error("abelian_hsp_cyclic: modulus must be positive");
  if (m == 1) return 1;

  std::vector<Element> support;
  support.reserve(m);
  for (std::uint64_t u = 0; u < m; ++u) support.push_back(embed(u));

  const std::uint32_t rounds =
      static_cast<std::uint32_t>(std::bit_width(m - 1)) + extra_rounds;
  std::uint64_t divisor_acc = m;  // gcd of m and every Fourier sample
  for (std::uint32_t round = 0; round < rounds; ++round) {
    const std::vector<std::uint64_t> labels = oracle.label_superposition(support);
    const auto classes = group_by_label(labels);
    const std::uint64_t j = sample_class(classes, m, rng);
    const QState post = apply_qft(collapsed_state(classes[j], m));
    divisor_acc = std::gcd(divisor_acc, sample_index(post, rng));
  }

  const std::uint64_t candidate = m / divisor_acc;
  // Samples are always multiples of the true index, so the candidate divides
  // the true generator; one membership check closes the remaining gap.
  if (oracle.label(embed(candidate % m)) != oracle.label(embed(0))) {
    throw solver_error("abelian_hsp_cyclic: sampled divisor rejected by "
                       "verification query",
                       solver_error::Reason::rejected_candidate);
  }
  return candidate;
}

}  // namespace

// claim: abelian-subroutine :: hsp::abelian_hsp_cyclic
std::uint64_t abelian_hsp_cyclic(
    const HidingOracle& oracle, std::uint64_t m,
    const std::function<Element(std::uint64_t)>& embed, std::mt19937_64& rng,
    std::uint32_t extra_rounds) {
  return abelian_embedded(oracle, m, embed, rng, extra_rounds);
}

namespace {

// Solver core, parameterized by an embedding so it can run on an inner
// factor of a larger group through the outer oracle.
SolveResult solve_canonical(const HidingOracle& oracle, const GroupSpec& spec,
                            const EmbedFn& embed, std::uint64_t seed,
                            const SolveConfig& config) {
  if (!spec.canonical_shape()) {
    throw domain_error("solve: group order is not 2^t0 * p^r");
  }
  if (config.rounds_per_batch == 0) {
    throw domain_error("solve: rounds_per_batch must be positive");
  }
  const auto map = [&embed](const Element& g) { return embed ? embed(g) : g; };
  const QueryCount before = oracle.queries();

  SolveResult result;
  std::mt19937_64 abelian_rng = make_engine(seed, 0xA);
  result.abelian_stride = abelian_embedded(
      oracle, spec.n(), [&](std::uint64_t u) { return map(Element{u, 0}); },
      abelian_rng, config.abelian_extra_rounds);

  std::uint64_t rest = result.abelian_stride;
  result.t = valuation(rest, 2);
  result.s = valuation(rest, spec.p());
  if (rest != 1) {
    throw theory_violation("solve: abelian stage returned a non-divisor");
  }

  if (result.s == 0) {
    // H contains x^(2^t) and the only open question is whether y joins it.
    const bool has_y = oracle.label(map(Element{0, 1})) ==
                       oracle.label(map(Element{0, 0}));
    result.hidden = has_y ? SubgroupDesc{YJoinDesc{result.t}}
                          : SubgroupDesc{CyclicXDesc{result.t, 0}};
  } else {
    std::mt19937_64 grid_rng = make_engine(seed, 0xB);
    Decision decision;
    for (std::uint32_t batch = 0; batch < 2; ++batch) {
      std::vector<RoundOutcome> batch_rounds;
      batch_rounds.reserve(config.rounds_per_batch);
      for (std::uint32_t i = 0; i < config.rounds_per_batch; ++i) {
        batch_rounds.push_back(run_round_embedded(oracle, spec, embed,
                                                  result.t, result.s,
                                                  grid_rng));
      }
      result.rounds.insert(result.rounds.end(), batch_rounds.begin(),
                           batch_rounds.end());
      result.batches = batch + 1;
      decision = decide_family(batch_rounds);
      if (decision.family != FamilyDecision::no_survivors) break;
    }
    switch (decision.family) {
      case FamilyDecision::two_gen:
        result.hidden = TwoGenDesc{result.t, result.s, *decision.h};
        break;
      case FamilyDecision::cyclic:
        result.hidden = CyclicXDesc{result.t, result.s};
        break;
      case FamilyDecision::no_survivors:
        throw solver_error("solve: no informative rounds in two batches",
                           solver_error::Reason::no_survivors);
    }
  }

  result.queries = oracle.queries() - before;
  return result;
}

}  // namespace

// claim: query-count-scaling :: hsp::solve_2pr
SolveResult solve_2pr(const HidingOracle& oracle, std::uint64_t seed,
                      const SolveConfig& config) {
  SolveResult result =
      solve_canonical(oracle, oracle.spec(), nullptr, seed, config);
  if (config.verify && !oracle.verify_hiding(result.hidden)) {
    throw solver_error("solve: answer rejected by full-table verification",
                       solver_error::Reason::rejected_candidate);
  }
  return result;
}

GeneralSolveResult solve_general(const HidingOracle& oracle, std::uint64_t seed,
                                 const GeneralSolveConfig& config) {
  const GroupSpec& spec = oracle.spec();
  if (!check_hypothesis(spec.n(), spec.p())) {
    throw domain_error("solve_general: some prime q | N has p | q - 1");
  }
  const QueryCount before = oracle.queries();
  const FactorLocation loc = locate_k(spec.n(), spec.p());
  std::uint64_t pk = 1;
  for (std::uint32_t i = 0; i < loc.r_k; ++i) pk *= spec.p();
  const std::uint64_t m0 = spec.n() / pk;

  GeneralSolveResult out;

  // Stage A: the p-free cyclic factor.
  std::mt19937_64 coprime_rng = make_engine(seed, 0x5A);
  out.coprime_stride = abelian_embedded(
      oracle, m0,
      [&](std::uint64_t u) { return Element{crt_combine(u, m0, 0, pk), 0}; },
      coprime_rng, config.inner.abelian_extra_rounds);
  if (out.coprime_stride < m0) {
    out.generators.push_back(
        Element{crt_combine(out.coprime_stride, m0, 0, pk), 0});
  }

  // Stage B: the p-part.
  if (loc.r_k == 0) {
    std::mt19937_64 p_rng = make_engine(seed, 0x5B);
    const std::uint64_t dp = abelian_embedded(
        oracle, spec.p(), [](std::uint64_t b) { return Element{0, b}; }, p_rng,
        config.inner.abelian_extra_rounds);
    if (dp < spec.p()) out.generators.push_back(Element{0, dp});
  } else {
    const DecomposedSpec dec = decompose(spec);
    const EmbedFn embed = [&dec](const Element& g1) {
      return unmap_element(dec, 0, g1);
    };
    out.inner = solve_canonical(oracle, dec.inner, embed,
                                derive_seed(seed, 0x5B), config.inner);
    for (const Element& g1 : subgroup_generators(out.inner->hidden, dec.inner)) {
      if (g1 == identity()) continue;
      out.generators.push_back(unmap_element(dec, 0, g1));
    }
  }

  out.hidden = canonicalize(
      make_explicit_set(closure(out.generators, spec), spec), spec);
  if (config.verify && !oracle.verify_hiding(out.hidden)) {
    throw solver_error("solve_general: answer rejected by full-table "
                       "verification",
                       solver_error::Reason::rejected_candidate);
  }
  out.queries = oracle.queries() - before;
  return out;
}

}  // namespace hsp
