#include "hsp/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hsp/errors.hpp"
#include "hsp/rng.hpp"

namespace hsp {

namespace {

// Labels each left coset gH by the element index of its lexicographically
// least member. Element indices are ordered lexicographically in (a, b), so
// an ascending scan meets each coset first at its least member.
std::vector<std::uint64_t> coset_table(const GroupSpec& spec,
                                       const SubgroupDesc& hidden) {
  validate_desc(hidden, spec);
  const std::vector<Element> h = elements_of(hidden, spec);
  const std::uint64_t size = spec.order();
  constexpr std::uint64_t kUnassigned = ~std::uint64_t{0};
  std::vector<std::uint64_t> table(size, kUnassigned);
  for (std::uint64_t i = 0; i < size; ++i) {
    if (table[i] != kUnassigned) continue;
    const Element rep = element_at(i, spec);
    for (const Element& member : h) {
      table[element_index(mul(rep, member, spec), spec)] = i;
    }
    if (table[i] != kUnassigned && table[i] != i) {
      throw theory_violation("coset_table: scan order is not coset-minimal");
    }
  }
  return table;
}

}  // namespace

HidingOracle::HidingOracle(GroupSpec spec, std::vector<std::uint64_t> table,
                           std::optional<SubgroupDesc> hidden)
    : spec_(std::move(spec)), table_(std::move(table)), hidden_(std::move(hidden)) {
  if (table_.size() != spec_.order()) {
    throw domain_error("HidingOracle: table size must equal N*p");
  }
}

HidingOracle HidingOracle::canonical(const GroupSpec& spec,
                                     const SubgroupDesc& hidden) {
  return HidingOracle(spec, coset_table(spec, hidden), hidden);
}

HidingOracle HidingOracle::scrambled(const GroupSpec& spec,
                                     const SubgroupDesc& hidden,
                                     std::uint64_t seed) {
  std::vector<std::uint64_t> table = coset_table(spec, hidden);
  std::vector<std::uint64_t> used = table;
  std::ranges::sort(used);
  used.erase(std::unique(used.begin(), used.end()), used.end());

  // Keyed Fisher-Yates permutation of the label values.
  std::vector<std::uint64_t> perm(used.size());
  for (std::uint64_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::mt19937_64 rng = make_engine(seed, 0x6f7261636c65ull);
  for (std::uint64_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  }

  std::unordered_map<std::uint64_t, std::uint64_t> remap;
  remap.reserve(used.size());
  for (std::uint64_t j = 0; j < used.size(); ++j) remap[used[j]] = perm[j];
  for (std::uint64_t& value : table) value = remap.at(value);
  return HidingOracle(spec, std::move(table), hidden);
}

HidingOracle HidingOracle::from_table(const GroupSpec& spec,
                                      std::vector<std::uint64_t> table,
                                      std::optional<SubgroupDesc> hidden) {
  return HidingOracle(spec, std::move(table), std::move(hidden));
}

std::uint64_t HidingOracle::label(const Element& g) const {
  if (g.a >= spec_.n() || g.b >= spec_.p()) {
    throw domain_error("HidingOracle::label: element out of range");
  }
  ++counts_.classical;
  return table_[element_index(g, spec_)];
}

std::vector<std::uint64_t> HidingOracle::label_superposition(
    std::span<const Element> support) const {
  ++counts_.quantum;
  std::vector<std::uint64_t> labels;
  labels.reserve(support.size());
  for (const Element& g : support) {
    if (g.a >= spec_.n() || g.b >= spec_.p()) {
      throw domain_error("HidingOracle::label_superposition: element out of range");
    }
    labels.push_back(table_[element_index(g, spec_)]);
  }
  return labels;
}

std::uint64_t HidingOracle::distinct_labels() const {
  std::unordered_set<std::uint64_t> seen(table_.begin(), table_.end());
  return seen.size();
}

// claim: coset-constant-oracle :: hsp::HidingOracle::verify_hiding
bool HidingOracle::verify_hiding(const SubgroupDesc& hidden) const {
  validate_desc(hidden, spec_);
  const std::vector<Element> h = elements_of(hidden, spec_);
  const std::uint64_t cosets = spec_.order() / h.size();

  std::unordered_set<std::uint64_t> labels;
  std::vector<bool> visited(spec_.order(), false);
  for (std::uint64_t i = 0; i < table_.size(); ++i) {
    if (visited[i]) continue;
    const Element rep = element_at(i, spec_);
    const std::uint64_t want = table_[i];
    for (const Element& member : h) {
      const std::uint64_t j = element_index(mul(rep, member, spec_), spec_);
      if (table_[j] != want) return false;  // not constant on the coset
      visited[j] = true;
    }
    labels.insert(want);
  }
  // Constant on cosets plus a full complement of distinct values means the
  // labels separate cosets exactly.
  return labels.size() == cosets;
}

}  // namespace hsp
