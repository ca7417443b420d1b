#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hsp/group.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

/// Oracle invocations, split by how the oracle was addressed. A
/// superposition batch counts as one quantum query regardless of support
/// size; a single point evaluation counts as one classical query.
struct QueryCount {
  std::uint64_t quantum = 0;
  std::uint64_t classical = 0;
  std::uint64_t total() const { return quantum + classical; }
};

/**
 * A function f on the group, constant on left cosets gH of a hidden
 * subgroup H and distinct across cosets, realized as a full value table.
 *
 * The canonical construction labels each coset by the index of its
 * lexicographically least representative; `scrambled` composes that with a
 * keyed permutation of the label values, so solvers must not rely on any
 * structure in the labels themselves.
 */
class HidingOracle {
 public:
  static HidingOracle canonical(const GroupSpec& spec, const SubgroupDesc& hidden);
  static HidingOracle scrambled(const GroupSpec& spec, const SubgroupDesc& hidden,
                                std::uint64_t seed);
  /// Arbitrary table (size N*p), e.g. for adversarial tests; `hidden` may be
  /// supplied when known.
  static HidingOracle from_table(const GroupSpec& spec,
                                 std::vector<std::uint64_t> table,
                                 std::optional<SubgroupDesc> hidden = {});

  const GroupSpec& spec() const { return spec_; }

  /// Point evaluation; counts one classical query.
  std::uint64_t label(const Element& g) const;

  /// Batch evaluation over the support of a superposition; counts one
  /// quantum query for the whole batch.
  std::vector<std::uint64_t> label_superposition(std::span<const Element> support) const;

  /// Number of distinct labels in the table (equals [G:H] for a hiding
  /// table). Metadata; does not count as a query.
  std::uint64_t distinct_labels() const;

  /// Checks that the table is constant on each left coset of `hidden` and
  /// injective across cosets.
  bool verify_hiding(const SubgroupDesc& hidden) const;

  /// The hidden subgroup, when this oracle was built from one.
  const std::optional<SubgroupDesc>& hidden() const { return hidden_; }

  QueryCount queries() const { return counts_; }
  void reset_queries() { counts_ = {}; }

 private:
  HidingOracle(GroupSpec spec, std::vector<std::uint64_t> table,
               std::optional<SubgroupDesc> hidden);

  GroupSpec spec_;
  std::vector<std::uint64_t> table_;  // element_index -> label
  std::optional<SubgroupDesc> hidden_;
  mutable QueryCount counts_;
};

}  // namespace hsp
