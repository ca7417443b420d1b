#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hsp/group.hpp"

namespace hsp {

/// Default cap on |G| for operations that materialize element sets.
inline constexpr std::uint64_t kDefaultClosureBound = 1'000'000;

/**
 * Subgroup descriptors for groups of canonical shape N = 2^t0 * p^r.
 *
 * Every subgroup of such a group is one of:
 *   CyclicX(t, s)   = <x^{2^t p^s}>                      (inside <x>)
 *   TwoGen(t, s, h) = <x^{2^t p^s}, x^{h 2^t p^{s-1}} y>  (s >= 1)
 *   YJoin(t)        = <x^{2^t}, y>                        (the s = 0 case,
 *                     where the second generator degenerates to y)
 * with 0 <= t <= t0, 0 <= s <= r, 0 <= h < p. The explicit-set variant
 * carries a full element list and is the only form allowed on groups of
 * non-canonical shape.
 */
struct CyclicXDesc {
  std::uint32_t t = 0;
  std::uint32_t s = 0;

  friend bool operator==(const CyclicXDesc&, const CyclicXDesc&) = default;
};

struct TwoGenDesc {
  std::uint32_t t = 0;
  std::uint32_t s = 1;
  std::uint64_t h = 0;

  friend bool operator==(const TwoGenDesc&, const TwoGenDesc&) = default;
};

struct YJoinDesc {
  std::uint32_t t = 0;

  friend bool operator==(const YJoinDesc&, const YJoinDesc&) = default;
};

struct ExplicitSetDesc {
  std::vector<Element> elements;  // sorted, closed, contains the identity

  friend bool operator==(const ExplicitSetDesc&, const ExplicitSetDesc&) =
      default;
};

using SubgroupDesc =
    std::variant<CyclicXDesc, TwoGenDesc, YJoinDesc, ExplicitSetDesc>;

/// Validates an explicit element list (in range, nonempty, closed under the
/// group operation and inverse) and returns the sorted descriptor.
ExplicitSetDesc make_explicit_set(std::vector<Element> elements,
                                  const GroupSpec& spec);

/// Throws domain_error unless desc is well-formed for spec (parameter ranges
/// for structured forms, which also require canonical shape).
void validate_desc(const SubgroupDesc& desc, const GroupSpec& spec);

std::uint64_t subgroup_order(const SubgroupDesc& desc, const GroupSpec& spec);

/// All members, sorted. Structured forms are expanded from the membership
/// congruence, not by closure.
std::vector<Element> elements_of(const SubgroupDesc& desc,
                                 const GroupSpec& spec);

/// Constant-time membership test against the defining congruence
/// (binary search for explicit sets).
bool membership(const SubgroupDesc& desc, const Element& g,
                const GroupSpec& spec);

/// Generating set matching the descriptor's definition.
std::vector<Element> subgroup_generators(const SubgroupDesc& desc,
                                         const GroupSpec& spec);

/// Subgroup generated by gens, as a sorted element list. Breadth-first orbit
/// expansion; requires |G| <= max_group_order.
std::vector<Element> closure(std::span<const Element> gens,
                             const GroupSpec& spec,
                             std::uint64_t max_group_order =
                                 kDefaultClosureBound);

/**
 * The cyclic subgroup <x^a y^b> as the ordered list
 *
 *   [ x^{a i mod N} y^{b i mod p} : i = 0 .. ord-1 ],  ord = |x^a y^b|,
 *
 * valid on groups of canonical shape (any valid twist): successive powers
 * differ from (a*i, b*i) only by factors of (x^a y^b)^p, which the subgroup
 * absorbs. Entries are pairwise distinct and the set equals closure({g}).
 */
std::vector<Element> cyclic_elements(const Element& g, const GroupSpec& spec);

/**
 * The complete duplicate-free subgroup list of a canonical-shaped group, in
 * a deterministic order (CyclicX by (t, s), then YJoin by t, then TwoGen by
 * (t, s, h)). Descriptor families are provably distinct; element sets are
 * nevertheless compared at construction time as a cheap self-check.
 */
std::vector<SubgroupDesc> enumerate_subgroups(const GroupSpec& spec);

/// Independent lattice enumeration for any valid spec: all cyclic subgroups
/// are closed, then joins are added to a fixpoint. Returns sorted element
/// lists, sorted lexicographically. Verification oracle for
/// enumerate_subgroups and input generator for solver sweeps.
std::vector<std::vector<Element>> enumerate_subgroups_bruteforce(
    const GroupSpec& spec);

struct CosetLabel {
  Element rep;  // lexicographic minimum of the coset

  friend bool operator==(const CosetLabel&, const CosetLabel&) = default;
};

/// Label of the left coset g * H: its lexicographically least member.
/// Constant on each coset, distinct across cosets.
CosetLabel coset_label(const SubgroupDesc& desc, const Element& g,
                       const GroupSpec& spec);

/// Canonical form of a descriptor. On canonical-shaped groups every
/// descriptor (including explicit sets) reduces to a structured form, and
/// two descriptors denote the same subgroup iff their canonical forms are
/// equal. On other groups the canonical form is the sorted explicit set.
SubgroupDesc canonicalize(const SubgroupDesc& desc, const GroupSpec& spec);

/// Same subgroup test via canonicalize.
bool same_subgroup(const SubgroupDesc& lhs, const SubgroupDesc& rhs,
                   const GroupSpec& spec);

/**
 * The twist-change isomorphism x^a y^b -> x^a y^{b * i^{-1} mod p} from the
 * group with the canonical twist to the group with twist canonical^i
 * (same N = 2^t0 * p^r, r >= 2, 1 <= i < p). Verified group isomorphism;
 * throws domain_error when the specs do not stand in that relation.
 */
Element isomorphism_psi(std::uint64_t i, const Element& g,
                        const GroupSpec& from, const GroupSpec& to);

/// "C(t,s)", "T(t,s,h)", "Y(t)", or "E{(a,b),...}" (elements sorted).
std::string to_string(const SubgroupDesc& desc);

/// Inverse of to_string, whitespace-tolerant; validates against spec.
SubgroupDesc parse_subgroup(std::string_view text, const GroupSpec& spec);

}  // namespace hsp
