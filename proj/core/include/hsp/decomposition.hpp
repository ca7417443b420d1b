#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hsp/group.hpp"
#include "hsp/modmath.hpp"

namespace hsp {

/// Position of p inside the factorization of N.
struct FactorLocation {
  std::size_t k_index = 0;       // index of p in factorize(N) (sorted order)
  std::uint32_t r_k = 0;         // exponent of p in N (0 when p does not divide N)
  bool nontrivial_twist_possible = true;
};

/**
 * Locates p in N's factorization. When the divisibility hypothesis holds
 * (see check_hypothesis) a twist of order p can only live in the Z_{p^{r_k}}
 * component, which requires r_k >= 2; nontrivial_twist_possible is false
 * when that is ruled out.
 */
FactorLocation locate_k(std::uint64_t n, std::uint64_t p);

/// True iff p divides no q - 1 over prime divisors q of N. Under this
/// hypothesis the twisted factor of Z_N splits off the coprime remainder.
bool check_hypothesis(std::uint64_t n, std::uint64_t p);

/**
 * CRT splitting of G = Z_N x| Z_p into Z_{M0} x (Z_{p^{r_k}} x| Z_p) with
 * M0 = N / p^{r_k} coprime to p. Valid when check_hypothesis(N, p) holds and
 * the twist is nontrivial; phi11 = 1 mod M0 is then forced and asserted.
 */
struct DecomposedSpec {
  GroupSpec outer;               // the original group
  std::uint64_t coprime_modulus; // M0
  std::uint64_t p_power;         // p^{r_k}
  GroupSpec inner;               // Z_{p^{r_k}} x| Z_p with the induced twist
  std::size_t k_index = 0;
  std::uint32_t r_k = 0;
};

DecomposedSpec decompose(const GroupSpec& spec);

/// Image of (a, b) under the splitting: (a mod M0, (a mod p^{r_k}, b)).
/// A verified group isomorphism.
std::pair<std::uint64_t, Element> map_element(const DecomposedSpec& dec,
                                              const Element& g);

/// Inverse of map_element via CRT combination.
Element unmap_element(const DecomposedSpec& dec, std::uint64_t c0,
                      const Element& inner);

/**
 * Splits a subgroup of the product group into its components. Because the
 * factor orders are coprime, every subgroup H of Z_{M0} x G1 is the product
 * of its projections; the reconstruction |H0| * |H1| = |H| is asserted and
 * a theory_violation is thrown if it fails.
 */
struct SplitSubgroup {
  std::vector<std::uint64_t> h0;  // sorted subgroup of Z_{M0}
  std::vector<Element> h1;        // sorted subgroup of the inner group
};

SplitSubgroup split_subgroup(
    const DecomposedSpec& dec,
    std::span<const std::pair<std::uint64_t, Element>> subgroup);

}  // namespace hsp
