#include "hsp/decomposition.hpp"

#include <algorithm>

#include "hsp/errors.hpp"

namespace hsp {

FactorLocation locate_k(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p == 0) throw domain_error("locate_k: n and p must be positive");
  const Factorization fact = factorize(n);
  FactorLocation loc;
  loc.k_index = fact.factors.size();
  for (std::size_t i = 0; i < fact.factors.size(); ++i) {
    if (fact.factors[i].prime == p) {
      loc.k_index = i;
      loc.r_k = fact.factors[i].exponent;
      break;
    }
  }
  // An order-p unit mod p^r exists only for r >= 2, and under the
  // coprimality hypothesis no other factor of N can contribute one.
  loc.nontrivial_twist_possible = loc.r_k >= 2;
  return loc;
}

// claim: coprime-factor-split :: hsp::check_hypothesis
bool check_hypothesis(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) throw domain_error("check_hypothesis: bad arguments");
  for (const PrimePower& pp : factorize(n).factors) {
    if (pp.prime == p) continue;
    if ((pp.prime - 1) % p == 0) return false;
  }
  return true;
}

// claim: reduction-theorem :: hsp::decompose
DecomposedSpec decompose(const GroupSpec& spec) {
  if (!check_hypothesis(spec.n(), spec.p())) {
    throw domain_error(
        "decompose: some prime q | N has p | q - 1; the twisted factor does "
        "not split off");
  }
  const FactorLocation loc = locate_k(spec.n(), spec.p());
  if (loc.r_k == 0) {
    throw domain_error("decompose: p does not divide N; the group is already "
                       "a direct product Z_N x Z_p");
  }
  std::uint64_t pk = 1;
  for (std::uint32_t i = 0; i < loc.r_k; ++i) pk *= spec.p();
  const std::uint64_t m0 = spec.n() / pk;

  // The twist has order dividing p, and p is coprime to phi(M0) under the
  // hypothesis, so the twist must be trivial on the coprime part.
  if (spec.phi11() % m0 != 1 % m0) {
    throw theory_violation("decompose: twist is nontrivial modulo the "
                           "p-free part of N");
  }

  DecomposedSpec dec{
      .outer = spec,
      .coprime_modulus = m0,
      .p_power = pk,
      .inner = validate_spec(pk, spec.p(), spec.phi11() % pk),
      .k_index = loc.k_index,
      .r_k = loc.r_k,
  };
  return dec;
}

// claim: crt-group-isomorphism :: hsp::map_element
std::pair<std::uint64_t, Element> map_element(const DecomposedSpec& dec,
                                              const Element& g) {
  if (g.a >= dec.outer.n() || g.b >= dec.outer.p()) {
    throw domain_error("map_element: element out of range");
  }
  return {g.a % dec.coprime_modulus, Element{g.a % dec.p_power, g.b}};
}

Element unmap_element(const DecomposedSpec& dec, std::uint64_t c0,
                      const Element& inner) {
  if (c0 >= dec.coprime_modulus || inner.a >= dec.p_power ||
      inner.b >= dec.outer.p()) {
    throw domain_error("unmap_element: component out of range");
  }
  return Element{crt_combine(c0, dec.coprime_modulus, inner.a, dec.p_power),
                 inner.b};
}

// claim: product-subgroup-split :: hsp::split_subgroup
SplitSubgroup split_subgroup(
    const DecomposedSpec& dec,
    std::span<const std::pair<std::uint64_t, Element>> subgroup) {
  SplitSubgroup out;
  out.h0.reserve(subgroup.size());
  out.h1.reserve(subgroup.size());
  for (const auto& [c0, g1] : subgroup) {
    if (c0 >= dec.coprime_modulus || g1.a >= dec.p_power ||
        g1.b >= dec.outer.p()) {
      throw domain_error("split_subgroup: component out of range");
    }
    out.h0.push_back(c0);
    out.h1.push_back(g1);
  }
  std::ranges::sort(out.h0);
  out.h0.erase(std::unique(out.h0.begin(), out.h0.end()), out.h0.end());
  std::ranges::sort(out.h1);
  out.h1.erase(std::unique(out.h1.begin(), out.h1.end()), out.h1.end());
  // Coprime component orders force H = H0 x H1.
  if (out.h0.size() * out.h1.size() != subgroup.size()) {
    throw theory_violation("split_subgroup: subgroup is not the product of "
                           "its projections");
  }
  return out;
}

}  // namespace hsp
