#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsp {

/// Group element x^a * y^b of Z_N x| Z_p, stored in normal form with
/// 0 <= a < N and 0 <= b < p. Ordering is lexicographic in (a, b).
struct Element {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Present when N = 2^t0 * p^r with t0 in {0, 1} and r >= 1.
struct CanonicalShape {
  std::uint32_t t0 = 0;
  std::uint32_t r = 0;

  friend bool operator==(const CanonicalShape&, const CanonicalShape&) =
      default;
};

/**
 * Validated description of the group Z_N x| Z_p.
 *
 * The twist is determined by the single residue phi11 = phi(1)(1): the
 * generator y acts on x by x -> x^phi11, so
 *
 *   (a1, b1) * (a2, b2) = (a1 + a2 * phi11^b1 mod N, b1 + b2 mod p).
 *
 * A spec is valid when p is an odd prime and phi11 is either 1 (direct
 * product) or a unit of multiplicative order exactly p mod N. Powers
 * phi11^b for b in [0, p) are precomputed at validation time.
 */
class GroupSpec {
 public:
  std::uint64_t n() const { return n_; }
  std::uint64_t p() const { return p_; }
  std::uint64_t phi11() const { return phi11_; }

  /// |G| = N * p.
  std::uint64_t order() const { return n_ * p_; }

  /// phi11^b mod N for 0 <= b < p (table lookup).
  std::uint64_t phi_power(std::uint64_t b) const { return phi_pow_[b]; }

  bool direct_product() const { return phi11_ == 1; }

  /// Shape information when N = 2^t0 * p^r.
  const std::optional<CanonicalShape>& canonical_shape() const {
    return shape_;
  }

 private:
  friend GroupSpec validate_spec(std::uint64_t, std::uint64_t, std::uint64_t);

  GroupSpec(std::uint64_t n, std::uint64_t p, std::uint64_t phi11);

  std::uint64_t n_;
  std::uint64_t p_;
  std::uint64_t phi11_;
  std::vector<std::uint64_t> phi_pow_;
  std::optional<CanonicalShape> shape_;
};

/// Checks every invariant of (N, p, phi11) and returns the validated spec.
/// Throws domain_error naming the violated invariant otherwise.
GroupSpec validate_spec(std::uint64_t n, std::uint64_t p, std::uint64_t phi11);

/// The canonical twist residue for N = 2^t0 * p^r: 2^t0 * p^{r-1} + 1 when
/// r >= 2, and 1 when r = 1 (no unit of order p exists mod 2^t0 * p).
std::uint64_t canonical_phi11(std::uint32_t t0, std::uint64_t p,
                              std::uint32_t r);

/// Spec for Z_{2^t0 p^r} x| Z_p with the canonical twist.
GroupSpec make_canonical_spec(std::uint32_t t0, std::uint64_t p,
                              std::uint32_t r);

inline Element identity() { return Element{0, 0}; }

Element mul(const Element& g1, const Element& g2, const GroupSpec& spec);
Element inv(const Element& g, const GroupSpec& spec);

/// g^k by square and multiply; negative k inverts first.
Element pow(const Element& g, std::int64_t k, const GroupSpec& spec);

/**
 * Power closed form for the canonical twist on N = 2^t0 * p^r, r >= 2.
 * With u = 2^t0 * p^{r-1} (so phi11 = u + 1),
 *
 *   (x^a y^b)^k = x^{a*k + a*b*u*k*(k-1)/2 mod N} y^{b*k mod p},
 *
 * which for t0 = 1 reads x^{a k ((k-1) b p^{r-1} + 1)} y^{b k}. In
 * particular (x^a y^b)^p = x^{a p}. Requires phi11 to be the canonical
 * twist with r >= 2; throws domain_error otherwise. Agrees with pow
 * everywhere it is defined.
 */
Element pow_closed_form_2pr(const Element& g, std::int64_t k,
                            const GroupSpec& spec);

/// Exact order of g, for any valid spec. Uses the identity
/// (a,b)^p = (a * S_b, 0) with S_b = sum_{j<p} phi11^{jb}, so no iteration
/// over the group is needed.
std::uint64_t element_order(const Element& g, const GroupSpec& spec);

/// Case closed form for canonical-shaped N = 2^t0 * p^r = M:
/// M*p/gcd(a, M) when p^r | a and b != 0, else M/gcd(a, M).
/// Throws domain_error when N is not of canonical shape.
std::uint64_t element_order_closed_form(const Element& g,
                                        const GroupSpec& spec);

/// Order by iterated multiplication. Verification oracle only.
std::uint64_t element_order_iterative(const Element& g, const GroupSpec& spec);

/// Dense index a * p + b, and its inverse.
std::uint64_t element_index(const Element& g, const GroupSpec& spec);
Element element_at(std::uint64_t index, const GroupSpec& spec);

/// "x^a*y^b" form.
std::string to_string(const Element& g);
/// "(a,b)" form.
std::string to_tuple_string(const Element& g);

/// Accepts both "x^a*y^b" and "(a,b)" (whitespace-tolerant), reduces mod
/// (N, p), and round-trips with the printers.
Element parse_element(std::string_view text, const GroupSpec& spec);

}  // namespace hsp
