#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hsp {

/// Largest modulus accepted anywhere in the library. Products of two residues
/// below this bound fit in 64 bits, so all intermediate arithmetic is exact.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with factors sorted by prime.
struct Factorization {
  std::vector<PrimePower> factors;

  /// Recomputes the factored value.
  std::uint64_t value() const;
};

/// Trial-division factorization. Requires 2 <= n <= kMaxModulus.
Factorization factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Euler's totient, computed from the factorization. phi(1) = 1.
std::uint64_t euler_phi(std::uint64_t n);

/// (a * b) mod m, exact for m <= kMaxModulus.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/// (a ^ e) mod m by square and multiply.
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Smallest d >= 1 with a^d = 1 mod m. Requires gcd(a, m) = 1 and m >= 2.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Inverse of a mod m. Requires gcd(a, m) = 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

/// All units of Z_{2p^r} of multiplicative order exactly p, sorted.
///
/// For r >= 2 these are exactly { 2*i*p^{r-1} + 1 : i = 1..p-1 }; the closed
/// form is used and every returned value's order is asserted. For r = 1 the
/// unit group has order p-1, which p does not divide, so the result is empty.
/// Requires p an odd prime.
std::vector<std::uint64_t> order_p_elements(std::uint64_t p, std::uint32_t r);

/// Brute-force scan of all units of Z_{2p^r} for order exactly p. Slow oracle
/// counterpart of order_p_elements, kept for verification.
std::vector<std::uint64_t> order_p_elements_scan(std::uint64_t p,
                                                 std::uint32_t r);

/// Residues of a modulo the coprime pair (m1, m2).
std::pair<std::uint64_t, std::uint64_t> crt_split(std::uint64_t a,
                                                  std::uint64_t m1,
                                                  std::uint64_t m2);

/// Unique a mod m1*m2 with a = a1 mod m1 and a = a2 mod m2.
/// Requires gcd(m1, m2) = 1 and m1*m2 <= kMaxModulus.
std::uint64_t crt_combine(std::uint64_t a1, std::uint64_t m1, std::uint64_t a2,
                          std::uint64_t m2);

}  // namespace hsp
