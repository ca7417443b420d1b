#include "hsp/modmath.hpp"

#include <numeric>
#include <string>

#include "hsp/errors.hpp"

namespace hsp {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

}  // namespace

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (const auto& f : factors) {
    for (std::uint32_t i = 0; i < f.exponent; ++i) v *= f.prime;
  }
  return v;
}

Factorization factorize(std::uint64_t n) {
  require(n >= 2, "factorize: n must be at least 2");
  require(n <= kMaxModulus, "factorize: n exceeds supported bound 2^31");
  Factorization out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.factors.push_back({d, e});
  }
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
  require(n >= 1, "euler_phi: n must be positive");
  if (n == 1) return 1;
  std::uint64_t phi = 1;
  for (const auto& f : factorize(n).factors) {
    std::uint64_t pe = 1;
    for (std::uint32_t i = 0; i + 1 < f.exponent; ++i) pe *= f.prime;
    phi *= pe * (f.prime - 1);
  }
  return phi;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  require(m >= 1 && m <= kMaxModulus, "mul_mod: modulus out of range");
  return (a % m) * (b % m) % m;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  require(m >= 1 && m <= kMaxModulus, "pow_mod: modulus out of range");
  std::uint64_t base = a % m;
  std::uint64_t acc = 1 % m;
  while (e > 0) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return acc;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  require(m >= 2, "multiplicative_order: modulus must be at least 2");
  require(std::gcd(a % m, m) == 1, "multiplicative_order: a not a unit");
  // The order divides phi(m); scan its divisors in increasing order.
  const std::uint64_t phi = euler_phi(m);
  std::uint64_t best = phi;
  for (std::uint64_t d = 1; d * d <= phi; ++d) {
    if (phi % d != 0) continue;
    if (d < best && pow_mod(a, d, m) == 1) best = d;
    const std::uint64_t e = phi / d;
    if (e < best && pow_mod(a, e, m) == 1) best = e;
  }
  return best;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  require(m >= 1 && m <= kMaxModulus, "mod_inverse: modulus out of range");
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  require(r == 1, "mod_inverse: a not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

namespace {

std::uint64_t two_p_to_r(std::uint64_t p, std::uint32_t r) {
  std::uint64_t m = 2;
  for (std::uint32_t i = 0; i < r; ++i) {
    if (m > kMaxModulus / p) throw domain_error("2*p^r exceeds 2^31");
    m *= p;
  }
  return m;
}

void require_odd_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) {
    throw domain_error("p must be an odd prime");
  }
}

}  // namespace

// claim: order-p-units :: hsp::order_p_elements
std::vector<std::uint64_t> order_p_elements(std::uint64_t p, std::uint32_t r) {
  require_odd_prime(p);
  require(r >= 1, "order_p_elements: r must be at least 1");
  const std::uint64_t m = two_p_to_r(p, r);
  std::vector<std::uint64_t> out;
  if (r == 1) {
    // |Z_{2p}^*| = p - 1 is not divisible by p, so no unit has order p.
    return out;
  }
  std::uint64_t step = 2;  // 2 * p^{r-1}
  for (std::uint32_t i = 0; i + 1 < r; ++i) step *= p;
  out.reserve(p - 1);
  for (std::uint64_t i = 1; i < p; ++i) {
    const std::uint64_t u = (i * step + 1) % m;
    if (multiplicative_order(u, m) != p) {
      throw theory_violation("order_p_elements: closed-form unit " +
                             std::to_string(u) + " does not have order " +
                             std::to_string(p) + " mod " + std::to_string(m));
    }
    out.push_back(u);
  }
  return out;
}

std::vector<std::uint64_t> order_p_elements_scan(std::uint64_t p,
                                                 std::uint32_t r) {
  require_odd_prime(p);
  require(r >= 1, "order_p_elements_scan: r must be at least 1");
  const std::uint64_t m = two_p_to_r(p, r);
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 1; u < m; ++u) {
    if (std::gcd(u, m) != 1) continue;
    if (multiplicative_order(u, m) == p) out.push_back(u);
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> crt_split(std::uint64_t a,
                                                  std::uint64_t m1,
                                                  std::uint64_t m2) {
  require(m1 >= 1 && m2 >= 1, "crt_split: moduli must be positive");
  require(std::gcd(m1, m2) == 1, "crt_split: moduli must be coprime");
  return {a % m1, a % m2};
}

std::uint64_t crt_combine(std::uint64_t a1, std::uint64_t m1, std::uint64_t a2,
                          std::uint64_t m2) {
  require(m1 >= 1 && m2 >= 1, "crt_combine: moduli must be positive");
  require(std::gcd(m1, m2) == 1, "crt_combine: moduli must be coprime");
  require(m1 <= kMaxModulus / m2, "crt_combine: product modulus exceeds 2^31");
  a1 %= m1;
  a2 %= m2;
  if (m1 == 1) return a2;
  if (m2 == 1) return a1;
  // a = a1 + m1 * ((a2 - a1) / m1 mod m2)
  const std::uint64_t diff = (a2 + m2 - a1 % m2) % m2;
  const std::uint64_t t = diff * mod_inverse(m1 % m2, m2) % m2;
  return a1 + m1 * t;
}

}  // namespace hsp
