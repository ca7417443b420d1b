#include "hsp/group.hpp"

#include <cctype>
#include <numeric>
#include <string>

#include "hsp/errors.hpp"
#include "hsp/modmath.hpp"

namespace hsp {
namespace {

std::optional<CanonicalShape> detect_shape(std::uint64_t n, std::uint64_t p) {
  std::uint32_t t0 = 0;
  std::uint64_t rest = n;
  if (rest % 2 == 0) {
    t0 = 1;
    rest /= 2;
  }
  if (rest % 2 == 0) return std::nullopt;  // 4 | N
  std::uint32_t r = 0;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1 || r == 0) return std::nullopt;
  return CanonicalShape{t0, r};
}

}  // namespace

GroupSpec::GroupSpec(std::uint64_t n, std::uint64_t p, std::uint64_t phi11)
    : n_(n), p_(p), phi11_(phi11), shape_(detect_shape(n, p)) {
  phi_pow_.resize(p_);
  phi_pow_[0] = 1 % n_;
  for (std::uint64_t b = 1; b < p_; ++b) {
    phi_pow_[b] = phi_pow_[b - 1] * phi11_ % n_;
  }
}

// claim: twist-order-condition :: hsp::validate_spec
GroupSpec validate_spec(std::uint64_t n, std::uint64_t p,
                        std::uint64_t phi11) {
  if (n < 2) throw domain_error("spec: N must be at least 2");
  if (n > kMaxModulus) throw domain_error("spec: N exceeds supported 2^31");
  if (p < 3 || !is_prime(p)) throw domain_error("spec: p must be an odd prime");
  if (phi11 < 1 || phi11 >= n) {
    throw domain_error("spec: phi11 must lie in [1, N)");
  }
  if (std::gcd(phi11, n) != 1) {
    throw domain_error("spec: phi11 must be a unit mod N");
  }
  if (pow_mod(phi11, p, n) != 1) {
    throw domain_error("spec: phi11^p != 1 mod N");
  }
  // For prime p, phi11^p = 1 and phi11 != 1 already force order exactly p;
  // the explicit check keeps the failure message precise.
  if (phi11 != 1 && multiplicative_order(phi11, n) != p) {
    throw domain_error("spec: phi11 has multiplicative order != p");
  }
  return GroupSpec(n, p, phi11);
}

std::uint64_t canonical_phi11(std::uint32_t t0, std::uint64_t p,
                              std::uint32_t r) {
  if (t0 > 1) throw domain_error("canonical_phi11: t0 must be 0 or 1");
  if (r < 1) throw domain_error("canonical_phi11: r must be at least 1");
  if (r == 1) return 1;
  std::uint64_t u = t0 == 1 ? 2 : 1;
  for (std::uint32_t i = 0; i + 1 < r; ++i) u *= p;
  return u + 1;
}

GroupSpec make_canonical_spec(std::uint32_t t0, std::uint64_t p,
                              std::uint32_t r) {
  if (t0 > 1) throw domain_error("make_canonical_spec: t0 must be 0 or 1");
  if (r < 1) throw domain_error("make_canonical_spec: r must be at least 1");
  std::uint64_t n = t0 == 1 ? 2 : 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    if (n > kMaxModulus / p) {
      throw domain_error("make_canonical_spec: 2^t0 * p^r exceeds 2^31");
    }
    n *= p;
  }
  return validate_spec(n, p, canonical_phi11(t0, p, r));
}

// claim: semidirect-product-operation :: hsp::mul
Element mul(const Element& g1, const Element& g2, const GroupSpec& spec) {
  const std::uint64_t a =
      (g1.a + g2.a % spec.n() * spec.phi_power(g1.b)) % spec.n();
  return Element{a, (g1.b + g2.b) % spec.p()};
}

Element inv(const Element& g, const GroupSpec& spec) {
  const std::uint64_t nb = (spec.p() - g.b) % spec.p();
  // phi11^{-b} = phi11^{p-b} since phi11^p = 1.
  const std::uint64_t a =
      (spec.n() - g.a % spec.n()) % spec.n() * spec.phi_power(nb) % spec.n();
  return Element{a, nb};
}

Element pow(const Element& g, std::int64_t k, const GroupSpec& spec) {
  Element base = g;
  if (k < 0) {
    base = inv(g, spec);
    // Negate without overflowing INT64_MIN.
    std::uint64_t mag = static_cast<std::uint64_t>(-(k + 1)) + 1;
    Element acc = identity();
    while (mag > 0) {
      if (mag & 1) acc = mul(acc, base, spec);
      base = mul(base, base, spec);
      mag >>= 1;
    }
    return acc;
  }
  Element acc = identity();
  std::uint64_t mag = static_cast<std::uint64_t>(k);
  while (mag > 0) {
    if (mag & 1) acc = mul(acc, base, spec);
    base = mul(base, base, spec);
    mag >>= 1;
  }
  return acc;
}

// claim: power-closed-form :: hsp::pow_closed_form_2pr
Element pow_closed_form_2pr(const Element& g, std::int64_t k,
                            const GroupSpec& spec) {
  const auto& shape = spec.canonical_shape();
  if (!shape || shape->r < 2 ||
      spec.phi11() != canonical_phi11(shape->t0, spec.p(), shape->r)) {
    throw domain_error(
        "pow_closed_form_2pr: spec is not a canonical 2^t0*p^r group with "
        "the canonical twist and r >= 2");
  }
  const std::uint64_t n = spec.n();
  const std::uint64_t p = spec.p();
  const std::uint64_t u = spec.phi11() - 1;  // 2^t0 * p^{r-1}
  // Reduce the exponent: element orders divide M*p = N*p.
  const std::uint64_t period = n * p;
  std::uint64_t kk;
  if (k >= 0) {
    kk = static_cast<std::uint64_t>(k) % period;
  } else {
    const std::uint64_t mag = (static_cast<std::uint64_t>(-(k + 1)) + 1);
    kk = (period - mag % period) % period;
  }
  // exponent = a*k + a*b*u*k*(k-1)/2, all mod N; k*(k-1)/2 is an integer.
  const std::uint64_t half = kk % 2 == 0 ? kk / 2 % n * ((kk + n - 1) % n) % n
                                         : (kk - 1) / 2 % n * (kk % n) % n;
  std::uint64_t exp = g.a % n * (kk % n) % n;
  exp = (exp + g.a % n * (g.b % n) % n * (u % n) % n * half) % n;
  return Element{exp, g.b * kk % p};
}

std::uint64_t element_order(const Element& g, const GroupSpec& spec) {
  const std::uint64_t n = spec.n();
  if (g.a >= n || g.b >= spec.p()) {
    throw domain_error("element_order: element out of range");
  }
  if (g.b == 0) {
    return n / std::gcd(g.a, n);
  }
  // (a,b)^p = (a * S_b, 0) with S_b = sum_{j<p} (phi11^b)^j; the y component
  // forces p | order, so order = p * |x^{a S_b}|.
  const std::uint64_t mb = spec.phi_power(g.b);
  std::uint64_t s = 0, term = 1;
  for (std::uint64_t j = 0; j < spec.p(); ++j) {
    s = (s + term) % n;
    term = term * mb % n;
  }
  const std::uint64_t ap = g.a % n * s % n;
  return spec.p() * (n / std::gcd(ap, n));
}

// claim: element-order-formula :: hsp::element_order_closed_form
std::uint64_t element_order_closed_form(const Element& g,
                                        const GroupSpec& spec) {
  const auto& shape = spec.canonical_shape();
  if (!shape) {
    throw domain_error(
        "element_order_closed_form: N is not of the form 2^t0 * p^r");
  }
  const std::uint64_t m = spec.n();
  std::uint64_t pr = 1;  // p^r
  for (std::uint32_t i = 0; i < shape->r; ++i) pr *= spec.p();
  if (g.b != 0 && g.a % pr == 0) {
    return m * spec.p() / std::gcd(g.a, m);
  }
  const std::uint64_t base = m / std::gcd(g.a, m);
  return g.b == 0 ? base : std::lcm(base, spec.p());
}

std::uint64_t element_order_iterative(const Element& g,
                                      const GroupSpec& spec) {
  Element acc = g;
  std::uint64_t ord = 1;
  while (acc != identity()) {
    acc = mul(acc, g, spec);
    ++ord;
    if (ord > spec.order()) {
      throw theory_violation("element_order_iterative: order exceeds |G|");
    }
  }
  return ord;
}

std::uint64_t element_index(const Element& g, const GroupSpec& spec) {
  if (g.a >= spec.n() || g.b >= spec.p()) {
    throw domain_error("element_index: element out of range");
  }
  return g.a * spec.p() + g.b;
}

Element element_at(std::uint64_t index, const GroupSpec& spec) {
  if (index >= spec.order()) {
    throw domain_error("element_at: index out of range");
  }
  return Element{index / spec.p(), index % spec.p()};
}

std::string to_string(const Element& g) {
  return "x^" + std::to_string(g.a) + "*y^" + std::to_string(g.b);
}

std::string to_tuple_string(const Element& g) {
  return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                    text[pos]))) {
      ++pos;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool literal(std::string_view lit) {
    skip_ws();
    if (text.substr(pos, lit.size()) == lit) {
      pos += lit.size();
      return true;
    }
    return false;
  }

  std::uint64_t number() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(
                                  text[pos]))) {
      throw domain_error("parse: expected a number in '" + std::string(text) +
                         "'");
    }
    std::uint64_t v = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (UINT64_MAX - digit) / 10) {
        throw domain_error("parse: number overflow in '" + std::string(text) +
                           "'");
      }
      v = v * 10 + digit;
      ++pos;
    }
    return v;
  }

  void expect_end() {
    skip_ws();
    if (pos != text.size()) {
      throw domain_error("parse: trailing characters in '" + std::string(text) +
                         "'");
    }
  }
};

}  // namespace

Element parse_element(std::string_view text, const GroupSpec& spec) {
  Cursor cur{text};
  std::uint64_t a = 0, b = 0;
  cur.skip_ws();
  if (cur.eat('(')) {
    a = cur.number();
    if (!cur.eat(',')) throw domain_error("parse: expected ',' in tuple form");
    b = cur.number();
    if (!cur.eat(')')) throw domain_error("parse: expected ')' in tuple form");
    cur.expect_end();
  } else if (cur.literal("x^")) {
    a = cur.number();
    if (!cur.eat('*') || !cur.literal("y^")) {
      throw domain_error("parse: expected '*y^' after x part");
    }
    b = cur.number();
    cur.expect_end();
  } else {
    throw domain_error("parse: element must be 'x^a*y^b' or '(a,b)'");
  }
  return Element{a % spec.n(), b % spec.p()};
}

}  // namespace hsp
