#include "hsp/subgroups.hpp"

#include <algorithm>
#include <set>

#include "hsp/errors.hpp"
#include "hsp/modmath.hpp"

namespace hsp {
namespace {

const CanonicalShape& require_shape(const GroupSpec& spec,
                                    const char* where) {
  const auto& shape = spec.canonical_shape();
  if (!shape) {
    throw domain_error(std::string(where) +
                       ": N is not of the form 2^t0 * p^r");
  }
  return *shape;
}

/// 2^t * p^s.
std::uint64_t stride(const GroupSpec& spec, std::uint32_t t, std::uint32_t s) {
  std::uint64_t d = t == 1 ? 2 : 1;
  for (std::uint32_t i = 0; i < s; ++i) d *= spec.p();
  return d;
}

void check_range(const GroupSpec& spec, std::uint32_t t, std::uint32_t s,
                 bool s_positive, const char* what) {
  const CanonicalShape& shape = require_shape(spec, what);
  if (t > shape.t0) {
    throw domain_error(std::string(what) + ": t exceeds t0");
  }
  if (s > shape.r) {
    throw domain_error(std::string(what) + ": s exceeds r");
  }
  if (s_positive && s == 0) {
    throw domain_error(std::string(what) + ": s must be at least 1");
  }
}

}  // namespace

ExplicitSetDesc make_explicit_set(std::vector<Element> elements,
                                  const GroupSpec& spec) {
  if (elements.empty()) {
    throw domain_error("explicit subgroup: element list is empty");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  for (const Element& g : elements) {
    if (g.a >= spec.n() || g.b >= spec.p()) {
      throw domain_error("explicit subgroup: element out of range");
    }
  }
  auto contains = [&](const Element& g) {
    return std::binary_search(elements.begin(), elements.end(), g);
  };
  if (!contains(identity())) {
    throw domain_error("explicit subgroup: identity missing");
  }
  // Closure under the operation implies closure under inverse for finite
  // sets, but both are checked to pinpoint the failure.
  for (const Element& g : elements) {
    if (!contains(inv(g, spec))) {
      throw domain_error("explicit subgroup: not closed under inverse at " +
                         to_tuple_string(g));
    }
  }
  const std::size_t n = elements.size();
  const bool exhaustive = n <= 4096;
  if (exhaustive) {
    for (const Element& g1 : elements) {
      for (const Element& g2 : elements) {
        if (!contains(mul(g1, g2, spec))) {
          throw domain_error("explicit subgroup: not closed under product " +
                             to_tuple_string(g1) + " * " +
                             to_tuple_string(g2));
        }
      }
    }
  } else {
    // Deterministic sample: products of stride-offset pairs.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i * 2654435761u + 1) % n;
      if (!contains(mul(elements[i], elements[j], spec))) {
        throw domain_error("explicit subgroup: not closed under product");
      }
    }
  }
  return ExplicitSetDesc{std::move(elements)};
}

void validate_desc(const SubgroupDesc& desc, const GroupSpec& spec) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicXDesc>) {
          check_range(spec, d.t, d.s, false, "CyclicX");
        } else if constexpr (std::is_same_v<T, TwoGenDesc>) {
          check_range(spec, d.t, d.s, true, "TwoGen");
          if (d.h >= spec.p()) {
            throw domain_error("TwoGen: h must lie in [0, p)");
          }
        } else if constexpr (std::is_same_v<T, YJoinDesc>) {
          check_range(spec, d.t, 0, false, "YJoin");
        } else {
          // Re-validate the set; catches hand-built descriptors.
          make_explicit_set(d.elements, spec);
        }
      },
      desc);
}

std::uint64_t subgroup_order(const SubgroupDesc& desc, const GroupSpec& spec) {
  validate_desc(desc, spec);
  return std::visit(
      [&](const auto& d) -> std::uint64_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicXDesc>) {
          return spec.n() / stride(spec, d.t, d.s);
        } else if constexpr (std::is_same_v<T, TwoGenDesc>) {
          return spec.p() * (spec.n() / stride(spec, d.t, d.s));
        } else if constexpr (std::is_same_v<T, YJoinDesc>) {
          return spec.p() * (spec.n() / stride(spec, d.t, 0));
        } else {
          return d.elements.size();
        }
      },
      desc);
}

// claim: membership-congruence :: hsp::membership
bool membership(const SubgroupDesc& desc, const Element& g,
                const GroupSpec& spec) {
  if (g.a >= spec.n() || g.b >= spec.p()) {
    throw domain_error("membership: element out of range");
  }
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicXDesc>) {
          return g.b == 0 && g.a % stride(spec, d.t, d.s) == 0;
        } else if constexpr (std::is_same_v<T, TwoGenDesc>) {
          // x^a y^b lies in the subgroup iff a = h * 2^t p^{s-1} * b
          // modulo 2^t p^s.
          const std::uint64_t mod = stride(spec, d.t, d.s);
          const std::uint64_t base = stride(spec, d.t, d.s - 1);
          const std::uint64_t want = d.h % spec.p() * base % mod * (g.b % mod) % mod;
          return g.a % mod == want;
        } else if constexpr (std::is_same_v<T, YJoinDesc>) {
          return g.a % stride(spec, d.t, 0) == 0;
        } else {
          return std::binary_search(d.elements.begin(), d.elements.end(), g);
        }
      },
      desc);
}

std::vector<Element> elements_of(const SubgroupDesc& desc,
                                 const GroupSpec& spec) {
  validate_desc(desc, spec);
  std::vector<Element> out;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicXDesc>) {
          const std::uint64_t step = stride(spec, d.t, d.s);
          for (std::uint64_t a = 0; a < spec.n(); a += step) {
            out.push_back({a, 0});
          }
        } else if constexpr (std::is_same_v<T, TwoGenDesc>) {
          const std::uint64_t mod = stride(spec, d.t, d.s);
          const std::uint64_t base = stride(spec, d.t, d.s - 1);
          for (std::uint64_t b = 0; b < spec.p(); ++b) {
            const std::uint64_t r0 = d.h * base % mod * b % mod;
            for (std::uint64_t a = r0; a < spec.n(); a += mod) {
              out.push_back({a, b});
            }
          }
          std::sort(out.begin(), out.end());
        } else if constexpr (std::is_same_v<T, YJoinDesc>) {
          const std::uint64_t step = stride(spec, d.t, 0);
          for (std::uint64_t a = 0; a < spec.n(); a += step) {
            for (std::uint64_t b = 0; b < spec.p(); ++b) {
              out.push_back({a, b});
            }
          }
        } else {
          out = d.elements;
        }
      },
      desc);
  return out;
}

std::vector<Element> subgroup_generators(const SubgroupDesc& desc,
                                         const GroupSpec& spec) {
  validate_desc(desc, spec);
  return std::visit(
      [&](const auto& d) -> std::vector<Element> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicXDesc>) {
          return {Element{stride(spec, d.t, d.s) % spec.n(), 0}};
        } else if constexpr (std::is_same_v<T, TwoGenDesc>) {
          return {Element{stride(spec, d.t, d.s) % spec.n(), 0},
                  Element{d.h * stride(spec, d.t, d.s - 1) % spec.n(), 1}};
        } else if constexpr (std::is_same_v<T, YJoinDesc>) {
          return {Element{stride(spec, d.t, 0) % spec.n(), 0}, Element{0, 1}};
        } else {
          return d.elements;
        }
      },
      desc);
}

std::vector<Element> closure(std::span<const Element> gens,
                             const GroupSpec& spec,
                             std::uint64_t max_group_order) {
  if (spec.order() > max_group_order) {
    throw domain_error("closure: |G| exceeds the configured bound");
  }
  for (const Element& g : gens) {
    if (g.a >= spec.n() || g.b >= spec.p()) {
      throw domain_error("closure: generator out of range");
    }
  }
  std::vector<char> seen(spec.order(), 0);
  std::vector<Element> members;
  std::vector<Element> frontier;
  seen[element_index(identity(), spec)] = 1;
  members.push_back(identity());
  frontier.push_back(identity());
  // Right-multiplying by generators and their inverses from the identity
  // reaches exactly the generated subgroup.
  std::vector<Element> step;
  step.reserve(gens.size() * 2);
  for (const Element& g : gens) {
    step.push_back(g);
    step.push_back(inv(g, spec));
  }
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& u : frontier) {
      for (const Element& g : step) {
        const Element v = mul(u, g, spec);
        auto& flag = seen[element_index(v, spec)];
        if (!flag) {
          flag = 1;
          members.push_back(v);
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

// claim: cyclic-subgroup-elements :: hsp::cyclic_elements
std::vector<Element> cyclic_elements(const Element& g, const GroupSpec& spec) {
  require_shape(spec, "cyclic_elements");
  if (g.a >= spec.n() || g.b >= spec.p()) {
    throw domain_error("cyclic_elements: element out of range");
  }
  const std::uint64_t ord = element_order(g, spec);
  std::vector<Element> out;
  out.reserve(ord);
  for (std::uint64_t i = 0; i < ord; ++i) {
    out.push_back({g.a * i % spec.n(), g.b * i % spec.p()});
  }
  return out;
}

// claim: subgroup-classification :: hsp::enumerate_subgroups
std::vector<SubgroupDesc> enumerate_subgroups(const GroupSpec& spec) {
  const auto& shape = require_shape(spec, "enumerate_subgroups");
  std::vector<SubgroupDesc> out;
  for (std::uint32_t t = 0; t <= shape.t0; ++t) {
    for (std::uint32_t s = 0; s <= shape.r; ++s) {
      out.push_back(CyclicXDesc{t, s});
    }
  }
  for (std::uint32_t t = 0; t <= shape.t0; ++t) {
    out.push_back(YJoinDesc{t});
  }
  for (std::uint32_t t = 0; t <= shape.t0; ++t) {
    for (std::uint32_t s = 1; s <= shape.r; ++s) {
      for (std::uint64_t h = 0; h < spec.p(); ++h) {
        out.push_back(TwoGenDesc{t, s, h});
      }
    }
  }
  // The families are pairwise distinct by construction; verify cheaply when
  // the group is small enough to materialize.
  if (spec.order() <= 100'000) {
    std::set<std::vector<Element>> sets;
    for (const auto& d : out) {
      if (!sets.insert(elements_of(d, spec)).second) {
        throw theory_violation("enumerate_subgroups: duplicate subgroup " +
                               to_string(d));
      }
    }
  }
  return out;
}

std::vector<std::vector<Element>> enumerate_subgroups_bruteforce(
    const GroupSpec& spec) {
  if (spec.order() > 100'000) {
    throw domain_error("enumerate_subgroups_bruteforce: group too large");
  }
  std::set<std::vector<Element>> found;
  found.insert({identity()});
  for (std::uint64_t idx = 0; idx < spec.order(); ++idx) {
    const Element g = element_at(idx, spec);
    found.insert(closure(std::span<const Element>(&g, 1), spec));
  }
  // Close the collection under pairwise joins.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<Element>> snapshot(found.begin(),
                                                     found.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        std::vector<Element> gens = snapshot[i];
        gens.insert(gens.end(), snapshot[j].begin(), snapshot[j].end());
        auto joined = closure(gens, spec);
        if (found.insert(std::move(joined)).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

CosetLabel coset_label(const SubgroupDesc& desc, const Element& g,
                       const GroupSpec& spec) {
  validate_desc(desc, spec);
  if (g.a >= spec.n() || g.b >= spec.p()) {
    throw domain_error("coset_label: element out of range");
  }
  Element best = g;
  for (const Element& h : elements_of(desc, spec)) {
    best = std::min(best, mul(g, h, spec));
  }
  return CosetLabel{best};
}

SubgroupDesc canonicalize(const SubgroupDesc& desc, const GroupSpec& spec) {
  validate_desc(desc, spec);
  const auto& shape = spec.canonical_shape();
  if (!shape) {
    if (std::holds_alternative<ExplicitSetDesc>(desc)) {
      return desc;  // already validated and sorted
    }
    throw domain_error(
        "canonicalize: structured descriptors require canonical shape");
  }
  if (const auto* two = std::get_if<TwoGenDesc>(&desc)) {
    return TwoGenDesc{two->t, two->s, two->h % spec.p()};
  }
  if (!std::holds_alternative<ExplicitSetDesc>(desc)) {
    return desc;
  }
  // Classify the explicit set. H' = H intersect <x> determines (t, s); the
  // index [H : H'] (1 or p) separates the three families.
  const auto& set = std::get<ExplicitSetDesc>(desc).elements;
  std::uint64_t xcount = 0;
  for (const Element& g : set) {
    if (g.b == 0) ++xcount;
  }
  const std::uint64_t d = spec.n() / xcount;  // <x^d> = H'
  std::uint32_t t = 0;
  std::uint64_t rest = d;
  if (rest % 2 == 0) {
    t = 1;
    rest /= 2;
  }
  std::uint32_t s = 0;
  while (rest % spec.p() == 0) {
    rest /= spec.p();
    ++s;
  }
  if (rest != 1) {
    throw theory_violation("canonicalize: H' index is not of the form 2^t p^s");
  }
  if (set.size() == xcount) {
    return CyclicXDesc{t, s};
  }
  if (set.size() != xcount * spec.p()) {
    throw theory_violation("canonicalize: [H : H'] is neither 1 nor p");
  }
  if (s == 0) {
    return YJoinDesc{t};
  }
  // Read h off any member with b = 1: a = h * 2^t p^{s-1} mod 2^t p^s.
  const std::uint64_t base = stride(spec, t, s - 1);
  const std::uint64_t mod = stride(spec, t, s);
  for (const Element& g : set) {
    if (g.b != 1) continue;
    const std::uint64_t a0 = g.a % mod;
    if (a0 % base != 0) {
      throw theory_violation("canonicalize: member violates the congruence");
    }
    return TwoGenDesc{t, s, a0 / base % spec.p()};
  }
  throw theory_violation("canonicalize: no member with b = 1");
}

bool same_subgroup(const SubgroupDesc& lhs, const SubgroupDesc& rhs,
                   const GroupSpec& spec) {
  return canonicalize(lhs, spec) == canonicalize(rhs, spec);
}

// claim: twist-isomorphisms :: hsp::isomorphism_psi
Element isomorphism_psi(std::uint64_t i, const Element& g,
                        const GroupSpec& from, const GroupSpec& to) {
  if (from.n() != to.n() || from.p() != to.p()) {
    throw domain_error("isomorphism_psi: specs must share N and p");
  }
  const auto& shape = require_shape(from, "isomorphism_psi");
  if (shape.r < 2) {
    throw domain_error("isomorphism_psi: requires r >= 2");
  }
  if (from.phi11() != canonical_phi11(shape.t0, from.p(), shape.r)) {
    throw domain_error("isomorphism_psi: source spec must carry the "
                       "canonical twist");
  }
  if (i < 1 || i >= from.p()) {
    throw domain_error("isomorphism_psi: i must lie in [1, p)");
  }
  if (to.phi11() != pow_mod(from.phi11(), i, from.n())) {
    throw domain_error("isomorphism_psi: target twist is not canonical^i");
  }
  if (g.a >= from.n() || g.b >= from.p()) {
    throw domain_error("isomorphism_psi: element out of range");
  }
  return Element{g.a, g.b * mod_inverse(i, from.p()) % from.p()};
}

std::string to_string(const SubgroupDesc& desc) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicXDesc>) {
          return "C(" + std::to_string(d.t) + "," + std::to_string(d.s) + ")";
        } else if constexpr (std::is_same_v<T, TwoGenDesc>) {
          return "T(" + std::to_string(d.t) + "," + std::to_string(d.s) + "," +
                 std::to_string(d.h) + ")";
        } else if constexpr (std::is_same_v<T, YJoinDesc>) {
          return "Y(" + std::to_string(d.t) + ")";
        } else {
          std::string out = "E{";
          for (std::size_t i = 0; i < d.elements.size(); ++i) {
            if (i > 0) out += ",";
            out += to_tuple_string(d.elements[i]);
          }
          return out + "}";
        }
      },
      desc);
}

namespace {

std::uint64_t parse_number(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') {
    throw domain_error("parse: expected a number in '" + std::string(text) +
                       "'");
  }
  std::uint64_t v = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
    ++pos;
  }
  return v;
}

void expect(std::string_view text, std::size_t& pos, char c) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || text[pos] != c) {
    throw domain_error(std::string("parse: expected '") + c + "' in '" +
                       std::string(text) + "'");
  }
  ++pos;
}

}  // namespace

SubgroupDesc parse_subgroup(std::string_view text, const GroupSpec& spec) {
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size()) throw domain_error("parse: empty subgroup text");
  const char kind = text[pos++];
  SubgroupDesc desc;
  switch (kind) {
    case 'C': {
      expect(text, pos, '(');
      const auto t = parse_number(text, pos);
      expect(text, pos, ',');
      const auto s = parse_number(text, pos);
      expect(text, pos, ')');
      desc = CyclicXDesc{static_cast<std::uint32_t>(t),
                         static_cast<std::uint32_t>(s)};
      break;
    }
    case 'T': {
      expect(text, pos, '(');
      const auto t = parse_number(text, pos);
      expect(text, pos, ',');
      const auto s = parse_number(text, pos);
      expect(text, pos, ',');
      const auto h = parse_number(text, pos);
      expect(text, pos, ')');
      desc = TwoGenDesc{static_cast<std::uint32_t>(t),
                        static_cast<std::uint32_t>(s), h};
      break;
    }
    case 'Y': {
      expect(text, pos, '(');
      const auto t = parse_number(text, pos);
      expect(text, pos, ')');
      desc = YJoinDesc{static_cast<std::uint32_t>(t)};
      break;
    }
    case 'E': {
      expect(text, pos, '{');
      std::vector<Element> elements;
      while (true) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos < text.size() && text[pos] == '}') {
          ++pos;
          break;
        }
        expect(text, pos, '(');
        const auto a = parse_number(text, pos);
        expect(text, pos, ',');
        const auto b = parse_number(text, pos);
        expect(text, pos, ')');
        if (a >= spec.n() || b >= spec.p()) {
          throw domain_error("parse: subgroup element out of range");
        }
        elements.push_back({a, b});
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos < text.size() && text[pos] == ',') ++pos;
      }
      desc = make_explicit_set(std::move(elements), spec);
      break;
    }
    default:
      throw domain_error("parse: subgroup must start with C, T, Y, or E");
  }
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos != text.size()) {
    throw domain_error("parse: trailing characters in subgroup text");
  }
  validate_desc(desc, spec);
  return desc;
}

}  // namespace hsp
