// Generates docs/traceability.md from structured source comments.
//
// Every mathematical claim the library implements carries exactly one
//   // claim: <anchor> :: <symbol>
// comment at its implementation site, and at least one test carries a
//   // verifies: <anchor>
// comment. This tool scans the tree, cross-checks both sides against the
// registry below, and emits a markdown table. With --check it instead
// compares the generated table against the committed file and fails on any
// drift, so the doc cannot silently rot.

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RegistryEntry {
  const char* anchor;
  const char* claim;
};

// One row per claim the library is built on. Anchors are stable ids; the
// text states the mathematical fact the marked code implements.
constexpr RegistryEntry kRegistry[] = {
    {"order-p-units",
     "For r >= 2 the units of multiplicative order p in Z*_(2^t0 p^r) are "
     "exactly i*2^t0*p^(r-1) + 1 for i = 1..p-1; for r = 1 there are none."},
    {"twist-order-condition",
     "A twist residue is valid iff it is a unit mod N whose p-th power is 1 "
     "mod N; every valid twist other than 1 has order exactly p."},
    {"semidirect-product-operation",
     "(a1,b1)*(a2,b2) = (a1 + a2*phi11^b1 mod N, b1 + b2 mod p) defines the "
     "group product, with inverse (-a*phi11^(p-b) mod N, p-b mod p)."},
    {"power-closed-form",
     "On N = 2^t0 p^r with the canonical twist, (x^a y^b)^k = "
     "x^(a*k + a*b*u*k(k-1)/2 mod N) y^(b*k mod p) with u = 2^t0 p^(r-1)."},
    {"element-order-formula",
     "On N = 2^t0 p^r: ord(x^a y^b) = N/gcd(a,N) for b = 0; p*N/gcd(a,N) "
     "when p^r | a and b != 0; otherwise lcm(N/gcd(a,N), p)."},
    {"membership-congruence",
     "Membership in the two-generator subgroup at level (t,s,h) is the "
     "single congruence a = h*2^t*p^(s-1)*b (mod 2^t p^s)."},
    {"cyclic-subgroup-elements",
     "On canonical shapes, <(a,b)> = {(a*i mod N, b*i mod p) : 0 <= i < "
     "ord(a,b)} with pairwise-distinct entries."},
    {"subgroup-classification",
     "Every subgroup is C(t,s) = <x^(2^t p^s)>, Y(t) = <x^(2^t), y>, or "
     "T(t,s,h) = <x^(2^t p^s), x^(h 2^t p^(s-1)) y>, pairwise distinct over "
     "the parameter ranges."},
    {"twist-isomorphisms",
     "For every i in [1,p), (a,b) -> (a, b*i^(-1) mod p) is an isomorphism "
     "from the canonical-twist group onto the group twisted by phi11^i."},
    {"coprime-factor-split",
     "When p divides no q-1 over primes q | N, every unit of order dividing "
     "p in Z_N is 1 modulo the p-free part of N."},
    {"reduction-theorem",
     "Under the splitting hypothesis, G = Z_N x| Z_p factors as Z_M0 x "
     "(Z_(p^rk) x| Z_p) with M0 = N/p^rk and inner twist phi11 mod p^rk."},
    {"crt-group-isomorphism",
     "(a,b) -> (a mod M0, (a mod p^rk, b)) is a group isomorphism onto the "
     "product of the split factors."},
    {"product-subgroup-split",
     "Because the split factors have coprime orders, every subgroup of the "
     "product equals the product of its projections."},
    {"coset-constant-oracle",
     "A value table hides H iff it is constant on each left coset of H and "
     "takes [G:H] distinct values."},
    {"coset-grid-subset",
     "On the p x p grid x^(a 2^t p^(s-1)) y^b: a hidden C(t,s) labels all "
     "grid points distinctly, while T(t,s,h) partitions the grid into the p "
     "lines a = h*b + c (mod p)."},
    {"qft-definition",
     "The Fourier transform on Z_d maps |l> to (1/sqrt d) sum_k "
     "exp(+2 pi i k l / d) |k>."},
    {"round-procedure",
     "A round prepares the uniform grid superposition, queries the oracle "
     "once, measures the label register, Fourier transforms both index "
     "registers, and measures (c,d)."},
    {"h-extraction",
     "Every surviving outcome (c != 0) under a two-generator subgroup "
     "satisfies c*h + d = 0 (mod p), so h = -d * c^(-1) mod p."},
    {"twogen-distribution",
     "Under T(t,s,h) the round outcome is uniform with mass 1/p on the p "
     "pairs (c,d) with p | c*h + d."},
    {"cyclic-distribution",
     "Under C(t,s) the round outcome is uniform with mass 1/p^2 on all of "
     "Z_p x Z_p."},
    {"family-decision-rule",
     "If all survivors of a batch agree the subgroup is declared "
     "two-generated with that slope; two distinct survivors declare cyclic; "
     "an empty batch is retried once and then fails."},
    {"abelian-subroutine",
     "Fourier samples over Z_M land on multiples of M/|H|, so the gcd of "
     "enough samples with M recovers the generator index of H."},
    {"single-round-success",
     "Under a two-generator subgroup a round survives (c != 0) with "
     "probability exactly 1 - 1/p, and every survivor yields the true "
     "slope."},
    {"twogen-failure-bound",
     "A batch of k rounds on a two-generator subgroup is entirely "
     "uninformative with probability p^-k."},
    {"cyclic-error-bound",
     "The probability that a cyclic subgroup is misread as two-generated "
     "from one batch is at most (2^k - 1) / p^(k-1)."},
    {"exact-cyclic-error",
     "That misread probability is exactly ((2p-1)^k - p^k) / p^(2k-1)."},
    {"total-success-bound",
     "For every hidden subgroup the family decision succeeds with "
     "probability at least 1 - (2^k p - p + 1) / p^k."},
    {"query-count-scaling",
     "A full solve consumes O(k + log N) oracle queries: one quantum query "
     "per abelian round and per grid round plus O(1) classical checks."},
};

struct Site {
  std::string file;  // relative to root, forward slashes
  std::size_t line = 0;
  std::string symbol;  // claim sites only
};

struct AnchorData {
  std::vector<Site> claims;
  std::vector<Site> verifies;
};

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

bool scan_file(const std::filesystem::path& path, const std::string& rel,
               std::map<std::string, AnchorData>& anchors,
               std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot open " + rel);
    return false;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto claim_pos = line.find("// claim:");
    if (claim_pos != std::string::npos) {
      const std::string rest = trim(line.substr(claim_pos + strlen("// claim:")));
      const auto sep = rest.find("::");
      if (sep == std::string::npos) {
        errors.push_back(rel + ":" + std::to_string(lineno) +
                         ": claim marker missing ':: symbol'");
        continue;
      }
      const std::string anchor = trim(rest.substr(0, sep));
      const std::string symbol = trim(rest.substr(sep + 2));
      anchors[anchor].claims.push_back({rel, lineno, symbol});
      continue;
    }
    const auto ver_pos = line.find("// verifies:");
    if (ver_pos != std::string::npos) {
      const std::string anchor =
          trim(line.substr(ver_pos + strlen("// verifies:")));
      anchors[anchor].verifies.push_back({rel, lineno, ""});
    }
  }
  return true;
}

std::string generate(const std::filesystem::path& root,
                     std::vector<std::string>& errors) {
  std::map<std::string, AnchorData> anchors;
  const std::filesystem::path scan_dirs[] = {root / "core", root / "tests",
                                             root / "benchmarks"};
  for (const auto& dir : scan_dirs) {
    if (!std::filesystem::exists(dir)) continue;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension();
      if (ext != ".cpp" && ext != ".hpp" && ext != ".h") continue;
      const std::string rel =
          std::filesystem::relative(entry.path(), root).generic_string();
      scan_file(entry.path(), rel, anchors, errors);
    }
  }

  // Cross-check against the registry.
  std::map<std::string, const char*> registry;
  for (const auto& entry : kRegistry) registry[entry.anchor] = entry.claim;
  for (const auto& [anchor, data] : anchors) {
    if (registry.find(anchor) == registry.end()) {
      errors.push_back("marker uses unknown anchor '" + anchor + "' (" +
                       (data.claims.empty() ? data.verifies.front().file
                                            : data.claims.front().file) +
                       ")");
    }
  }
  for (const auto& [anchor, claim] : registry) {
    (void)claim;
    const auto it = anchors.find(anchor);
    const std::size_t nclaims = it == anchors.end() ? 0 : it->second.claims.size();
    const std::size_t nverifies =
        it == anchors.end() ? 0 : it->second.verifies.size();
    if (nclaims == 0) {
      errors.push_back("anchor '" + anchor + "' has no claim site");
    } else if (nclaims > 1) {
      errors.push_back("anchor '" + anchor + "' has " +
                       std::to_string(nclaims) + " claim sites; expected 1");
    }
    if (nverifies == 0) {
      errors.push_back("anchor '" + anchor + "' has no verifying test");
    }
  }

  std::ostringstream out;
  out << "# Claim traceability\n\n"
      << "Generated by `hsp-trace --root . --out docs/traceability.md`; the "
         "`traceability` ctest entry fails when this file is stale.\n"
      << "Each anchor names one mathematical claim, implemented at exactly "
         "one marked site and checked by at least one marked test.\n\n"
      << "| anchor | claim | implementation | verified by |\n"
      << "|---|---|---|---|\n";
  for (const auto& [anchor, claim] : registry) {
    const auto it = anchors.find(anchor);
    out << "| `" << anchor << "` | " << claim << " | ";
    if (it != anchors.end() && !it->second.claims.empty()) {
      const Site& site = it->second.claims.front();
      out << "`" << site.symbol << "` (" << site.file << ":" << site.line
          << ")";
    } else {
      out << "(missing)";
    }
    out << " | ";
    if (it != anchors.end() && !it->second.verifies.empty()) {
      std::vector<std::string> refs;
      for (const Site& site : it->second.verifies) {
        refs.push_back(site.file + ":" + std::to_string(site.line));
      }
      std::sort(refs.begin(), refs.end());
      for (std::size_t i = 0; i < refs.size(); ++i) {
        if (i != 0) out << ", ";
        out << refs[i];
      }
    } else {
      out << "(missing)";
    }
    out << " |\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path root = ".";
  std::filesystem::path out_path;
  bool check = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--root" && i + 1 < argc) {
      root = argv[++i];
    } else if (arg == "--out" && i + 1 < argc) {
      out_path = argv[++i];
    } else if (arg == "--check") {
      check = true;
    } else {
      std::cerr << "usage: hsp-trace [--root DIR] [--out FILE] [--check]\n";
      return 2;
    }
  }

  std::vector<std::string> errors;
  const std::string doc = generate(root, errors);
  if (!errors.empty()) {
    for (const auto& message : errors) std::cerr << "error: " << message << "\n";
    return 1;
  }

  if (check) {
    const std::filesystem::path committed = root / "docs" / "traceability.md";
    std::ifstream in(committed);
    if (!in) {
      std::cerr << "error: " << committed.generic_string() << " is missing\n";
      return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (buffer.str() != doc) {
      std::cerr << "error: docs/traceability.md is stale; regenerate with "
                   "hsp-trace --root . --out docs/traceability.md\n";
      return 1;
    }
    return 0;
  }

  if (out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(out_path);
    out << doc;
    if (!out) {
      std::cerr << "error: cannot write " << out_path.generic_string() << "\n";
      return 1;
    }
  }
  return 0;
}
