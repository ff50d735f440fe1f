// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Usage: acceptance [CORPUS_DIR]

#include "arrlevel/families.hpp"
#include "arrlevel/regions.hpp"
#include "arrlevel/semilattice.hpp"
#include "arrlevel/text_format.hpp"
#include "arrlevel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace arrlevel;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i].get_str();
  return out;
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Integer region_count(const Arrangement& a) { return Integer(static_cast<long>(enumerate_regions(a).size())); }

struct Corpus {
  std::vector<std::pair<std::string, Arrangement>> arrangements;
  std::vector<std::pair<std::string, GeometricSemilattice>> posets;
};

Corpus load_corpus(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Corpus c;
  for (const auto& f : files) {
    const std::string text = slurp(f);
    const std::string name = f.filename().string();
    if (f.extension() == ".arr") c.arrangements.emplace_back(name, parse_arrangement(text));
    if (f.extension() == ".poset") c.posets.emplace_back(name, GeometricSemilattice::from_record(parse_poset(text)));
  }
  return c;
}

std::vector<std::pair<std::string, GeometricSemilattice>> all_semilattices(const Corpus& c) {
  auto out = c.posets;
  for (const auto& [name, a] : c.arrangements)
    out.emplace_back("L(" + name + ")", GeometricSemilattice::from_intersection_poset(intersection_poset(a)));
  return out;
}

const Arrangement* find(const Corpus& c, const std::string& name) {
  for (const auto& [n, a] : c.arrangements)
    if (n == name) return &a;
  return nullptr;
}

Outcome braid3() {
  Outcome o;
  const auto a = braid(3);
  const auto p = intersection_poset(a).poset();
  const auto chi = char_poly(p, 3);
  const auto zc = zaslavsky_counts(p, 3);
  const auto hist = level_histogram(a);
  o.require(chi.to_string() == "t^3 - 3*t^2 + 2*t", "chi = " + chi.to_string());
  o.require(zc.regions == 6 && zc.bounded == 0, "r = " + zc.regions.get_str() + ", b = " + zc.bounded.get_str());
  o.require(hist == ints({0, 0, 0, 6}), "histogram " + join(hist));
  o.require(levels_via_formula(a) == hist, "formula " + join(levels_via_formula(a)));
  if (o.ok) o.detail = "chi " + chi.to_string() + ", r 6, b 0, levels " + join(hist);
  return o;
}

Outcome shi3() {
  Outcome o;
  const auto a = shi(3);
  const auto hist = level_histogram(a);
  const auto formula = levels_via_formula(a);
  o.require(region_count(a) == 16, "regions " + region_count(a).get_str());
  o.require(hist == ints({0, 4, 6, 6}), "histogram " + join(hist));
  o.require(formula == hist, "formula " + join(formula));
  const auto chi = chi_from_levels(a);
  o.require(chi.to_string() == "t^3 - 6*t^2 + 9*t", "reconstructed chi " + chi.to_string());
  o.require(chi == char_poly(a), "reconstructed chi differs from the intersection poset's");
  o.require(levels_from_chi_poly(chi, 3) == hist, "inverse gives " + join(levels_from_chi_poly(chi, 3)));
  if (o.ok) o.detail = "16 regions, levels " + join(hist) + " both ways, chi " + chi.to_string() + " and back";
  return o;
}

Outcome catalan3() {
  Outcome o;
  const auto a = catalan(3);
  const auto hist = level_histogram(a);
  o.require(region_count(a) == 30, "regions " + region_count(a).get_str());
  o.require(hist == ints({0, 12, 12, 6}), "histogram " + join(hist));
  o.require(levels_via_formula(a) == hist, "formula " + join(levels_via_formula(a)));
  if (o.ok) o.detail = "30 regions, levels " + join(hist) + " both ways";
  return o;
}

Outcome fuzz() {
  Outcome o;
  const auto r = verify_fuzz(200, 20240601);
  o.require(all_passed(r), r.front().detail);
  if (o.ok) o.detail = r.front().name + ": " + r.front().detail;
  return o;
}

Outcome bijection(const Corpus& c) {
  Outcome o;
  for (const auto& [name, a] : c.arrangements) {
    const auto r = check_bijection(a);
    o.require(r.passed, name + ": " + r.detail);
  }
  if (o.ok) o.detail = std::to_string(c.arrangements.size()) + " corpus arrangements";
  return o;
}

Outcome cone_checks(const Corpus& c) {
  Outcome o;
  for (const auto& [name, a] : c.arrangements) {
    const auto r = check_cone_matches_geometry(a);
    o.require(r.passed, name + ": " + r.detail);
  }
  std::size_t trips = 0;
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t m = k; m <= 6; ++m) {
      // flats of U_{1,m} form the same lattice as those of U_{1,1}
      if (k == 1 && m > 1) continue;
      const auto l = uniform_matroid_flats(k, m);
      for (std::size_t atom = 0; atom < m; ++atom, ++trips) {
        const auto r = check_wachs_round_trip(l, atom);
        o.require(r.passed, "U_{" + std::to_string(k) + "," + std::to_string(m) + "}: " + r.detail);
      }
      const auto sub = remove_atom_filter(l, 0);
      const auto cl = check_closure_laws(sub);
      o.require(cl.passed && cl.detail.find("(all)") != std::string::npos, "closure on U minus atom: " + cl.detail);
      const auto g = check_cone_geometric(cone(sub));
      o.require(g.passed, "cone geometric: " + g.detail);
    }
  std::size_t exhaustive = 0;
  for (const auto& [name, m] : all_semilattices(c)) {
    const auto g = check_cone_geometric(cone(m));
    o.require(g.passed, name + ": " + g.detail);
    if (m.atom_count() <= 8) {
      const auto cl = check_closure_laws(m);
      o.require(cl.passed && cl.detail.find("(all)") != std::string::npos, name + ": " + cl.detail);
      ++exhaustive;
    }
  }
  if (o.ok)
    o.detail = std::to_string(trips) + " round trips, closure laws exhaustive on " + std::to_string(exhaustive) +
               " corpus semilattices with at most 8 atoms";
  return o;
}

Outcome chi_identity(const Corpus& c) {
  Outcome o;
  const auto ms = all_semilattices(c);
  for (const auto& [name, m] : ms) {
    const auto r = chi_identity_check(m);
    o.require(r.equal, name + ": " + r.lhs.to_string() + " vs " + r.rhs.to_string());
  }
  for (const auto& [name, a] : c.arrangements)
    o.require(chi_via_regions(a) == ScaledPolynomial(char_poly(a), Integer(1)), name + ": chi via regions differs");
  if (o.ok)
    o.detail = std::to_string(ms.size()) + " semilattices (" + std::to_string(c.posets.size()) + " abstract), " +
               std::to_string(c.arrangements.size()) + " arrangements";
  return o;
}

Outcome exponential() {
  Outcome o;
  o.require(region_count(shi(4)) == 125, "Shi(4) regions");
  o.require(region_count(catalan(4)) == 336, "Catalan(4) regions");
  for (const std::string name : {"shi", "catalan", "semiorder"}) {
    const auto fam = family_by_name(name);
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::size_t l = 0; l <= n; ++l)
        o.require(exp_level_formula(fam, n, l) == fam.level(n, l),
                  name + " n=" + std::to_string(n) + " l=" + std::to_string(l));
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t l1 = 0; l1 <= 3; ++l1)
        for (std::size_t l2 = 0; l1 + l2 <= 3; ++l2) {
          const auto r = binom_convolution_check(fam, n, l1, l2);
          o.require(r.equal, name + " convolution n=" + std::to_string(n) + ": " + r.lhs.get_str() + " vs " + r.rhs.get_str());
        }
  }
  const auto shi_fam = family_by_name("shi");
  const auto ish_fam = family_by_name("ish");
  for (std::size_t n = 1; n <= 4; ++n) {
    o.require(char_poly(shi(n)) == char_poly(ish(n)), "shi/ish chi at n=" + std::to_string(n));
    o.require(shi_fam.levels(n) == ish_fam.levels(n), "shi/ish levels at n=" + std::to_string(n));
  }
  if (o.ok) o.detail = "shi, catalan, semiorder to n=4; shi(4) levels " + join(shi_fam.levels(4));
  return o;
}

Outcome not_characteristic(const Corpus& c) {
  Outcome o;
  const Arrangement* a1 = find(c, "parallel_transversal.arr");
  const Arrangement* a2 = find(c, "concurrent3.arr");
  o.require(a1 && a2, "corpus files missing");
  if (!o.ok) return o;
  o.require(char_poly(*a1).to_string() == "t^2 - 3*t + 2", "chi(A1) = " + char_poly(*a1).to_string());
  o.require(char_poly(*a2).to_string() == "t^2 - 3*t + 2", "chi(A2) = " + char_poly(*a2).to_string());
  o.require(level_histogram(*a1) == ints({0, 2, 4}), "A1 levels " + join(level_histogram(*a1)));
  o.require(level_histogram(*a2) == ints({0, 0, 6}), "A2 levels " + join(level_histogram(*a2)));
  if (o.ok) o.detail = "same chi t^2 - 3*t + 2, levels 0 2 4 vs 0 0 6";
  return o;
}

Outcome indexing_shift(const Corpus& c) {
  Outcome o;
  for (const auto& [name, a] : c.arrangements) {
    const auto dist = level_distribution(GeometricSemilattice::from_intersection_poset(intersection_poset(a)));
    const auto ess = level_histogram(essentialize(a).arrangement);
    o.require(dist == ess, name + ": " + join(dist) + " vs " + join(ess));
  }
  if (o.ok) o.detail = std::to_string(c.arrangements.size()) + " corpus arrangements";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(ARRLEVEL_CORPUS_DIR);
  Corpus corpus;
  try {
    corpus = load_corpus(dir);
  } catch (const std::exception& e) {
    std::cerr << "cannot load corpus " << dir << ": " << e.what() << "\n";
    return 2;
  }

  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Braid(3) chi, counts and levels", 1, braid3},
      {2, "Shi(3) levels and chi reconstruction", 5, shi3},
      {3, "Catalan(3) levels", 10, catalan3},
      {4, "fuzz: formula = enumeration and extreme levels", 120, fuzz},
      {5, "region bijection on the corpus", 60, [&] { return bijection(corpus); }},
      {6, "cone correctness", 0, [&] { return cone_checks(corpus); }},
      {7, "chi identity and chi via regions", 0, [&] { return chi_identity(corpus); }},
      {8, "exponential family identities", 180, exponential},
      {9, "levels are not determined by chi", 0, [&] { return not_characteristic(corpus); }},
      {10, "semilattice levels = essentialized histogram", 0, [&] { return indexing_shift(corpus); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
    }
    all = all && o.ok;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << "  [" << timing << "]  "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
