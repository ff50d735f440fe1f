#include "arrlevel/families.hpp"
#include "arrlevel/regions.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <thread>

using namespace arrlevel;

namespace {

Integer binomial(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Arrangement random_deformation(std::mt19937& rng, std::size_t n, std::size_t max_per_pair) {
  std::vector<std::vector<Rational>> offsets;
  for (std::size_t p = 0; p < n * (n - 1) / 2; ++p) {
    std::vector<Rational> cs;
    for (int c = -2; c <= 2; ++c)
      if (cs.size() < max_per_pair && rng() % 3 == 0) {
        Rational q(c, 1 + rng() % 2);
        q.canonicalize();
        cs.push_back(q);
      }
    if (cs.empty()) cs.emplace_back(static_cast<long>(rng() % 5) - 2);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    offsets.push_back(cs);
  }
  return braid_deformation(n, offsets);
}

}  // namespace

TEST_CASE("generators") {
  CHECK(braid(3).size() == 3);
  CHECK(braid(3).dim() == 3);
  CHECK(shi(3).size() == 6);
  CHECK(catalan(2).size() == 3);
  CHECK(semiorder(3).size() == 6);
  CHECK(ish(3).size() == 6);
  CHECK(braid(1).size() == 0);
  CHECK_THROWS_AS(braid(0), std::invalid_argument);
  CHECK_THROWS_AS(family_by_name("linial"), std::invalid_argument);
  CHECK_THROWS_AS(braid_deformation(3, {{Rational(0)}}), std::invalid_argument);
  for (const auto& name : family_names()) CHECK(is_braid_deformation(family_by_name(name).arrangement(3)));
  CHECK_FALSE(is_braid_deformation(Arrangement::empty(2)));
}

TEST_CASE("known region counts") {
  for (long n = 1; n <= 4; ++n) {
    Integer fact = 1, shi_count = 1;
    for (long k = 2; k <= n; ++k) fact *= k;
    for (long k = 1; k < n; ++k) shi_count *= n + 1;
    CHECK(Integer(static_cast<long>(enumerate_regions(braid(n)).size())) == fact);
    CHECK(Integer(static_cast<long>(enumerate_regions(shi(n)).size())) == shi_count);
    CHECK(Integer(static_cast<long>(enumerate_regions(ish(n)).size())) == shi_count);
    // Catalan(n) has n! C_n regions
    CHECK(Integer(static_cast<long>(enumerate_regions(catalan(n)).size())) == fact * binomial(2 * n, n) / (n + 1));
  }
}

TEST_CASE("exp_level_formula examples") {
  const auto fam = family_by_name("shi");
  CHECK(exp_level_formula(fam, 3, 1) == 4);
  CHECK(exp_level_formula(fam, 3, 2) == 6);
  CHECK(exp_level_formula(fam, 3, 3) == 6);
  CHECK(exp_level_formula(fam, 3, 0) == 0);
  CHECK_THROWS_AS(exp_level_formula(fam, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(exp_level_formula(fam, 2, 3), std::invalid_argument);
  CHECK(fam.bounded_count(0) == 1);
  CHECK(fam.levels(0) == oracle::ints({1}));
  CHECK(fam.level(2, 5) == 0);
}

TEST_CASE("set partitions are counted by Bell numbers") {
  const long bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t n = 0; n <= 5; ++n) CHECK(set_partitions(n).size() == static_cast<std::size_t>(bell[n]));
  for (const auto& p : set_partitions(4)) {
    std::size_t total = 0;
    for (const auto& b : p) total += b.size();
    CHECK(total == 4);
  }
}

TEST_CASE("exponential level formula matches enumeration up to n = 3") {
  for (const auto& name : family_names()) {
    const auto fam = family_by_name(name);
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t l = 0; l <= n; ++l) CHECK(exp_level_formula(fam, n, l) == fam.level(n, l));
  }
}

TEST_CASE("binomial convolution up to n = 3") {
  const auto shi_fam = family_by_name("shi");
  const auto c = binom_convolution_check(shi_fam, 3, 1, 1);
  CHECK(c.equal);
  CHECK(c.lhs == 6);
  for (const auto& name : {"shi", "catalan", "semiorder"}) {
    const auto fam = family_by_name(name);
    for (std::size_t n = 0; n <= 3; ++n)
      for (std::size_t l1 = 0; l1 <= 3; ++l1)
        for (std::size_t l2 = 0; l1 + l2 <= 3; ++l2) CHECK(binom_convolution_check(fam, n, l1, l2).equal);
  }
}

TEST_CASE("chi and levels determine each other for braid deformations") {
  CHECK(chi_from_level_sequence(oracle::ints({0, 4, 6, 6})).to_string() == "t^3 - 6*t^2 + 9*t");
  CHECK(chi_from_level_sequence(oracle::ints({0, 1, 2})).to_string() == "t^2 - 2*t");
  CHECK(chi_from_level_sequence(oracle::ints({0, 0, 0, 6})).to_string() == "t^3 - 3*t^2 + 2*t");
  CHECK(levels_from_chi_poly(IntPolynomial(oracle::ints({0, 9, -6, 1})), 3) == oracle::ints({0, 4, 6, 6}));
  CHECK_THROWS_AS(chi_from_levels(Arrangement::empty(2)), std::invalid_argument);

  for (const auto& name : family_names()) {
    const auto a = family_by_name(name).arrangement(3);
    CHECK(chi_from_levels(a) == char_poly(a));
    CHECK(levels_from_chi(a) == level_histogram(a));
  }
}

TEST_CASE("random braid deformations: levels are a function of chi") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = trial % 5 == 0 ? random_deformation(rng, 4, 2) : random_deformation(rng, 3, 4);
    REQUIRE(is_braid_deformation(a));
    CHECK(levels_from_chi(a) == level_histogram(a));
    CHECK(chi_from_levels(a) == oracle::whitney_chi(a));
  }
}

TEST_CASE("shi and ish agree for n <= 3") {
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(char_poly(shi(n)) == char_poly(ish(n)));
    CHECK(level_histogram(shi(n)) == level_histogram(ish(n)));
  }
}

TEST_CASE("localizations of deformations at partition flats are products") {
  for (const auto& name : {"shi", "catalan"}) {
    const auto fam = family_by_name(name);
    const auto a = fam.arrangement(4);
    for (const auto& blocks : set_partitions(4)) {
      std::vector<RatVector> rows;
      for (const auto& b : blocks)
        for (std::size_t k = 1; k < b.size(); ++k) {
          RatVector r(5, Rational(0));
          r[b[0]] = 1;
          r[b[k]] = -1;
          rows.push_back(r);
        }
      const auto v = AffineSubspace::from_equations(4, rows);
      const auto local = intersection_poset(localization(a, *v).arrangement).poset();
      auto expect = intersection_poset(fam.arrangement(blocks[0].size())).poset();
      for (std::size_t i = 1; i < blocks.size(); ++i)
        expect = product(expect, intersection_poset(fam.arrangement(blocks[i].size())).poset());
      CHECK(poset_isomorphic(local, expect));
    }
  }
}

TEST_CASE("the family memo is safe under concurrent reads") {
  const auto fam = family_by_name("catalan");
  std::vector<std::vector<Integer>> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t) threads.emplace_back([&, t] { seen[t] = fam.levels(3); });
  for (auto& t : threads) t.join();
  for (const auto& s : seen) CHECK(s == oracle::ints({0, 12, 12, 6}));
}
