#include "arrlevel/families.hpp"
#include "arrlevel/posets.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace arrlevel;

namespace {

RankedPoset boolean_lattice(std::size_t n) {
  std::vector<AtomSet> sets;
  std::vector<int> ranks;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    sets.push_back(AtomSet::from_bits(s));
    ranks.push_back(std::popcount(s));
  }
  return RankedPoset::from_atom_sets(sets, ranks);
}

RankedPoset chain(std::size_t length) {
  std::vector<int> ranks;
  std::vector<std::vector<bool>> leq(length + 1, std::vector<bool>(length + 1));
  for (std::size_t i = 0; i <= length; ++i) {
    ranks.push_back(static_cast<int>(i));
    for (std::size_t j = i; j <= length; ++j) leq[i][j] = true;
  }
  return RankedPoset(ranks, leq);
}

/// Same poset with elements listed in the order `perm`.
RankedPoset relabel(const RankedPoset& p, const std::vector<std::size_t>& perm) {
  std::vector<int> ranks(p.size());
  std::vector<std::vector<bool>> leq(p.size(), std::vector<bool>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    ranks[i] = p.rank(perm[i]);
    for (std::size_t j = 0; j < p.size(); ++j) leq[i][j] = p.leq(perm[i], perm[j]);
  }
  return RankedPoset(ranks, leq);
}

/// Random down-closed family of subsets of {0..n-1} (a simplicial complex),
/// ordered by inclusion.
RankedPoset random_complex(std::mt19937& rng, std::size_t n) {
  std::vector<AtomSet> facets;
  for (int k = 0; k < 3; ++k) facets.push_back(AtomSet::from_bits(rng() % (std::uint64_t{1} << n)));
  std::vector<AtomSet> sets;
  std::vector<int> ranks;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const auto a = AtomSet::from_bits(s);
    if (s == 0 || std::any_of(facets.begin(), facets.end(), [&](AtomSet f) { return a.subset_of(f); })) {
      sets.push_back(a);
      ranks.push_back(static_cast<int>(a.size()));
    }
  }
  return RankedPoset::from_atom_sets(sets, ranks);
}

}  // namespace

TEST_CASE("atom sets") {
  const auto s = AtomSet::of({0, 3, 5});
  CHECK(s.size() == 3);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.to_string() == "{0,3,5}");
  CHECK(s.without(3).with(4) == AtomSet::of({0, 4, 5}));
  CHECK(AtomSet::of({0, 5}).subset_of(s));
  CHECK(s.indices() == std::vector<std::size_t>{0, 3, 5});
  CHECK(AtomSet::singleton(63).contains(63));
}

TEST_CASE("polynomials") {
  const auto p = IntPolynomial(oracle::ints({0, 9, -6, 1}));
  CHECK(p.to_string() == "t^3 - 6*t^2 + 9*t");
  CHECK(p.evaluate(Integer(3)) == 0);
  CHECK(p.evaluate(Integer(-1)) == -16);
  CHECK(IntPolynomial::falling_factorial(3).to_string() == "t^3 - 3*t^2 + 2*t");
  CHECK(IntPolynomial().to_string() == "0");
  CHECK(IntPolynomial::monomial(0, -1).to_string() == "-1");
  CHECK((p - p).is_zero());
  const ScaledPolynomial half(IntPolynomial(oracle::ints({0, 2})), Integer(4));
  CHECK(half.to_string() == "(t)/2");
  CHECK((half + half).is_integral());
}

TEST_CASE("ranked posets reject bad input") {
  CHECK_THROWS_AS(RankedPoset({0, 1}, {{true, false}, {false, true}}), std::invalid_argument);
  CHECK_THROWS_AS(RankedPoset({0, 2}, {{true, true}, {false, true}}), std::invalid_argument);
  CHECK_THROWS_AS(RankedPoset({0, 1, 1}, {{true, true, false}, {false, true, true}, {false, true, true}}),
                  std::invalid_argument);
}

TEST_CASE("moebius examples") {
  const auto pi3 = intersection_poset(braid(3)).poset();
  CHECK(pi3.mobius(pi3.min_element(), pi3.level(2)[0]) == 2);
  const auto b2 = boolean_lattice(2);
  CHECK(b2.mobius(0, 3) == 1);
  for (std::size_t s = 0; s < pi3.size(); ++s) CHECK(pi3.mobius(s, s) == 1);
  CHECK_THROWS_AS(b2.mobius(1, 2), std::invalid_argument);
}

TEST_CASE("moebius agrees with the defining recursion on random complexes") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_complex(rng, 3 + trial % 4);
    const auto leq = oracle::leq_matrix(p);
    for (std::size_t s = 0; s < p.size(); ++s)
      for (std::size_t t = 0; t < p.size(); ++t)
        if (p.leq(s, t)) CHECK(p.mobius(s, t) == oracle::brute_mobius(leq, s, t));
  }
}

TEST_CASE("moebius sums vanish over nontrivial intervals") {
  const auto p = intersection_poset(shi(3)).poset();
  for (std::size_t s = 0; s < p.size(); ++s)
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (!p.leq(s, t)) continue;
      std::int64_t up = 0, down = 0;
      for (std::size_t u = 0; u < p.size(); ++u)
        if (p.leq(s, u) && p.leq(u, t)) {
          up += p.mobius(s, u);
          down += p.mobius(u, t);
        }
      CHECK(up == (s == t ? 1 : 0));
      CHECK(down == (s == t ? 1 : 0));
    }
}

TEST_CASE("boolean and partition lattice closed forms") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto b = boolean_lattice(n);
    IntPolynomial expect = IntPolynomial::monomial(0);
    for (std::size_t k = 0; k < n; ++k) expect = expect * IntPolynomial(oracle::ints({-1, 1}));
    CHECK(char_poly(b, n) == expect);
    for (std::size_t s = 0; s < b.size(); ++s)
      CHECK(b.mobius(0, s) == ((std::popcount(s) % 2) ? -1 : 1));
  }
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto pi = intersection_poset(braid(n)).poset();
    const auto top = pi.level(static_cast<int>(n - 1));
    REQUIRE(top.size() == 1);
    Integer fact = 1;
    for (std::size_t k = 2; k < n; ++k) fact *= static_cast<long>(k);
    CHECK(Integer(pi.mobius(pi.min_element(), top[0])) == ((n % 2) ? fact : Integer(-fact)));
  }
}

TEST_CASE("characteristic polynomial and Zaslavsky counts") {
  CHECK(char_poly(intersection_poset(braid(3)).poset(), 3).to_string() == "t^3 - 3*t^2 + 2*t");
  CHECK(char_poly(intersection_poset(Arrangement::empty(2)).poset(), 2).to_string() == "t^2");
  CHECK(char_poly(intersection_poset(shi(3)).poset(), 3).to_string() == "t^3 - 6*t^2 + 9*t");
  CHECK_THROWS_AS(char_poly(intersection_poset(braid(3)).poset(), 1), std::invalid_argument);

  const auto braid3 = zaslavsky_counts(intersection_poset(braid(3)).poset(), 3);
  CHECK(braid3.regions == 6);
  CHECK(braid3.bounded == 0);
  const auto shi3 = zaslavsky_counts(intersection_poset(shi(3)).poset(), 3);
  CHECK(shi3.regions == 16);
  CHECK(shi3.bounded == 4);
  const auto empty = zaslavsky_counts(intersection_poset(Arrangement::empty(2)).poset(), 2);
  CHECK(empty.regions == 1);
  CHECK(empty.bounded == 1);
}

TEST_CASE("isomorphism examples") {
  const auto pi3 = intersection_poset(braid(3)).poset();
  auto self = poset_isomorphic(pi3, pi3);
  REQUIRE(self);
  std::vector<std::size_t> identity(pi3.size());
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(*self == identity);

  const auto shi_central = intersection_poset(centralize(shi(3)).arrangement).poset();
  CHECK(poset_isomorphic(pi3, shi_central));

  std::vector<int> ranks{0, 1, 1};
  std::vector<std::vector<bool>> leq{{true, true, true}, {false, true, false}, {false, false, true}};
  CHECK_FALSE(poset_isomorphic(chain(2), RankedPoset(ranks, leq)));
  CHECK_FALSE(poset_isomorphic(boolean_lattice(3), intersection_poset(braid(4)).poset()));
}

TEST_CASE("isomorphism finds random relabelings and respects fixed pairs") {
  std::mt19937 rng(29);
  const auto base = intersection_poset(catalan(3)).poset();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> perm(base.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    const auto other = relabel(base, perm);
    auto iso = poset_isomorphic(other, base);
    REQUIRE(iso);
    for (std::size_t i = 0; i < other.size(); ++i)
      for (std::size_t j = 0; j < other.size(); ++j) CHECK(other.leq(i, j) == base.leq((*iso)[i], (*iso)[j]));
    CHECK(char_poly(other, 3) == char_poly(base, 3));
  }
  const auto b3 = boolean_lattice(3);
  const std::pair<std::size_t, std::size_t> fix[] = {{1, 4}};
  auto iso = poset_isomorphic(b3, b3, fix);
  REQUIRE(iso);
  CHECK((*iso)[1] == 4);
  const std::pair<std::size_t, std::size_t> bad[] = {{1, 3}};
  CHECK_FALSE(poset_isomorphic(b3, b3, bad));
}

TEST_CASE("filters, ideals and products") {
  const auto b3 = boolean_lattice(3);
  const auto f = b3.filter(1);
  CHECK(f.size() == 4);
  CHECK(poset_isomorphic(f, boolean_lattice(2)));
  const auto i = b3.ideal(7);
  CHECK(i.size() == 8);
  const auto prod = product(boolean_lattice(1), boolean_lattice(2));
  CHECK(poset_isomorphic(prod, b3));
  CHECK(b3.rank_profile() == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(b3.covers().size() == 12);
}
