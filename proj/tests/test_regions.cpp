#include "arrlevel/families.hpp"
#include "arrlevel/regions.hpp"
#include "arrlevel/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace arrlevel;

namespace {

Arrangement arr(std::size_t dim, std::vector<std::pair<std::vector<long>, long>> hs) {
  std::vector<Hyperplane> out;
  for (auto& [w, a] : hs) {
    RatVector v;
    for (long x : w) v.emplace_back(x);
    out.push_back({v, Rational(a)});
  }
  return Arrangement(dim, out);
}

std::vector<std::vector<int>> signs(const std::vector<Region>& rs) {
  std::vector<std::vector<int>> out;
  for (const auto& r : rs) out.push_back(r.sign);
  return out;
}

const Region& find_region(const std::vector<Region>& rs, const std::string& sign) {
  for (const auto& r : rs)
    if (r.sign_string() == sign) return r;
  throw std::logic_error("no region " + sign);
}

}  // namespace

TEST_CASE("region enumeration examples") {
  CHECK(enumerate_regions(braid(3)).size() == 6);
  CHECK(enumerate_regions(shi(3)).size() == 16);
  const auto empty = enumerate_regions(Arrangement::empty(2));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].sign_string().empty());
  CHECK(level_histogram(Arrangement::empty(2)) == oracle::ints({0, 0, 1}));
  CHECK(level_histogram(Arrangement::empty(0)) == oracle::ints({1}));
}

TEST_CASE("enumeration agrees with the sign-vector scan and witnesses are interior") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const auto a = random_arrangement(rng, 2 + trial % 2, rng() % 7, trial % 2 ? 5 : 1);
    const auto rs = enumerate_regions(a);
    CHECK(signs(rs) == oracle::brute_sign_vectors(a));
    for (const auto& r : rs)
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(r.sign[i] * a[i].evaluate(r.witness) > 0);
    CHECK(Integer(static_cast<long>(rs.size())) == zaslavsky_counts(intersection_poset(a).poset(), a.dim()).regions);
  }
}

TEST_CASE("regions are sorted with + before -") {
  const auto rs = enumerate_regions(arr(1, {{{1}, 0}, {{1}, 1}}));
  REQUIRE(rs.size() == 3);
  CHECK(rs[0].sign_string() == "++");
  CHECK(rs[1].sign_string() == "+-");
  CHECK(rs[2].sign_string() == "--");
}

TEST_CASE("recession cone examples") {
  const auto tri = arr(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}});
  const auto tri_regions = enumerate_regions(tri);
  const auto& cell = find_region(tri_regions, "++-");
  const auto rc = recession_cone(tri, cell);
  CHECK(rc.implicit_eq == std::vector<std::size_t>{0, 1, 2});
  CHECK(rc.level() == 0);
  CHECK(rc.span_flat.dimension() == 0);

  const auto s2 = shi(2);
  const auto s2_regions = enumerate_regions(s2);
  const auto& strip = find_region(s2_regions, "+-");
  const auto sc = recession_cone(s2, strip);
  CHECK(sc.level() == 1);
  CHECK(sc.implicit_eq.size() == 2);
  CHECK(sc.span_flat.lies_in({Rational(1), Rational(-1)}, 0));

  for (const auto& r : enumerate_regions(braid(3))) CHECK(recession_cone(braid(3), r).level() == 3);
}

TEST_CASE("levels agree with the independent cone-span oracle") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_arrangement(rng, 2 + trial % 2, rng() % 6, 5);
    const auto central = intersection_poset(centralize(a).arrangement);
    for (const auto& r : enumerate_regions(a)) CHECK(recession_cone(a, r, central).level() == oracle::brute_level(a, r.sign));
    CHECK(level_histogram(a) == oracle::brute_histogram(a));
  }
}

TEST_CASE("level histogram examples") {
  CHECK(level_histogram(shi(3)) == oracle::ints({0, 4, 6, 6}));
  CHECK(level_histogram(arr(2, {{{1, 0}, 0}, {{1, 0}, 1}})) == oracle::ints({0, 1, 2}));
  CHECK(level_histogram(braid(3)) == oracle::ints({0, 0, 0, 6}));
  CHECK(levels_via_formula(shi(2)) == oracle::ints({0, 1, 2}));
  CHECK(levels_via_formula(braid(3)) == oracle::ints({0, 0, 0, 6}));
  const auto tri = arr(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}});
  CHECK(levels_via_formula(tri)[0] == 1);
}

TEST_CASE("formula equals enumeration and the extreme levels behave") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const auto a = random_arrangement(rng, 2 + trial % 2, rng() % 7, trial % 3 ? 5 : 1);
    const auto h = level_histogram(a);
    CHECK(levels_via_formula(a) == h);
    const auto z = zaslavsky_counts(intersection_poset(a).poset(), a.dim());
    Integer total = 0;
    for (const auto& x : h) total += x;
    CHECK(total == z.regions);
    CHECK(h[a.dim() - a.rank()] == z.bounded);
    CHECK(h[a.dim()] == Integer(static_cast<long>(enumerate_regions(centralize(a).arrangement).size())));
    for (std::size_t l = 0; l < a.dim() - a.rank(); ++l) CHECK(h[l] == 0);
  }
}

TEST_CASE("region counts and levels are invariant under unimodular affine maps") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t dim = 2 + trial % 2;
    const auto a = random_arrangement(rng, dim, 1 + rng() % 5, 5);
    RatVector shift(dim);
    for (auto& x : shift) x = Rational(static_cast<long>(rng() % 9) - 4, 2);
    const auto b = oracle::transform(a, oracle::random_unimodular(rng, dim), shift);
    CHECK(enumerate_regions(b).size() == enumerate_regions(a).size());
    CHECK(level_histogram(b) == level_histogram(a));
  }
}

TEST_CASE("recession directions keep the witness inside") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_arrangement(rng, 2 + trial % 2, 1 + rng() % 5, 5);
    for (const auto& r : enumerate_regions(a)) {
      const auto rc = recession_cone(a, r);
      auto v = feasible(rc.system);
      REQUIRE(v);
      for (long c : {1L, 10L, 100L}) {
        RatVector x = r.witness;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * (*v)[i];
        CHECK(region_system(a, r.sign).satisfied_by(x));
      }
    }
  }
}

TEST_CASE("phi and psi examples") {
  const auto s2 = shi(2);
  const auto line = AffineSubspace::from_equations(2, {{Rational(1), Rational(-1), Rational(0)}});
  const auto s2_regions = enumerate_regions(s2);
  const auto& strip = find_region(s2_regions, "+-");
  const auto split = phi_split(s2, *line, strip);
  CHECK(split.upper.sign.empty());
  CHECK(split.bounded.sign == strip.sign);
  CHECK(psi_join(s2, *line, split.upper, split.bounded) == strip);
  CHECK_THROWS_AS(phi_split(s2, AffineSubspace::whole_space(2), strip), std::invalid_argument);

  const auto b3 = braid(3);
  for (const auto& r : enumerate_regions(b3)) {
    const auto sp = phi_split(b3, AffineSubspace::whole_space(3), r);
    CHECK(sp.bounded.sign.empty());
    CHECK(sp.upper.sign == r.sign);
    CHECK(psi_join(b3, AffineSubspace::whole_space(3), sp.upper, sp.bounded) == r);
  }
}

TEST_CASE("psi inverts phi on every region of the family arrangements") {
  for (const auto& name : family_names()) {
    const auto a = family_by_name(name).arrangement(3);
    const auto central = intersection_poset(centralize(a).arrangement);
    for (const auto& r : enumerate_regions(a)) {
      const auto v = central.flat(recession_cone(a, r, central).flat_id);
      const auto sp = phi_split(a, v, r);
      const auto back = psi_join(a, v, sp.upper, sp.bounded);
      CHECK(back == r);
      CHECK(region_system(a, back.sign).satisfied_by(back.witness));
    }
  }
}

TEST_CASE("chi via regions") {
  CHECK(chi_via_regions(braid(3)) == ScaledPolynomial(char_poly(braid(3)), Integer(1)));
  const auto s2 = chi_via_regions(shi(2));
  CHECK(s2.is_integral());
  CHECK(s2.numerator().to_string() == "t^2 - 2*t");
  CHECK(chi_via_regions(Arrangement::empty(3)).numerator().to_string() == "t^3");
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_arrangement(rng, 2 + trial % 2, rng() % 6, 5);
    CHECK(chi_via_regions(a) == ScaledPolynomial(oracle::whitney_chi(a), Integer(1)));
  }
}

TEST_CASE("level counts are not determined by chi") {
  const auto parallel = arr(2, {{{1, 0}, 0}, {{1, 0}, 1}, {{0, 1}, 0}});
  const auto concurrent = arr(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}});
  CHECK(char_poly(parallel) == char_poly(concurrent));
  CHECK(char_poly(parallel).to_string() == "t^2 - 3*t + 2");
  CHECK(level_histogram(parallel) == oracle::ints({0, 2, 4}));
  CHECK(level_histogram(concurrent) == oracle::ints({0, 0, 6}));
}
