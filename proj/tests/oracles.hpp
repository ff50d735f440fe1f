#pragma once

// Slow reference implementations used to cross-check the library.

#include "arrlevel/arrangement.hpp"
#include "arrlevel/posets.hpp"
#include "arrlevel/regions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using namespace arrlevel;

inline std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline std::vector<RatVector> augmented_rows(const Arrangement& a, std::uint64_t subset) {
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!((subset >> i) & 1U)) continue;
    RatVector row = a[i].normal;
    row.push_back(a[i].offset);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Whitney's formula: sum over subsets S with nonempty intersection of
/// (-1)^|S| t^(n - rank S).
inline IntPolynomial whitney_chi(const Arrangement& a) {
  IntPolynomial chi;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << a.size()); ++s) {
    auto flat = AffineSubspace::from_equations(a.dim(), augmented_rows(a, s));
    if (!flat) continue;
    const Integer sign = std::popcount(s) % 2 == 0 ? 1 : -1;
    chi += IntPolynomial::monomial(a.dim() - flat->rank(), sign);
  }
  return chi;
}

struct BruteFlat {
  std::size_t rank;
  AtomSet atoms;
  auto operator<=>(const BruteFlat&) const = default;
};

/// Every nonempty intersection of a subset of hyperplanes, deduplicated by
/// canonical form, sorted by rank and atom set.
inline std::vector<BruteFlat> subset_flats(const Arrangement& a) {
  std::map<std::string, BruteFlat> seen;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << a.size()); ++s) {
    auto flat = AffineSubspace::from_equations(a.dim(), augmented_rows(a, s));
    if (!flat) continue;
    AtomSet atoms;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (flat->lies_in(a[i].normal, a[i].offset)) atoms = atoms.with(i);
    seen.emplace(flat->key(), BruteFlat{flat->rank(), atoms});
  }
  std::vector<BruteFlat> out;
  for (auto& [k, f] : seen) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

/// Moebius function by the defining recursion on an explicit order relation.
inline std::int64_t brute_mobius(const std::vector<std::vector<bool>>& leq, std::size_t s, std::size_t t) {
  std::map<std::size_t, std::int64_t> memo;
  std::function<std::int64_t(std::size_t)> mu = [&](std::size_t u) -> std::int64_t {
    if (u == s) return 1;
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    std::int64_t sum = 0;
    for (std::size_t v = 0; v < leq.size(); ++v)
      if (v != u && leq[s][v] && leq[v][u]) sum += mu(v);
    return memo[u] = -sum;
  };
  return leq[s][t] ? mu(t) : 0;
}

inline std::vector<std::vector<bool>> leq_matrix(const RankedPoset& p) {
  std::vector<std::vector<bool>> out(p.size(), std::vector<bool>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out[i][j] = p.leq(i, j);
  return out;
}

/// Sign vectors whose open cell is nonempty, found by testing all 2^k of them.
inline std::vector<std::vector<int>> brute_sign_vectors(const Arrangement& a) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << a.size()); ++s) {
    std::vector<int> sign(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sign[i] = ((s >> i) & 1U) ? -1 : 1;
    if (feasible(region_system(a, sign))) out.push_back(sign);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Dimension of the span of {v : sign_i (w_i . v) >= 0}: constraint i is tight
/// on the whole cone iff the cone meets sign_i (w_i . v) = 1 nowhere.
inline std::size_t brute_level(const Arrangement& a, const std::vector<int>& sign) {
  std::vector<RatVector> tight;
  for (std::size_t i = 0; i < a.size(); ++i) {
    LinearSystem sys(a.dim());
    for (std::size_t j = 0; j < a.size(); ++j) {
      RatVector w = a[j].normal;
      for (auto& x : w) x *= sign[j];
      if (j == i) sys.add(w, Relation::Eq, Rational(1));
      else sys.add(w, Relation::Ge, Rational(0));
    }
    if (!feasible(sys)) tight.push_back(a[i].normal);
  }
  if (tight.empty()) return a.dim();
  return a.dim() - rref(RatMatrix::from_rows(tight, a.dim())).rank;
}

inline std::vector<Integer> brute_histogram(const Arrangement& a) {
  std::vector<Integer> h(a.dim() + 1, Integer(0));
  for (const auto& sign : brute_sign_vectors(a)) h[brute_level(a, sign)] += 1;
  return h;
}

/// Image of the arrangement under x = M y + c.
inline Arrangement transform(const Arrangement& a, const std::vector<RatVector>& m, const RatVector& c) {
  std::vector<Hyperplane> hs;
  for (const auto& h : a.hyperplanes()) {
    RatVector w(a.dim(), Rational(0));
    for (std::size_t col = 0; col < a.dim(); ++col)
      for (std::size_t row = 0; row < a.dim(); ++row) w[col] += h.normal[row] * m[row][col];
    hs.push_back({std::move(w), h.offset - dot(h.normal, c)});
  }
  return Arrangement(a.dim(), std::move(hs));
}

/// Product of random elementary integer row operations: determinant 1.
inline std::vector<RatVector> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  std::vector<RatVector> m(n, RatVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  if (n < 2) return m;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const int k = coef(rng);
    for (std::size_t c = 0; c < n; ++c) m[i][c] += k * m[j][c];
  }
  return m;
}

}  // namespace oracle
