#include "arrlevel/posets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace arrlevel {

// ---------------------------------------------------------------------------
// AtomSet

AtomSet AtomSet::singleton(std::size_t atom) {
  if (atom >= kCapacity) throw std::length_error("atom index exceeds AtomSet capacity");
  return from_bits(std::uint64_t{1} << atom);
}

AtomSet AtomSet::of(std::initializer_list<std::size_t> atoms) {
  AtomSet s;
  for (auto a : atoms) s = s.with(a);
  return s;
}

AtomSet AtomSet::with(std::size_t atom) const { return *this | singleton(atom); }
AtomSet AtomSet::without(std::size_t atom) const { return *this - singleton(atom); }

std::vector<std::size_t> AtomSet::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::string AtomSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto i : indices()) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::monomial(std::size_t degree, Integer coeff) {
  std::vector<Integer> c(degree + 1, Integer(0));
  c[degree] = std::move(coeff);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::falling_factorial(std::size_t k) {
  IntPolynomial p = monomial(0);
  for (std::size_t i = 0; i < k; ++i) p = p * IntPolynomial({Integer(-static_cast<long>(i)), Integer(1)});
  return p;
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::evaluate(const Integer& t) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + Rational(*it);
  return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Integer(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& k) {
  for (auto& c : coeffs_) c *= k;
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t d = coeffs_.size(); d-- > 0;) {
    const Integer& c = coeffs_[d];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    Integer magnitude = abs(c);
    std::string var = d == 0 ? "" : (d == 1 ? "t" : "t^" + std::to_string(d));
    if (d == 0)
      out += magnitude.get_str();
    else if (magnitude == 1)
      out += var;
    else
      out += magnitude.get_str() + "*" + var;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ScaledPolynomial

ScaledPolynomial::ScaledPolynomial(IntPolynomial numerator, Integer denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (denominator_ == 0) throw std::invalid_argument("zero denominator");
  normalize();
}

void ScaledPolynomial::normalize() {
  if (denominator_ < 0) {
    numerator_ *= Integer(-1);
    denominator_ = -denominator_;
  }
  if (numerator_.is_zero()) {
    denominator_ = 1;
    return;
  }
  Integer g = denominator_;
  for (const auto& c : numerator_.coeffs()) g = gcd(g, c);
  if (g != 1) {
    std::vector<Integer> reduced;
    for (const auto& c : numerator_.coeffs()) reduced.push_back(Integer(c / g));
    numerator_ = IntPolynomial(std::move(reduced));
    denominator_ /= g;
  }
}

ScaledPolynomial& ScaledPolynomial::operator+=(const ScaledPolynomial& other) {
  Integer d = denominator_ * other.denominator_;
  numerator_ = numerator_ * other.denominator_ + other.numerator_ * denominator_;
  denominator_ = d;
  normalize();
  return *this;
}

ScaledPolynomial operator*(const ScaledPolynomial& a, const Rational& k) {
  return ScaledPolynomial(a.numerator_ * Integer(k.get_num()), a.denominator_ * Integer(k.get_den()));
}

std::string ScaledPolynomial::to_string() const {
  if (denominator_ == 1) return numerator_.to_string();
  return "(" + numerator_.to_string() + ")/" + denominator_.get_str();
}

// ---------------------------------------------------------------------------
// RankedPoset

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& rows, std::size_t words, std::size_t i, std::size_t j) {
  rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
}

}  // namespace

RankedPoset::RankedPoset(std::vector<int> ranks, std::vector<std::vector<bool>> leq) {
  const std::size_t n = ranks.size();
  if (leq.size() != n) throw std::invalid_argument("order relation size mismatch");
  const std::size_t words = words_for(n);
  std::vector<std::uint64_t> rows(n * words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) throw std::invalid_argument("order relation size mismatch");
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j]) set_bit(rows, words, i, j);
  }
  init(std::move(ranks), std::move(rows));
}

RankedPoset RankedPoset::from_atom_sets(const std::vector<AtomSet>& sets, std::vector<int> ranks) {
  const std::size_t n = sets.size();
  if (ranks.size() != n) throw std::invalid_argument("rank list size mismatch");
  const std::size_t words = words_for(n);
  std::vector<std::uint64_t> rows(n * words, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sets[i].subset_of(sets[j])) set_bit(rows, words, i, j);
  RankedPoset p;
  p.init(std::move(ranks), std::move(rows));
  return p;
}

void RankedPoset::init(std::vector<int> ranks, std::vector<std::uint64_t> rows) {
  const std::size_t n = ranks.size();
  if (n == 0) throw std::invalid_argument("empty poset");
  const std::size_t words = words_for(n);
  ranks_ = std::move(ranks);
  words_ = words;
  leq_ = std::move(rows);

  for (std::size_t i = 0; i < n; ++i) {
    if (!leq(i, i)) throw std::invalid_argument("order relation is not reflexive");
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq(i, j) && leq(j, i)) throw std::invalid_argument("order relation is not antisymmetric");
  }
  // transitivity: i <= j implies up(j) within up(i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq(i, j)) continue;
      for (std::size_t w = 0; w < words; ++w)
        if (leq_[j * words + w] & ~leq_[i * words + w])
          throw std::invalid_argument("order relation is not transitive");
    }

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    bool is_min = true;
    for (std::size_t j = 0; j < n && is_min; ++j) is_min = leq(i, j);
    if (is_min) minima.push_back(i);
  }
  if (minima.size() != 1) throw std::invalid_argument("poset has no unique minimum");
  min_ = minima.front();
  if (ranks_[min_] != 0) throw std::invalid_argument("minimum must have rank 0");

  // down-sets as bitset columns
  std::vector<std::uint64_t> below(n * words, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq(i, j)) set_bit(below, words, j, i);

  up_.assign(n, {});
  down_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      // j covers i iff no k with i < k < j
      bool cover = true;
      for (std::size_t w = 0; w < words && cover; ++w) {
        std::uint64_t between = leq_[i * words + w] & below[j * words + w];
        if (w == i / 64) between &= ~(std::uint64_t{1} << (i % 64));
        if (w == j / 64) between &= ~(std::uint64_t{1} << (j % 64));
        cover = between == 0;
      }
      if (!cover) continue;
      if (ranks_[j] != ranks_[i] + 1)
        throw std::invalid_argument("rank does not increase by one along the cover " + std::to_string(i) + " < " +
                                    std::to_string(j));
      up_[i].push_back(j);
      down_[j].push_back(i);
    }
  }
  max_rank_ = *std::max_element(ranks_.begin(), ranks_.end());

  std::vector<std::size_t> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), std::size_t{0});
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](std::size_t a, std::size_t b) { return ranks_[a] < ranks_[b]; });

  mobius_.assign(n * n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    mobius_[s * n + s] = 1;
    for (std::size_t t : by_rank) {
      if (t == s || !leq(s, t)) continue;
      std::int64_t sum = 0;
      for (std::size_t u : by_rank) {
        if (ranks_[u] >= ranks_[t]) break;
        if (leq(s, u) && leq(u, t)) sum += mobius_[s * n + u];
      }
      mobius_[s * n + t] = -sum;
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> RankedPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (auto j : up_[i]) out.emplace_back(i, j);
  return out;
}

std::vector<std::size_t> RankedPoset::level(int r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (ranks_[i] == r) out.push_back(i);
  return out;
}

std::vector<std::size_t> RankedPoset::rank_profile() const {
  std::vector<std::size_t> profile(static_cast<std::size_t>(max_rank_) + 1, 0);
  for (int r : ranks_) ++profile[static_cast<std::size_t>(r)];
  return profile;
}

std::int64_t RankedPoset::mobius(std::size_t s, std::size_t t) const {
  if (s >= size() || t >= size() || !leq(s, t)) throw std::invalid_argument("mobius(s, t) requires s <= t");
  return mobius_[s * size() + t];
}

RankedPoset RankedPoset::induced(const std::vector<std::size_t>& elements) const {
  const std::size_t n = elements.size();
  if (n == 0) throw std::invalid_argument("empty subposet");
  const std::size_t words = words_for(n);
  std::vector<std::uint64_t> rows(n * words, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq(elements[i], elements[j])) set_bit(rows, words, i, j);
  int base = ranks_[elements.front()];
  for (auto e : elements) base = std::min(base, ranks_[e]);
  std::vector<int> ranks;
  ranks.reserve(n);
  for (auto e : elements) ranks.push_back(ranks_[e] - base);
  RankedPoset p;
  p.init(std::move(ranks), std::move(rows));
  return p;
}

std::vector<std::size_t> RankedPoset::filter_elements(std::size_t s) const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < size(); ++t)
    if (leq(s, t)) out.push_back(t);
  return out;
}

std::vector<std::size_t> RankedPoset::ideal_elements(std::size_t s) const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < size(); ++t)
    if (leq(t, s)) out.push_back(t);
  return out;
}

IntPolynomial char_poly(const RankedPoset& p, std::size_t ambient_degree) {
  if (static_cast<long>(ambient_degree) < p.max_rank())
    throw std::invalid_argument("ambient degree below the rank of the poset");
  std::vector<Integer> coeffs(ambient_degree + 1, Integer(0));
  const std::size_t bottom = p.min_element();
  for (std::size_t s = 0; s < p.size(); ++s)
    coeffs[ambient_degree - static_cast<std::size_t>(p.rank(s))] += Integer(static_cast<long>(p.mobius(bottom, s)));
  return IntPolynomial(std::move(coeffs));
}

ZaslavskyCounts zaslavsky_counts(const RankedPoset& p, std::size_t ambient_degree) {
  const IntPolynomial chi = char_poly(p, ambient_degree);
  Integer at_minus_one = chi.evaluate(Integer(-1));
  Integer at_one = chi.evaluate(Integer(1));
  ZaslavskyCounts out;
  out.regions = ambient_degree % 2 == 0 ? at_minus_one : Integer(-at_minus_one);
  out.bounded = p.max_rank() % 2 == 0 ? at_one : Integer(-at_one);
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

using Signature = std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t>;

std::vector<Signature> signatures(const RankedPoset& p) {
  std::vector<Signature> sig(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t above = 0, below = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      above += p.leq(i, j);
      below += p.leq(j, i);
    }
    sig[i] = {p.rank(i), p.upper_covers(i).size(), p.lower_covers(i).size(), above, below};
  }
  return sig;
}

// Minimum first, then each atom followed by every element whose lower covers
// are all already placed, so relations are checked as early as possible.
std::vector<std::size_t> placement_order(const RankedPoset& p) {
  const std::size_t n = p.size();
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> order{p.min_element()};
  placed[p.min_element()] = true;
  std::vector<std::size_t> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), std::size_t{0});
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](std::size_t a, std::size_t b) { return p.rank(a) < p.rank(b); });
  auto absorb = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto e : by_rank) {
        if (placed[e] || p.rank(e) <= 1) continue;
        const auto& lower = p.lower_covers(e);
        if (std::all_of(lower.begin(), lower.end(), [&](std::size_t x) { return placed[x]; })) {
          placed[e] = true;
          order.push_back(e);
          changed = true;
        }
      }
    }
  };
  for (auto a : p.level(1)) {
    placed[a] = true;
    order.push_back(a);
    absorb();
  }
  for (auto e : by_rank)
    if (!placed[e]) order.push_back(e);
  return order;
}

}  // namespace

std::optional<std::vector<std::size_t>> poset_isomorphic(const RankedPoset& p, const RankedPoset& q,
                                                         std::span<const std::pair<std::size_t, std::size_t>> fixed) {
  const std::size_t n = p.size();
  if (q.size() != n || p.rank_profile() != q.rank_profile()) return std::nullopt;
  const auto sp = signatures(p);
  const auto sq = signatures(q);
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> forced(n, kUnset);
  std::vector<bool> reserved(n, false);
  for (const auto& [x, y] : fixed) {
    if (x >= n || y >= n) return std::nullopt;
    if ((forced[x] != kUnset && forced[x] != y)) return std::nullopt;
    forced[x] = y;
    reserved[y] = true;
  }

  const auto order = placement_order(p);
  std::vector<std::size_t> image(n, kUnset);
  std::vector<bool> used(n, false);

  auto compatible = [&](std::size_t depth, std::size_t x, std::size_t y) {
    if (used[y] || sp[x] != sq[y]) return false;
    if (forced[x] != kUnset ? forced[x] != y : reserved[y]) return false;
    for (std::size_t d = 0; d < depth; ++d) {
      std::size_t xp = order[d];
      std::size_t yp = image[xp];
      if (p.leq(xp, x) != q.leq(yp, y) || p.leq(x, xp) != q.leq(y, yp)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t x = order[depth];
    for (std::size_t y = 0; y < n; ++y) {
      if (!compatible(depth, x, y)) continue;
      image[x] = y;
      used[y] = true;
      if (extend(depth + 1)) return true;
      used[y] = false;
      image[x] = kUnset;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

RankedPoset product(const RankedPoset& p, const RankedPoset& q) {
  const std::size_t n = p.size() * q.size();
  std::vector<int> ranks(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < q.size(); ++b) {
      ranks[a * q.size() + b] = p.rank(a) + q.rank(b);
      for (std::size_t c = 0; c < p.size(); ++c)
        for (std::size_t d = 0; d < q.size(); ++d)
          leq[a * q.size() + b][c * q.size() + d] = p.leq(a, c) && q.leq(b, d);
    }
  return RankedPoset(std::move(ranks), std::move(leq));
}

}  // namespace arrlevel
