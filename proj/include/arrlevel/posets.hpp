#pragma once

// Ranked posets with a unique minimum: Moebius function, characteristic
// polynomial, Zaslavsky counts and isomorphism search.

#include "arrlevel/ratlin.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace arrlevel {

/// Subset of at most 64 atoms.
class AtomSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr AtomSet() = default;
  static constexpr AtomSet from_bits(std::uint64_t bits) {
    AtomSet s;
    s.bits_ = bits;
    return s;
  }
  static AtomSet singleton(std::size_t atom);
  static AtomSet of(std::initializer_list<std::size_t> atoms);

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(std::size_t atom) const { return atom < kCapacity && ((bits_ >> atom) & 1U); }
  bool subset_of(AtomSet other) const { return (bits_ & ~other.bits_) == 0; }

  AtomSet with(std::size_t atom) const;
  AtomSet without(std::size_t atom) const;

  std::vector<std::size_t> indices() const;
  std::string to_string() const;

  friend AtomSet operator|(AtomSet a, AtomSet b) { return from_bits(a.bits_ | b.bits_); }
  friend AtomSet operator&(AtomSet a, AtomSet b) { return from_bits(a.bits_ & b.bits_); }
  friend AtomSet operator-(AtomSet a, AtomSet b) { return from_bits(a.bits_ & ~b.bits_); }
  friend auto operator<=>(AtomSet a, AtomSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Integer polynomial in t; coefficient index is the degree.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs);
  static IntPolynomial monomial(std::size_t degree, Integer coeff = 1);
  /// t (t-1) ... (t-k+1)
  static IntPolynomial falling_factorial(std::size_t k);

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  Integer coeff(std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : Integer(0); }

  Integer evaluate(const Integer& t) const;
  Rational evaluate(const Rational& t) const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const Integer& k);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const Integer& k) { return a *= k; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  bool operator==(const IntPolynomial& other) const = default;

  /// Canonical text such as `t^3 - 6*t^2 + 9*t`.
  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Rational polynomial stored as integer numerator over a positive integer
/// denominator, kept in lowest terms.
class ScaledPolynomial {
 public:
  ScaledPolynomial() = default;
  ScaledPolynomial(IntPolynomial numerator, Integer denominator);

  const IntPolynomial& numerator() const { return numerator_; }
  const Integer& denominator() const { return denominator_; }
  bool is_integral() const { return denominator_ == 1; }

  ScaledPolynomial& operator+=(const ScaledPolynomial& other);
  friend ScaledPolynomial operator+(ScaledPolynomial a, const ScaledPolynomial& b) { return a += b; }
  friend ScaledPolynomial operator*(const ScaledPolynomial& a, const Rational& k);
  bool operator==(const ScaledPolynomial& other) const = default;

  std::string to_string() const;

 private:
  void normalize();
  IntPolynomial numerator_;
  Integer denominator_ = 1;
};

/// Finite poset with a unique minimum and a rank function that increases by
/// one along every cover. Moebius values are computed once at construction and
/// the object is read-only afterwards.
class RankedPoset {
 public:
  /// `leq[i][j]` means element i <= element j. Throws std::invalid_argument if
  /// the relation is not a partial order, has no unique minimum, or the ranks
  /// do not step by one along covers.
  RankedPoset(std::vector<int> ranks, std::vector<std::vector<bool>> leq);

  /// Order given by inclusion of atom sets.
  static RankedPoset from_atom_sets(const std::vector<AtomSet>& sets, std::vector<int> ranks);

  std::size_t size() const { return ranks_.size(); }
  int rank(std::size_t s) const { return ranks_[s]; }
  int max_rank() const { return max_rank_; }
  const std::vector<int>& ranks() const { return ranks_; }
  bool leq(std::size_t s, std::size_t t) const { return (leq_[s * words_ + t / 64] >> (t % 64)) & 1U; }
  std::size_t min_element() const { return min_; }
  const std::vector<std::size_t>& upper_covers(std::size_t s) const { return up_[s]; }
  const std::vector<std::size_t>& lower_covers(std::size_t s) const { return down_[s]; }
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  /// Elements of rank r.
  std::vector<std::size_t> level(int r) const;
  std::vector<std::size_t> rank_profile() const;

  /// mu(s, t); throws std::invalid_argument unless s <= t.
  std::int64_t mobius(std::size_t s, std::size_t t) const;

  /// Subposet on `elements` (which must have a unique minimum), re-ranked so
  /// that its minimum has rank 0.
  RankedPoset induced(const std::vector<std::size_t>& elements) const;
  std::vector<std::size_t> filter_elements(std::size_t s) const;
  std::vector<std::size_t> ideal_elements(std::size_t s) const;
  RankedPoset filter(std::size_t s) const { return induced(filter_elements(s)); }
  RankedPoset ideal(std::size_t s) const { return induced(ideal_elements(s)); }

 private:
  RankedPoset() = default;
  void init(std::vector<int> ranks, std::vector<std::uint64_t> rows);

  std::vector<int> ranks_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> leq_;  // row-major bitset rows
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::int64_t> mobius_;
  std::size_t min_ = 0;
  int max_rank_ = 0;
};

/// sum over s of mu(0, s) t^(ambient_degree - rank(s)).
/// Throws std::invalid_argument if ambient_degree < max rank.
IntPolynomial char_poly(const RankedPoset& p, std::size_t ambient_degree);

struct ZaslavskyCounts {
  Integer regions;
  Integer bounded;
};

/// regions = (-1)^ambient chi(-1); bounded = (-1)^rank chi(1).
ZaslavskyCounts zaslavsky_counts(const RankedPoset& p, std::size_t ambient_degree);

/// Rank-preserving order isomorphism p -> q (image of element i at index i),
/// optionally forced to agree with `fixed` pairs. Deterministic.
std::optional<std::vector<std::size_t>> poset_isomorphic(
    const RankedPoset& p, const RankedPoset& q,
    std::span<const std::pair<std::size_t, std::size_t>> fixed = {});

/// Cartesian product with componentwise order; element (i, j) has index i * |q| + j.
RankedPoset product(const RankedPoset& p, const RankedPoset& q);

}  // namespace arrlevel
