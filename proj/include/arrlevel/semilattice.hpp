#pragma once

// Abstract geometric semilattices with elements identified with their closed
// atom sets, the cone cM with its closure operator, centralization,
// localization and the level distribution r_l(M).

#include "arrlevel/arrangement.hpp"
#include "arrlevel/posets.hpp"
#include "arrlevel/text_format.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace arrlevel {

struct ValidationReport {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

/// Thrown for inputs that cannot be read as an atom-set poset at all
/// (atom ids out of range, no empty element, size mismatches).
class MalformedSemilattice : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GeometricSemilattice {
 public:
  /// Element i is the atom set `elements[i]` with rank `ranks[i]`. Structural
  /// axioms are checked here and reported by validation(); only malformed
  /// input throws.
  GeometricSemilattice(std::size_t atom_count, std::vector<AtomSet> elements, std::vector<int> ranks);

  static GeometricSemilattice from_intersection_poset(const IntersectionPoset& l);
  /// Atoms are the rank-one elements in index order; element order is kept.
  static GeometricSemilattice from_ranked_poset(const RankedPoset& p);
  static GeometricSemilattice from_record(const PosetRecord& record);
  PosetRecord to_record() const;

  std::size_t atom_count() const { return atom_count_; }
  std::size_t size() const { return elements_.size(); }
  AtomSet element(std::size_t i) const { return elements_[i]; }
  const std::vector<AtomSet>& elements() const { return elements_; }
  int rank(std::size_t i) const { return ranks_[i]; }
  const std::vector<int>& ranks() const { return ranks_; }
  /// Maximum rank.
  int rank() const { return max_rank_; }
  std::size_t bottom() const { return bottom_; }
  std::optional<std::size_t> find(AtomSet s) const;
  std::optional<std::size_t> atom_element(std::size_t atom) const { return find(AtomSet::singleton(atom)); }

  const ValidationReport& validation() const { return report_; }
  /// Throws std::invalid_argument carrying the violation when invalid.
  void require_valid() const;
  const RankedPoset& poset() const;

  /// s v a, if it exists (requires a valid semilattice).
  std::optional<std::size_t> join_with_atom(std::size_t s, std::size_t atom) const;
  /// Join of a set of atoms, if they have a common upper bound.
  std::optional<std::size_t> join(AtomSet atoms) const;
  std::optional<std::size_t> join(std::size_t s, std::size_t t) const;
  /// Atoms having no common upper bound with element s.
  AtomSet parallel_atoms(std::size_t s) const;

 private:
  void check();

  std::size_t atom_count_;
  std::vector<AtomSet> elements_;
  std::vector<int> ranks_;
  int max_rank_ = 0;
  std::size_t bottom_ = 0;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  ValidationReport report_;
  std::vector<std::optional<std::size_t>> join_table_;  // size() x atom_count()
  std::optional<RankedPoset> poset_;
};

/// Checks ranks, meet-closure, atomicity, semimodularity of every principal
/// ideal and the exchange condition; reports the first violation.
ValidationReport validate(const GeometricSemilattice& m);

/// The cone cM: sets A_s and A_s + P_s + {a0} for s in M, ordered by
/// inclusion, with a0 = base.atom_count().
class ConedLattice {
 public:
  explicit ConedLattice(GeometricSemilattice base);

  const GeometricSemilattice& base() const { return base_; }
  std::size_t a0() const { return base_.atom_count(); }
  std::size_t atom_count() const { return base_.atom_count() + 1; }
  std::size_t size() const { return elements_.size(); }
  AtomSet element(std::size_t i) const { return elements_[i]; }
  const std::vector<AtomSet>& elements() const { return elements_; }
  int rank(std::size_t i) const { return ranks_[i]; }
  /// True for the A_s + P_s + {a0} family.
  bool is_centralized(std::size_t i) const { return elements_[i].contains(a0()); }
  std::optional<std::size_t> find(AtomSet s) const;
  const RankedPoset& poset() const { return poset_; }

  /// Indices of the centralized family, in index order.
  std::vector<std::size_t> centralized_elements() const;
  /// Index of the least centralized element.
  std::size_t centralized_bottom() const;
  /// Poset text record with the `a0` header set.
  PosetRecord to_record() const;

  AtomSet closure(AtomSet s) const;
  std::size_t join(std::size_t i, std::size_t j) const;
  std::size_t meet(std::size_t i, std::size_t j) const;

 private:
  GeometricSemilattice base_;
  std::vector<AtomSet> elements_;
  std::vector<int> ranks_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  RankedPoset poset_;
};

/// cl(S) for S a subset of atoms + {a0}; a0 = m.atom_count(). The maximal
/// element of J(S - a0) is accumulated greedily in increasing atom order, or
/// in `accumulation_order` when given.
AtomSet closure(const GeometricSemilattice& m, AtomSet s);
AtomSet closure(const GeometricSemilattice& m, AtomSet s, std::span<const std::size_t> accumulation_order);

/// Requires a valid semilattice.
ConedLattice cone(const GeometricSemilattice& m);

/// The centralization as a geometric lattice over its own atoms. Element i
/// corresponds to cm.centralized_elements()[i]; ranks are shifted down by one.
GeometricSemilattice centralization(const ConedLattice& cm);
GeometricSemilattice centralization(const GeometricSemilattice& m);

struct Localization {
  GeometricSemilattice semilattice;
  /// Original atom id of each atom of the localization.
  std::vector<std::size_t> atom_origin;
};

/// Elements A_s contained in the centralized element S, on the atoms of S.
/// Throws std::invalid_argument if S is not a centralized element.
Localization localize(const ConedLattice& cm, AtomSet s);
Localization localize(const GeometricSemilattice& m, AtomSet s);

IntPolynomial char_poly(const GeometricSemilattice& m);
/// r(M) and b(M), both signed by the rank of M.
ZaslavskyCounts counts(const GeometricSemilattice& m);

/// r_0(M), ..., r_n(M) with n = rank(M).
std::vector<Integer> level_distribution(const GeometricSemilattice& m);

struct ChiIdentity {
  IntPolynomial lhs;
  IntPolynomial rhs;
  bool equal = false;
};

/// chi_M(t) against sum over S in the centralization of chi_{filter(S)}(t) chi_{M_S}(1).
ChiIdentity chi_identity_check(const GeometricSemilattice& m);

/// True when all principal filters of equal corank are isomorphic.
bool is_uniform(const RankedPoset& lattice);

struct UniformExpansion {
  std::vector<Integer> levels;
  /// basis[d] = chi_{L_d}(t) / chi_{L_d}(-1)
  std::vector<ScaledPolynomial> basis;
  bool identity_holds = false;
};

/// nullopt when the centralization is not uniform. The identity checked is
/// chi_M(t) = (-1)^n sum_l r_l(M) basis[l](t), n = rank(M).
std::optional<UniformExpansion> uniform_expansion(const GeometricSemilattice& m);

/// L - L^a: the elements of a geometric lattice not above atom a, on the
/// remaining atoms (ids above a shift down by one).
GeometricSemilattice remove_atom_filter(const GeometricSemilattice& lattice, std::size_t atom);

/// Lattice of flats of the uniform matroid U_{k,m} (1 <= k <= m).
GeometricSemilattice uniform_matroid_flats(std::size_t k, std::size_t m);

}  // namespace arrlevel
