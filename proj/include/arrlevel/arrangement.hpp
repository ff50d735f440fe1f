#pragma once

// Affine hyperplane arrangements over Q, their intersection posets and the
// derived arrangements (centralization, restriction, localization,
// essentialization, cone).

#include "arrlevel/posets.hpp"
#include "arrlevel/ratlin.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace arrlevel {

/// {x : normal . x = offset}
struct Hyperplane {
  RatVector normal;
  Rational offset;

  /// Scaled so that the first nonzero normal entry is 1.
  Hyperplane canonical() const;
  bool same_set(const Hyperplane& other) const { return canonical() == other.canonical(); }
  /// normal . x - offset
  Rational evaluate(const RatVector& x) const { return dot(normal, x) - offset; }

  bool operator==(const Hyperplane& other) const = default;
};

using Flat = AffineSubspace;

class Arrangement {
 public:
  /// Throws std::invalid_argument for a zero normal, a wrong normal length or
  /// two hyperplanes that are equal as point sets.
  Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes);
  static Arrangement empty(std::size_t dim) { return Arrangement(dim, {}); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return hyperplanes_.size(); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }

  /// Rank of the span of the normals.
  std::size_t rank() const;
  bool is_central() const;

  bool operator==(const Arrangement& other) const = default;

 private:
  std::size_t dim_;
  std::vector<Hyperplane> hyperplanes_;
};

/// Points of an affine subspace written as origin + sum_j y_j basis_j.
struct AffineChart {
  RatVector origin;
  std::vector<RatVector> basis;

  static AffineChart identity(std::size_t dim);
  std::size_t dim() const { return basis.size(); }
  RatVector to_ambient(const RatVector& y) const;
};

/// Position of a hyperplane in another arrangement, with the sign relating
/// the two normals (restricted normal = orientation * positive multiple of
/// the target normal).
struct IndexMap {
  std::size_t index = 0;
  int orientation = 1;
};

/// An arrangement built from a source arrangement, with the index
/// bookkeeping needed to translate sign vectors between the two.
struct DerivedArrangement {
  Arrangement arrangement;
  AffineChart chart;
  /// For each target hyperplane, the source hyperplanes mapping onto it (sorted).
  std::vector<std::vector<IndexMap>> preimages;
  /// For each source hyperplane, its target, or nullopt when it was dropped.
  std::vector<std::optional<IndexMap>> image;
};

class IntersectionPoset {
 public:
  IntersectionPoset(std::size_t ambient_dim, std::size_t atom_count, std::vector<Flat> flats,
                    std::vector<AtomSet> atoms);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t atom_count() const { return atom_count_; }
  std::size_t size() const { return flats_.size(); }
  const Flat& flat(std::size_t i) const { return flats_[i]; }
  const std::vector<Flat>& flats() const { return flats_; }
  /// Hyperplane indices containing flat i.
  AtomSet atoms(std::size_t i) const { return atoms_[i]; }
  const std::vector<AtomSet>& atom_sets() const { return atoms_; }
  std::size_t rank(std::size_t i) const { return flats_[i].rank(); }
  const RankedPoset& poset() const { return poset_; }
  std::optional<std::size_t> find(const Flat& f) const;

 private:
  std::size_t ambient_dim_;
  std::size_t atom_count_;
  std::vector<Flat> flats_;
  std::vector<AtomSet> atoms_;
  RankedPoset poset_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Every nonempty intersection exactly once, index 0 the ambient space,
/// sorted by rank and then by atom set.
IntersectionPoset intersection_poset(const Arrangement& a);

/// Translates each hyperplane to the origin and merges parallel copies; the
/// first occurrence is the representative.
DerivedArrangement centralize(const Arrangement& a);

/// Induced arrangement on V in the coordinates of V's canonical chart.
/// Hyperplanes containing V or disjoint from it are dropped; hyperplanes with
/// equal traces are merged into the lowest index.
DerivedArrangement restriction(const Arrangement& a, const Flat& v);

/// Hyperplanes H with V inside H or V disjoint from H (V must be linear).
DerivedArrangement localization(const Arrangement& a, const Flat& v);

/// Restriction to the span of the normals, in coordinates given by the
/// nonzero rows of the RREF of the normal matrix.
DerivedArrangement essentialize(const Arrangement& a);

/// Central arrangement in dimension n+1: H0 = {x_{n+1} = 0} at index 0 and
/// w . x - a x_{n+1} = 0 for each hyperplane.
Arrangement cone_arrangement(const Arrangement& a);

}  // namespace arrlevel
