#pragma once

// Regions of a real arrangement as sign vectors with exact witnesses, their
// recession cones and levels, and the two ways of counting regions by level.

#include "arrlevel/arrangement.hpp"
#include "arrlevel/posets.hpp"
#include "arrlevel/ratlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arrlevel {

struct Region {
  /// sign[i] = +1 or -1: side of hyperplane i.
  std::vector<int> sign;
  /// sign[i] * (w_i . witness - a_i) > 0 for every i.
  RatVector witness;

  bool operator==(const Region& other) const { return sign == other.sign; }
  /// `+-+` style, empty for the empty arrangement.
  std::string sign_string() const;
};

/// The open cell with the given signs as a strict linear system.
LinearSystem region_system(const Arrangement& a, const std::vector<int>& sign);

/// All regions, sorted lexicographically by sign string with '+' before '-'.
std::vector<Region> enumerate_regions(const Arrangement& a);

struct RecessionCone {
  /// sign[i] (w_i . v) >= 0
  LinearSystem system;
  /// Constraints that hold with equality on the whole cone.
  std::vector<std::size_t> implicit_eq;
  /// Linear span of the cone.
  Flat span_flat;
  /// Index of span_flat in the intersection poset of the centralization.
  std::size_t flat_id = 0;

  std::size_t level() const { return span_flat.dimension(); }
};

/// `central` must be intersection_poset(centralize(a).arrangement).
RecessionCone recession_cone(const Arrangement& a, const Region& r, const IntersectionPoset& central);
RecessionCone recession_cone(const Arrangement& a, const Region& r);

/// Number of regions of each level 0..dim, by enumeration.
std::vector<Integer> level_histogram(const Arrangement& a);

/// Number of regions of each level 0..dim from the intersection posets of a
/// and its centralization alone: the sum over flats V of the centralization
/// of dimension l of r(restriction to V) * b(localization at V).
std::vector<Integer> levels_via_formula(const Arrangement& a);

struct PhiSplit {
  /// Region of the centralization restricted to V (chart coordinates).
  Region upper;
  /// Relatively bounded region of the localization at V.
  Region bounded;
  DerivedArrangement restricted;
  DerivedArrangement local;
};

/// Splits a region whose recession cone spans V. Throws std::invalid_argument
/// if the span is not V.
PhiSplit phi_split(const Arrangement& a, const Flat& v, const Region& r);

/// Inverse of phi_split: combines the sign vectors and finds a witness.
/// Throws std::logic_error when the combination is empty or spans another flat.
Region psi_join(const Arrangement& a, const Flat& v, const Region& upper, const Region& bounded);

/// (-1)^n sum over regions of chi_{V_R}(t) / chi_{V_R}(-1), where chi_{V_R} is
/// the characteristic polynomial of the centralization restricted to V_R.
ScaledPolynomial chi_via_regions(const Arrangement& a);

/// chi of the arrangement: characteristic polynomial of its intersection poset.
IntPolynomial char_poly(const Arrangement& a);

}  // namespace arrlevel
