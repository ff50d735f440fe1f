#pragma once

// Exact rational linear algebra: row reduction, affine solution sets and
// feasibility of mixed strict/non-strict linear inequality systems.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arrlevel {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Parses `p`, `-p` or `p/q`. Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view token);
std::string to_string(const Rational& q);

Rational dot(const RatVector& a, const RatVector& b);
bool is_zero(const RatVector& v);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  RatVector row(std::size_t r) const;
  void append_row(const RatVector& row);
  void swap_rows(std::size_t a, std::size_t b);

  bool operator==(const RatMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct RrefResult {
  RatMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Zero rows are kept (at the bottom).
RrefResult rref(RatMatrix m);

enum class Relation { Eq, Ge, Gt };

struct Constraint {
  RatVector coeffs;
  Relation relation = Relation::Ge;
  Rational rhs;
};

/// Constraints `coeffs . x  (=|>=|>)  rhs` over a fixed ambient dimension.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  /// Throws std::invalid_argument when coeffs has the wrong length.
  LinearSystem& add(RatVector coeffs, Relation relation, Rational rhs);

  bool satisfied_by(const RatVector& x) const;

 private:
  std::size_t dim_;
  std::vector<Constraint> constraints_;
};

/// A nonempty affine subspace of Q^n held in canonical form: the RREF of the
/// augmented equality matrix [A | b] with zero rows removed. Two subspaces
/// are equal iff their canonical matrices are identical.
class AffineSubspace {
 public:
  static AffineSubspace whole_space(std::size_t dim);

  /// Solution set of the rows `(w | a)` meaning `w . x = a`; nullopt if empty.
  static std::optional<AffineSubspace> from_equations(std::size_t dim,
                                                      const std::vector<RatVector>& augmented_rows);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return canon_.rows(); }
  std::size_t dimension() const { return dim_ - canon_.rows(); }
  const RatMatrix& canonical() const { return canon_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_linear() const;
  bool contains(const RatVector& x) const;
  /// True when every point satisfies w . x = a.
  bool lies_in(const RatVector& w, const Rational& a) const;

  /// Free coordinates set to zero.
  RatVector particular_point() const;
  /// Null-space basis of the equality system, one vector per free column.
  std::vector<RatVector> direction_basis() const;

  std::optional<AffineSubspace> intersect(const RatVector& w, const Rational& a) const;
  /// The parallel linear subspace through the origin.
  AffineSubspace linear_part() const;

  /// Serialized canonical form, usable as a hash key.
  std::string key() const;

  bool operator==(const AffineSubspace& other) const {
    return dim_ == other.dim_ && canon_ == other.canon_;
  }

 private:
  AffineSubspace(std::size_t dim, RatMatrix canon, std::vector<std::size_t> pivots)
      : dim_(dim), canon_(std::move(canon)), pivots_(std::move(pivots)) {}

  std::size_t dim_ = 0;
  RatMatrix canon_;
  std::vector<std::size_t> pivots_;
};

/// Requires every relation to be `=`; throws std::invalid_argument otherwise.
std::optional<AffineSubspace> solve_affine(const LinearSystem& system);

/// Exact feasibility by Fourier-Motzkin elimination with strictness tracking.
/// Returns a rational point satisfying every constraint, or nullopt.
std::optional<RatVector> feasible(const LinearSystem& system);

/// For a homogeneous cone {x : c_i . x >= 0}, the indices i such that
/// c_i . x = 0 on the whole cone.
std::vector<std::size_t> implicit_equalities(const LinearSystem& cone);

}  // namespace arrlevel
