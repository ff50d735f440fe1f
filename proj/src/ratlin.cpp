#include "arrlevel/ratlin.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace arrlevel {

Rational parse_rational(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = 0;
  if (token[0] == '-' || token[0] == '+') i = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; i < token.size(); ++i) {
    char c = token[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && seen_digit && !seen_slash) {
      seen_slash = true;
    } else {
      throw std::invalid_argument("malformed rational '" + std::string(token) + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash))
    throw std::invalid_argument("malformed rational '" + std::string(token) + "'");
  std::string text(token[0] == '+' ? token.substr(1) : token);
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational dot(const RatVector& a, const RatVector& b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

RatVector RatMatrix::row(std::size_t r) const {
  return RatVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void RatMatrix::append_row(const RatVector& row) {
  if (row.size() != cols_) throw std::invalid_argument("row length does not match column count");
  for (const auto& q : row) {
    entries_.push_back(q);
    entries_.back().canonicalize();
  }
  ++rows_;
}

void RatMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

RrefResult rref(RatMatrix m) {
  RrefResult out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c).canonicalize();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t pivot = lead;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, lead);
    Rational inv = 1 / m(lead, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(lead, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, col) == 0) continue;
      Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(lead, c);
    }
    out.pivots.push_back(col);
    ++lead;
  }
  out.rank = lead;
  out.reduced = std::move(m);
  return out;
}

LinearSystem& LinearSystem::add(RatVector coeffs, Relation relation, Rational rhs) {
  if (coeffs.size() != dim_) throw std::invalid_argument("constraint length does not match dimension");
  for (auto& q : coeffs) q.canonicalize();
  rhs.canonicalize();
  constraints_.push_back({std::move(coeffs), relation, std::move(rhs)});
  return *this;
}

bool LinearSystem::satisfied_by(const RatVector& x) const {
  if (x.size() != dim_) return false;
  for (const auto& c : constraints_) {
    Rational lhs = dot(c.coeffs, x);
    switch (c.relation) {
      case Relation::Eq:
        if (lhs != c.rhs) return false;
        break;
      case Relation::Ge:
        if (lhs < c.rhs) return false;
        break;
      case Relation::Gt:
        if (lhs <= c.rhs) return false;
        break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// AffineSubspace

AffineSubspace AffineSubspace::whole_space(std::size_t dim) {
  return AffineSubspace(dim, RatMatrix(0, dim + 1), {});
}

std::optional<AffineSubspace> AffineSubspace::from_equations(std::size_t dim,
                                                             const std::vector<RatVector>& rows) {
  RrefResult r = rref(RatMatrix::from_rows(rows, dim + 1));
  if (!r.pivots.empty() && r.pivots.back() == dim) return std::nullopt;
  RatMatrix canon(0, dim + 1);
  for (std::size_t i = 0; i < r.rank; ++i) canon.append_row(r.reduced.row(i));
  return AffineSubspace(dim, std::move(canon), std::move(r.pivots));
}

bool AffineSubspace::is_linear() const {
  for (std::size_t r = 0; r < canon_.rows(); ++r)
    if (canon_(r, dim_) != 0) return false;
  return true;
}

bool AffineSubspace::contains(const RatVector& x) const {
  if (x.size() != dim_) return false;
  for (std::size_t r = 0; r < canon_.rows(); ++r) {
    Rational lhs = 0;
    for (std::size_t c = 0; c < dim_; ++c) lhs += canon_(r, c) * x[c];
    if (lhs != canon_(r, dim_)) return false;
  }
  return true;
}

bool AffineSubspace::lies_in(const RatVector& w, const Rational& a) const {
  for (const auto& v : direction_basis())
    if (dot(w, v) != 0) return false;
  return dot(w, particular_point()) == a;
}

RatVector AffineSubspace::particular_point() const {
  RatVector x(dim_, Rational(0));
  for (std::size_t r = 0; r < canon_.rows(); ++r) x[pivots_[r]] = canon_(r, dim_);
  return x;
}

std::vector<RatVector> AffineSubspace::direction_basis() const {
  std::vector<bool> is_pivot(dim_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < dim_; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(dim_, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < canon_.rows(); ++r) v[pivots_[r]] = -canon_(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSubspace> AffineSubspace::intersect(const RatVector& w, const Rational& a) const {
  if (w.size() != dim_) throw std::invalid_argument("hyperplane dimension mismatch");
  std::vector<RatVector> rows;
  rows.reserve(canon_.rows() + 1);
  for (std::size_t r = 0; r < canon_.rows(); ++r) rows.push_back(canon_.row(r));
  RatVector extra = w;
  extra.push_back(a);
  rows.push_back(std::move(extra));
  return from_equations(dim_, rows);
}

AffineSubspace AffineSubspace::linear_part() const {
  RatMatrix canon = canon_;
  for (std::size_t r = 0; r < canon.rows(); ++r) canon(r, dim_) = 0;
  return AffineSubspace(dim_, std::move(canon), pivots_);
}

std::string AffineSubspace::key() const {
  std::string k = std::to_string(dim_);
  for (std::size_t r = 0; r < canon_.rows(); ++r) {
    k += '|';
    for (std::size_t c = 0; c <= dim_; ++c) {
      k += canon_(r, c).get_str();
      k += ',';
    }
  }
  return k;
}

std::optional<AffineSubspace> solve_affine(const LinearSystem& system) {
  std::vector<RatVector> rows;
  for (const auto& c : system.constraints()) {
    if (c.relation != Relation::Eq) throw std::invalid_argument("solve_affine needs equality constraints only");
    RatVector row = c.coeffs;
    row.push_back(c.rhs);
    rows.push_back(std::move(row));
  }
  return AffineSubspace::from_equations(system.dim(), rows);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

// coeffs . y  >= rhs  (or > rhs when strict)
struct Inequality {
  RatVector coeffs;
  Rational rhs;
  bool strict = false;
};

// Divides by the magnitude of the first nonzero coefficient, merges parallel
// copies keeping the tightest, and drops satisfied constant rows. Returns false
// if a constant row is violated.
bool normalize(std::vector<Inequality>& rows) {
  std::map<std::string, Inequality> tightest;
  std::vector<std::string> order;
  for (auto& row : rows) {
    auto lead = std::find_if(row.coeffs.begin(), row.coeffs.end(), [](const Rational& q) { return q != 0; });
    if (lead == row.coeffs.end()) {
      if (row.strict ? row.rhs >= 0 : row.rhs > 0) return false;
      continue;
    }
    Rational scale = abs(*lead);
    if (scale != 1) {
      for (auto& c : row.coeffs) c /= scale;
      row.rhs /= scale;
    }
    std::string key;
    for (const auto& c : row.coeffs) {
      key += c.get_str();
      key += ',';
    }
    auto it = tightest.find(key);
    if (it == tightest.end()) {
      order.push_back(key);
      tightest.emplace(std::move(key), std::move(row));
    } else if (row.rhs > it->second.rhs || (row.rhs == it->second.rhs && row.strict)) {
      it->second = std::move(row);
    }
  }
  rows.clear();
  for (const auto& k : order) rows.push_back(std::move(tightest.at(k)));
  return true;
}

struct EliminationStep {
  std::size_t var;
  std::vector<Inequality> rows;  // system before eliminating var
};

// Picks a value inside the (possibly open, possibly unbounded) interval,
// preferring 0, then an integer, then the midpoint.
Rational pick_value(const std::optional<Rational>& lo, bool lo_strict, const std::optional<Rational>& hi,
                    bool hi_strict) {
  auto fits = [&](const Rational& v) {
    if (lo && (lo_strict ? v <= *lo : v < *lo)) return false;
    if (hi && (hi_strict ? v >= *hi : v > *hi)) return false;
    return true;
  };
  if (fits(Rational(0))) return 0;
  if (lo) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    Rational candidate = (lo->get_den() == 1 && !lo_strict) ? *lo : Rational(fl + 1);
    if (fits(candidate)) return candidate;
  }
  if (hi) {
    mpz_class cl;
    mpz_cdiv_q(cl.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
    Rational candidate = (hi->get_den() == 1 && !hi_strict) ? *hi : Rational(cl - 1);
    if (fits(candidate)) return candidate;
  }
  if (lo && hi) {
    if (*lo == *hi) return *lo;
    return (*lo + *hi) / 2;
  }
  throw std::logic_error("Fourier-Motzkin back-substitution found an empty interval");
}

std::optional<RatVector> fourier_motzkin(std::vector<Inequality> rows, std::size_t dim) {
  if (!normalize(rows)) return std::nullopt;
  std::vector<bool> eliminated(dim, false);
  std::vector<EliminationStep> steps;
  for (std::size_t round = 0; round < dim; ++round) {
    // cheapest variable: fewest generated combinations
    std::size_t best = dim;
    long long best_cost = 0;
    for (std::size_t v = 0; v < dim; ++v) {
      if (eliminated[v]) continue;
      long long pos = 0, neg = 0;
      for (const auto& r : rows) {
        int s = sgn(r.coeffs[v]);
        pos += s > 0;
        neg += s < 0;
      }
      long long cost = pos * neg - pos - neg;
      if (best == dim || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    std::vector<Inequality> next;
    std::vector<const Inequality*> pos, neg;
    for (const auto& r : rows) {
      int s = sgn(r.coeffs[best]);
      if (s > 0)
        pos.push_back(&r);
      else if (s < 0)
        neg.push_back(&r);
      else
        next.push_back(r);
    }
    for (const auto* p : pos) {
      for (const auto* n : neg) {
        Rational a = p->coeffs[best];
        Rational b = -n->coeffs[best];
        Inequality combo;
        combo.coeffs.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) combo.coeffs[k] = b * p->coeffs[k] + a * n->coeffs[k];
        combo.coeffs[best] = 0;
        combo.rhs = b * p->rhs + a * n->rhs;
        combo.strict = p->strict || n->strict;
        next.push_back(std::move(combo));
      }
    }
    steps.push_back({best, std::move(rows)});
    eliminated[best] = true;
    if (!normalize(next)) return std::nullopt;
    rows = std::move(next);
  }

  RatVector y(dim, Rational(0));
  for (auto step = steps.rbegin(); step != steps.rend(); ++step) {
    const std::size_t v = step->var;
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : step->rows) {
      const Rational& c = r.coeffs[v];
      if (c == 0) continue;
      Rational rest = r.rhs;
      for (std::size_t k = 0; k < dim; ++k)
        if (k != v) rest -= r.coeffs[k] * y[k];
      Rational bound = rest / c;
      if (c > 0) {
        if (!lo || bound > *lo || (bound == *lo && r.strict)) {
          lo = bound;
          lo_strict = r.strict;
        }
      } else {
        if (!hi || bound < *hi || (bound == *hi && r.strict)) {
          hi = bound;
          hi_strict = r.strict;
        }
      }
    }
    y[v] = pick_value(lo, lo_strict, hi, hi_strict);
  }
  return y;
}

}  // namespace

std::optional<RatVector> feasible(const LinearSystem& system) {
  const std::size_t dim = system.dim();
  std::vector<RatVector> equalities;
  for (const auto& c : system.constraints()) {
    if (c.relation != Relation::Eq) continue;
    RatVector row = c.coeffs;
    row.push_back(c.rhs);
    equalities.push_back(std::move(row));
  }
  auto solution = AffineSubspace::from_equations(dim, equalities);
  if (!solution) return std::nullopt;

  // Parametrize the equality solution set as x = p + N y and eliminate over y.
  const RatVector origin = solution->particular_point();
  const std::vector<RatVector> basis = solution->direction_basis();
  std::vector<Inequality> rows;
  for (const auto& c : system.constraints()) {
    if (c.relation == Relation::Eq) continue;
    Inequality row;
    row.coeffs.reserve(basis.size());
    for (const auto& b : basis) row.coeffs.push_back(dot(c.coeffs, b));
    row.rhs = c.rhs - dot(c.coeffs, origin);
    row.strict = c.relation == Relation::Gt;
    rows.push_back(std::move(row));
  }
  auto y = fourier_motzkin(std::move(rows), basis.size());
  if (!y) return std::nullopt;
  RatVector x = origin;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) x[i] += (*y)[j] * basis[j][i];
  if (!system.satisfied_by(x)) throw std::logic_error("feasibility witness fails its own system");
  return x;
}

std::vector<std::size_t> implicit_equalities(const LinearSystem& cone) {
  for (const auto& c : cone.constraints())
    if (c.relation != Relation::Ge || c.rhs != 0)
      throw std::invalid_argument("implicit_equalities expects a homogeneous >= system");
  const std::size_t k = cone.size();
  std::vector<bool> known_loose(k, false);
  std::vector<std::size_t> implicit;
  for (std::size_t i = 0; i < k; ++i) {
    if (known_loose[i]) continue;
    LinearSystem probe = cone;
    probe.add(cone.constraints()[i].coeffs, Relation::Gt, 0);
    auto witness = feasible(probe);
    if (!witness) {
      implicit.push_back(i);
      continue;
    }
    // every constraint strictly positive at this witness is not implicit either
    for (std::size_t j = i; j < k; ++j)
      if (dot(cone.constraints()[j].coeffs, *witness) > 0) known_loose[j] = true;
  }
  return implicit;
}

}  // namespace arrlevel
