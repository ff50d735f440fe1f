#pragma once

// Deformations of the braid arrangement and the identities relating their
// level counts, bounded counts and characteristic polynomials.

#include "arrlevel/arrangement.hpp"
#include "arrlevel/posets.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace arrlevel {

/// Hyperplanes x_i - x_j = c for pairs i < j in lexicographic order and, for
/// each pair, the offsets in ascending order. All throw for n = 0.
Arrangement braid(std::size_t n);
Arrangement shi(std::size_t n);        // c in {0, 1}
Arrangement catalan(std::size_t n);    // c in {-1, 0, 1}
Arrangement semiorder(std::size_t n);  // c in {-1, 1}
/// For each pair i < j: x_i - x_j = 0, then x_1 - x_j = i.
Arrangement ish(std::size_t n);

/// Hyperplanes x_i - x_j = c for the given offsets of each pair (i, j),
/// listed pair by pair in lexicographic order.
Arrangement braid_deformation(std::size_t n, const std::vector<std::vector<Rational>>& offsets);

/// A sequence n -> A_n with memoized bounded counts and level histograms.
/// Copies share the memo, which is guarded by a mutex.
class ExponentialFamily {
 public:
  ExponentialFamily(std::string name, std::function<Arrangement(std::size_t)> generator);

  const std::string& name() const { return name_; }
  Arrangement arrangement(std::size_t n) const { return generator_(n); }
  /// b(A_n); b(A_0) = 1.
  Integer bounded_count(std::size_t n) const;
  /// Level histogram r_0(A_n)..r_n(A_n) by region enumeration; A_0 gives {1}.
  std::vector<Integer> levels(std::size_t n) const;
  /// r_l(A_n), zero when l > n.
  Integer level(std::size_t n, std::size_t l) const;

 private:
  struct Memo;
  std::string name_;
  std::function<Arrangement(std::size_t)> generator_;
  std::shared_ptr<Memo> memo_;
};

/// braid, shi, catalan, semiorder or ish; throws std::invalid_argument otherwise.
ExponentialFamily family_by_name(const std::string& name);
const std::vector<std::string>& family_names();

/// l! times the sum over set partitions of {1..n} into l blocks of the
/// product of b(A_|block|). Requires 1 <= n and l <= n; l = 0 gives 0.
Integer exp_level_formula(const ExponentialFamily& fam, std::size_t n, std::size_t l);

struct IdentityCheck {
  Integer lhs;
  Integer rhs;
  bool equal = false;
};

/// r_{l1+l2}(A_n) against sum_i C(n,i) r_l1(A_i) r_l2(A_{n-i}).
IdentityCheck binom_convolution_check(const ExponentialFamily& fam, std::size_t n, std::size_t l1, std::size_t l2);

/// L(centralize(a)) is isomorphic to L(braid(dim)).
bool is_braid_deformation(const Arrangement& a);

/// sum_l (-1)^(n-l) levels[l] C(t, l), with n = levels.size() - 1.
IntPolynomial chi_from_level_sequence(const std::vector<Integer>& levels);
/// r_l = (-1)^n sum_k (-1)^k C(l, k) chi(k), for l = 0..n.
std::vector<Integer> levels_from_chi_poly(const IntPolynomial& chi, std::size_t n);

/// Both throw std::invalid_argument unless is_braid_deformation(a).
IntPolynomial chi_from_levels(const Arrangement& a);
std::vector<Integer> levels_from_chi(const Arrangement& a);

/// Set partitions of {0..n-1}, each as its list of blocks.
std::vector<std::vector<std::vector<std::size_t>>> set_partitions(std::size_t n);

}  // namespace arrlevel
