#include "arrlevel/families.hpp"

#include "arrlevel/regions.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace arrlevel {

namespace {

Hyperplane difference(std::size_t n, std::size_t i, std::size_t j, const Rational& c) {
  RatVector w(n, Rational(0));
  w[i] = 1;
  w[j] = -1;
  return Hyperplane{std::move(w), c};
}

void require_positive(std::size_t n) {
  if (n == 0) throw std::invalid_argument("braid deformations need n >= 1");
}

Arrangement with_offsets(std::size_t n, std::initializer_list<int> offsets) {
  require_positive(n);
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int c : offsets) hs.push_back(difference(n, i, j, Rational(c)));
  return Arrangement(n, std::move(hs));
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(std::size_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer parity_sign(std::size_t e) { return e % 2 == 0 ? Integer(1) : Integer(-1); }

}  // namespace

Arrangement braid(std::size_t n) { return with_offsets(n, {0}); }
Arrangement shi(std::size_t n) { return with_offsets(n, {0, 1}); }
Arrangement catalan(std::size_t n) { return with_offsets(n, {-1, 0, 1}); }
Arrangement semiorder(std::size_t n) { return with_offsets(n, {-1, 1}); }

Arrangement ish(std::size_t n) {
  require_positive(n);
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      hs.push_back(difference(n, i, j, Rational(0)));
      hs.push_back(difference(n, 0, j, Rational(static_cast<long>(i + 1))));
    }
  }
  return Arrangement(n, std::move(hs));
}

Arrangement braid_deformation(std::size_t n, const std::vector<std::vector<Rational>>& offsets) {
  require_positive(n);
  if (offsets.size() != n * (n - 1) / 2) throw std::invalid_argument("need one offset list per pair");
  std::vector<Hyperplane> hs;
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++p)
      for (const auto& c : offsets[p]) hs.push_back(difference(n, i, j, c));
  return Arrangement(n, std::move(hs));
}

struct ExponentialFamily::Memo {
  std::mutex lock;
  std::map<std::size_t, Integer> bounded;
  std::map<std::size_t, std::vector<Integer>> levels;
};

ExponentialFamily::ExponentialFamily(std::string name, std::function<Arrangement(std::size_t)> generator)
    : name_(std::move(name)), generator_(std::move(generator)), memo_(std::make_shared<Memo>()) {}

Integer ExponentialFamily::bounded_count(std::size_t n) const {
  if (n == 0) return 1;
  {
    std::lock_guard guard(memo_->lock);
    if (auto it = memo_->bounded.find(n); it != memo_->bounded.end()) return it->second;
  }
  Integer b = zaslavsky_counts(intersection_poset(arrangement(n)).poset(), n).bounded;
  std::lock_guard guard(memo_->lock);
  return memo_->bounded.emplace(n, b).first->second;
}

std::vector<Integer> ExponentialFamily::levels(std::size_t n) const {
  if (n == 0) return {Integer(1)};
  {
    std::lock_guard guard(memo_->lock);
    if (auto it = memo_->levels.find(n); it != memo_->levels.end()) return it->second;
  }
  auto h = level_histogram(arrangement(n));
  std::lock_guard guard(memo_->lock);
  return memo_->levels.emplace(n, std::move(h)).first->second;
}

Integer ExponentialFamily::level(std::size_t n, std::size_t l) const {
  if (l > n) return 0;
  return levels(n)[l];
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"braid", "shi", "catalan", "semiorder", "ish"};
  return names;
}

ExponentialFamily family_by_name(const std::string& name) {
  if (name == "braid") return ExponentialFamily(name, braid);
  if (name == "shi") return ExponentialFamily(name, shi);
  if (name == "catalan") return ExponentialFamily(name, catalan);
  if (name == "semiorder") return ExponentialFamily(name, semiorder);
  if (name == "ish") return ExponentialFamily(name, ish);
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::vector<std::vector<std::vector<std::size_t>>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::vector<std::size_t>> blocks;
  std::function<void(std::size_t)> place = [&](std::size_t x) {
    if (x == n) {
      out.push_back(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(x);
      place(x + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({x});
    place(x + 1);
    blocks.pop_back();
  };
  place(0);
  return out;
}

Integer exp_level_formula(const ExponentialFamily& fam, std::size_t n, std::size_t l) {
  if (n == 0) throw std::invalid_argument("exp_level_formula needs n >= 1");
  if (l > n) throw std::invalid_argument("level exceeds n");
  if (l == 0) return 0;
  Integer sum = 0;
  for (const auto& partition : set_partitions(n)) {
    if (partition.size() != l) continue;
    Integer term = 1;
    for (const auto& block : partition) term *= fam.bounded_count(block.size());
    sum += term;
  }
  return factorial(l) * sum;
}

IdentityCheck binom_convolution_check(const ExponentialFamily& fam, std::size_t n, std::size_t l1, std::size_t l2) {
  IdentityCheck out;
  out.lhs = fam.level(n, l1 + l2);
  out.rhs = 0;
  for (std::size_t i = 0; i <= n; ++i) out.rhs += binomial(n, i) * fam.level(i, l1) * fam.level(n - i, l2);
  out.equal = out.lhs == out.rhs;
  return out;
}

bool is_braid_deformation(const Arrangement& a) {
  if (a.dim() == 0) return false;
  const auto central = intersection_poset(centralize(a).arrangement);
  const auto target = intersection_poset(braid(a.dim()));
  if (central.size() != target.size()) return false;
  return poset_isomorphic(central.poset(), target.poset()).has_value();
}

IntPolynomial chi_from_level_sequence(const std::vector<Integer>& levels) {
  if (levels.empty()) throw std::invalid_argument("empty level sequence");
  const std::size_t n = levels.size() - 1;
  ScaledPolynomial sum;
  for (std::size_t l = 0; l <= n; ++l)
    sum += ScaledPolynomial(IntPolynomial::falling_factorial(l) * (parity_sign(n - l) * levels[l]), factorial(l));
  if (!sum.is_integral()) throw std::logic_error("binomial expansion is not an integer polynomial");
  return sum.numerator();
}

std::vector<Integer> levels_from_chi_poly(const IntPolynomial& chi, std::size_t n) {
  std::vector<Integer> out;
  for (std::size_t l = 0; l <= n; ++l) {
    Integer sum = 0;
    for (std::size_t k = 0; k <= l; ++k) sum += parity_sign(k) * binomial(l, k) * chi.evaluate(Integer(static_cast<long>(k)));
    out.push_back(parity_sign(n) * sum);
  }
  return out;
}

IntPolynomial chi_from_levels(const Arrangement& a) {
  if (!is_braid_deformation(a)) throw std::invalid_argument("not a nondegenerate deformation of the braid arrangement");
  return chi_from_level_sequence(level_histogram(a));
}

std::vector<Integer> levels_from_chi(const Arrangement& a) {
  if (!is_braid_deformation(a)) throw std::invalid_argument("not a nondegenerate deformation of the braid arrangement");
  return levels_from_chi_poly(char_poly(a), a.dim());
}

}  // namespace arrlevel
