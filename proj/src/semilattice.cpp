#include "arrlevel/semilattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace arrlevel {

namespace {

std::string set_text(AtomSet s) { return s.to_string(); }

// Join table entries: least element containing s + {a}, if any element does.
std::vector<std::optional<std::size_t>> build_join_table(const GeometricSemilattice& m,
                                                         const std::unordered_map<std::uint64_t, std::size_t>& index,
                                                         std::string& violation) {
  const std::size_t n = m.size();
  const std::size_t k = m.atom_count();
  std::vector<std::optional<std::size_t>> table(n * k);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < k; ++a) {
      const AtomSet target = m.element(s).with(a);
      std::uint64_t meet = ~std::uint64_t{0};
      bool any = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (target.subset_of(m.element(u))) {
          meet &= m.element(u).bits();
          any = true;
        }
      }
      if (!any) continue;
      auto it = index.find(meet);
      if (it == index.end()) {
        violation = "upper bounds of " + set_text(m.element(s)) + " and atom " + std::to_string(a) +
                    " have no least element";
        return {};
      }
      table[s * k + a] = it->second;
    }
  }
  return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeometricSemilattice

GeometricSemilattice::GeometricSemilattice(std::size_t atom_count, std::vector<AtomSet> elements,
                                           std::vector<int> ranks)
    : atom_count_(atom_count), elements_(std::move(elements)), ranks_(std::move(ranks)) {
  if (atom_count_ > AtomSet::kCapacity) throw MalformedSemilattice("more than 64 atoms");
  if (ranks_.size() != elements_.size())
    throw MalformedSemilattice("got " + std::to_string(elements_.size()) + " elements but " +
                               std::to_string(ranks_.size()) + " ranks");
  const std::uint64_t allowed = atom_count_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atom_count_) - 1;
  bool has_empty = false;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].bits() & ~allowed)
      throw MalformedSemilattice("element " + std::to_string(i) + " uses an atom id out of range");
    if (ranks_[i] < 0) throw MalformedSemilattice("element " + std::to_string(i) + " has negative rank");
    if (elements_[i].empty()) {
      has_empty = true;
      bottom_ = i;
    }
    max_rank_ = std::max(max_rank_, ranks_[i]);
  }
  if (!has_empty) throw MalformedSemilattice("no element with empty atom set");
  check();
}

void GeometricSemilattice::check() {
  auto fail = [&](std::string why) {
    report_ = ValidationReport{false, std::move(why)};
    join_table_.clear();
  };
  const std::size_t n = elements_.size();
  const std::size_t k = atom_count_;

  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(elements_[i].bits(), i).second)
      return fail("not atomistic: elements " + std::to_string(index_[elements_[i].bits()]) + " and " +
                  std::to_string(i) + " have the same atom set " + set_text(elements_[i]));
  }
  if (ranks_[bottom_] != 0) return fail("the empty element has rank " + std::to_string(ranks_[bottom_]));
  for (std::size_t a = 0; a < k; ++a) {
    auto it = index_.find(AtomSet::singleton(a).bits());
    if (it == index_.end()) return fail("atom " + std::to_string(a) + " is not an element");
    if (ranks_[it->second] != 1) return fail("atom " + std::to_string(a) + " does not have rank 1");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (elements_[i].size() >= 2 && ranks_[i] <= 1)
      return fail("element " + set_text(elements_[i]) + " has rank " + std::to_string(ranks_[i]) +
                  " but contains several atoms");

  try {
    poset_.emplace(RankedPoset::from_atom_sets(elements_, ranks_));
  } catch (const std::invalid_argument& e) {
    return fail(std::string("not ranked: ") + e.what());
  }

  // meets: the atoms below both s and t must form an element
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t)
      if (!index_.count((elements_[s] & elements_[t]).bits()))
        return fail("no meet for " + set_text(elements_[s]) + " and " + set_text(elements_[t]));

  std::string violation;
  join_table_ = build_join_table(*this, index_, violation);
  if (!violation.empty()) return fail(violation);

  // every principal ideal is a geometric lattice: s < s v a is a cover
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < k; ++a) {
      if (elements_[s].contains(a)) continue;
      auto j = join_table_[s * k + a];
      if (j && ranks_[*j] != ranks_[s] + 1)
        return fail("not semimodular: " + set_text(elements_[s]) + " joined with atom " + std::to_string(a) +
                    " jumps from rank " + std::to_string(ranks_[s]) + " to " + std::to_string(ranks_[*j]));
    }
  }

  // exchange condition over all independent atom sets
  std::string exchange;
  std::function<void(AtomSet, std::size_t, std::size_t)> extend = [&](AtomSet set, std::size_t top,
                                                                     std::size_t next) {
    if (!exchange.empty()) return;
    const int r = ranks_[top];
    if (r >= 2) {
      for (std::size_t t = 0; t < n && exchange.empty(); ++t) {
        if (ranks_[t] >= r) continue;
        bool found = false;
        for (auto a : set.indices()) {
          if (!elements_[t].contains(a) && join_table_[t * k + a]) {
            found = true;
            break;
          }
        }
        if (!found)
          exchange = "exchange condition fails for independent set " + set_text(set) + " and element " +
                     set_text(elements_[t]);
      }
    }
    for (std::size_t a = next; a < k && exchange.empty(); ++a) {
      auto j = join_table_[top * k + a];
      if (j && ranks_[*j] == r + 1) extend(set.with(a), *j, a + 1);
    }
  };
  extend(AtomSet{}, bottom_, 0);
  if (!exchange.empty()) return fail(exchange);
  report_ = ValidationReport{};
}

GeometricSemilattice GeometricSemilattice::from_intersection_poset(const IntersectionPoset& l) {
  std::vector<int> ranks;
  for (std::size_t i = 0; i < l.size(); ++i) ranks.push_back(static_cast<int>(l.rank(i)));
  return GeometricSemilattice(l.atom_count(), l.atom_sets(), std::move(ranks));
}

GeometricSemilattice GeometricSemilattice::from_ranked_poset(const RankedPoset& p) {
  const auto atoms = p.level(1);
  if (atoms.size() > AtomSet::kCapacity) throw MalformedSemilattice("more than 64 atoms");
  std::vector<AtomSet> sets(p.size());
  for (std::size_t s = 0; s < p.size(); ++s)
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (p.leq(atoms[a], s)) sets[s] = sets[s].with(a);
  return GeometricSemilattice(atoms.size(), std::move(sets), p.ranks());
}

GeometricSemilattice GeometricSemilattice::from_record(const PosetRecord& record) {
  std::unordered_map<std::size_t, std::size_t> atom_of_id;
  for (const auto& e : record.elements)
    if (e.rank == 1) atom_of_id.emplace(e.id, atom_of_id.size());
  std::vector<AtomSet> sets;
  std::vector<int> ranks;
  for (const auto& e : record.elements) {
    AtomSet s;
    for (auto id : e.atoms) {
      auto it = atom_of_id.find(id);
      if (it == atom_of_id.end())
        throw MalformedSemilattice("element " + std::to_string(e.id) + " lists " + std::to_string(id) +
                                   ", which is not a rank-one element");
      if (it->second >= AtomSet::kCapacity) throw MalformedSemilattice("more than 64 atoms");
      s = s.with(it->second);
    }
    sets.push_back(s);
    ranks.push_back(e.rank);
  }
  return GeometricSemilattice(atom_of_id.size(), std::move(sets), std::move(ranks));
}

PosetRecord GeometricSemilattice::to_record() const {
  std::vector<std::size_t> atom_id(atom_count_);
  for (std::size_t a = 0; a < atom_count_; ++a) {
    auto e = atom_element(a);
    if (!e) throw std::logic_error("atom " + std::to_string(a) + " is not an element");
    atom_id[a] = *e;
  }
  PosetRecord record;
  for (std::size_t i = 0; i < size(); ++i) {
    PosetElementRecord e{i, ranks_[i], {}};
    for (auto a : elements_[i].indices()) e.atoms.push_back(atom_id[a]);
    record.elements.push_back(std::move(e));
  }
  return record;
}

std::optional<std::size_t> GeometricSemilattice::find(AtomSet s) const {
  auto it = index_.find(s.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GeometricSemilattice::require_valid() const {
  if (!report_.ok) throw std::invalid_argument("not a geometric semilattice: " + report_.violation);
}

const RankedPoset& GeometricSemilattice::poset() const {
  if (!poset_) throw std::invalid_argument("not a ranked poset: " + report_.violation);
  return *poset_;
}

std::optional<std::size_t> GeometricSemilattice::join_with_atom(std::size_t s, std::size_t atom) const {
  require_valid();
  if (atom >= atom_count_) throw std::out_of_range("atom id out of range");
  return join_table_[s * atom_count_ + atom];
}

std::optional<std::size_t> GeometricSemilattice::join(AtomSet atoms) const {
  std::optional<std::size_t> cur = bottom_;
  for (auto a : atoms.indices()) {
    cur = join_with_atom(*cur, a);
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::optional<std::size_t> GeometricSemilattice::join(std::size_t s, std::size_t t) const {
  std::optional<std::size_t> cur = s;
  for (auto a : elements_[t].indices()) {
    cur = join_with_atom(*cur, a);
    if (!cur) return std::nullopt;
  }
  return cur;
}

AtomSet GeometricSemilattice::parallel_atoms(std::size_t s) const {
  AtomSet p;
  for (std::size_t a = 0; a < atom_count_; ++a)
    if (!join_with_atom(s, a)) p = p.with(a);
  return p;
}

ValidationReport validate(const GeometricSemilattice& m) { return m.validation(); }

// ---------------------------------------------------------------------------
// closure and cone

AtomSet closure(const GeometricSemilattice& m, AtomSet s, std::span<const std::size_t> accumulation_order) {
  const std::size_t a0 = m.atom_count();
  const AtomSet plain = s.without(a0);
  if (!s.contains(a0))
    if (auto j = m.join(plain)) return m.element(*j);
  std::size_t t = m.bottom();
  for (auto a : accumulation_order) {
    if (!plain.contains(a)) continue;
    if (auto j = m.join_with_atom(t, a)) t = *j;
  }
  return (m.element(t) | m.parallel_atoms(t)).with(a0);
}

AtomSet closure(const GeometricSemilattice& m, AtomSet s) {
  const auto order = s.without(m.atom_count()).indices();
  return closure(m, s, order);
}

namespace {

struct ConeSets {
  std::vector<AtomSet> elements;
  std::vector<int> ranks;
};

ConeSets cone_sets(const GeometricSemilattice& m) {
  m.require_valid();
  if (m.atom_count() + 1 > AtomSet::kCapacity) throw std::length_error("too many atoms for the cone");
  ConeSets out{m.elements(), m.ranks()};
  std::unordered_map<std::uint64_t, int> seen;
  for (std::size_t s = 0; s < m.size(); ++s) {
    const AtomSet c = (m.element(s) | m.parallel_atoms(s)).with(m.atom_count());
    const int r = m.rank(s) + 1;
    auto [it, fresh] = seen.emplace(c.bits(), r);
    if (!fresh) {
      if (it->second != r) throw std::logic_error("centralized element " + c.to_string() + " gets two ranks");
      continue;
    }
    out.elements.push_back(c);
    out.ranks.push_back(r);
  }
  return out;
}

}  // namespace

ConedLattice::ConedLattice(GeometricSemilattice base)
    : base_(std::move(base)),
      poset_([&] {
        ConeSets sets = cone_sets(base_);
        elements_ = std::move(sets.elements);
        ranks_ = std::move(sets.ranks);
        return RankedPoset::from_atom_sets(elements_, ranks_);
      }()) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].bits(), i);
}

std::optional<std::size_t> ConedLattice::find(AtomSet s) const {
  auto it = index_.find(s.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ConedLattice::centralized_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (is_centralized(i)) out.push_back(i);
  return out;
}

std::size_t ConedLattice::centralized_bottom() const {
  return *find(closure(AtomSet::singleton(a0())));
}

PosetRecord ConedLattice::to_record() const {
  std::vector<std::size_t> atom_id(atom_count());
  for (std::size_t a = 0; a < atom_count(); ++a) atom_id[a] = *find(AtomSet::singleton(a));
  PosetRecord record;
  record.a0 = atom_id[a0()];
  for (std::size_t i = 0; i < size(); ++i) {
    PosetElementRecord e{i, ranks_[i], {}};
    for (auto a : elements_[i].indices()) e.atoms.push_back(atom_id[a]);
    record.elements.push_back(std::move(e));
  }
  return record;
}

AtomSet ConedLattice::closure(AtomSet s) const { return arrlevel::closure(base_, s); }

std::size_t ConedLattice::join(std::size_t i, std::size_t j) const {
  auto k = find(closure(elements_[i] | elements_[j]));
  if (!k) throw std::logic_error("closure left the cone");
  return *k;
}

std::size_t ConedLattice::meet(std::size_t i, std::size_t j) const {
  auto k = find(elements_[i] & elements_[j]);
  if (!k) throw std::logic_error("cone is not closed under intersection");
  return *k;
}

ConedLattice cone(const GeometricSemilattice& m) { return ConedLattice(m); }

GeometricSemilattice centralization(const ConedLattice& cm) {
  return GeometricSemilattice::from_ranked_poset(cm.poset().induced(cm.centralized_elements()));
}

GeometricSemilattice centralization(const GeometricSemilattice& m) { return centralization(cone(m)); }

Localization localize(const ConedLattice& cm, AtomSet s) {
  auto idx = cm.find(s);
  if (!idx || !cm.is_centralized(*idx))
    throw std::invalid_argument(s.to_string() + " is not an element of the centralization");
  const GeometricSemilattice& m = cm.base();
  Localization out{GeometricSemilattice(0, {AtomSet{}}, {0}), s.without(cm.a0()).indices()};
  std::vector<std::size_t> position(m.atom_count(), 0);
  for (std::size_t i = 0; i < out.atom_origin.size(); ++i) position[out.atom_origin[i]] = i;
  std::vector<AtomSet> sets;
  std::vector<int> ranks;
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (!m.element(u).subset_of(s)) continue;
    AtomSet mapped;
    for (auto a : m.element(u).indices()) mapped = mapped.with(position[a]);
    sets.push_back(mapped);
    ranks.push_back(m.rank(u));
  }
  out.semilattice = GeometricSemilattice(out.atom_origin.size(), std::move(sets), std::move(ranks));
  return out;
}

Localization localize(const GeometricSemilattice& m, AtomSet s) { return localize(cone(m), s); }

IntPolynomial char_poly(const GeometricSemilattice& m) {
  return char_poly(m.poset(), static_cast<std::size_t>(m.rank()));
}

ZaslavskyCounts counts(const GeometricSemilattice& m) {
  return zaslavsky_counts(m.poset(), static_cast<std::size_t>(m.rank()));
}

namespace {

// Per centralized element S: chi of the filter above S in the centralization,
// and chi(1) of the localization at S, read off the cone and base posets.
struct CentralTerm {
  int rank = 0;  // rank of S in the centralization
  IntPolynomial filter_chi;
  Integer local_chi_at_one;
};

std::vector<CentralTerm> central_terms(const GeometricSemilattice& m) {
  const ConedLattice cm = cone(m);
  const RankedPoset& cp = cm.poset();
  const RankedPoset& mp = m.poset();
  const auto centralized = cm.centralized_elements();
  const int n = m.rank();
  std::vector<CentralTerm> out;
  for (auto s : centralized) {
    CentralTerm term;
    term.rank = cm.rank(s) - 1;
    std::vector<Integer> coeffs(static_cast<std::size_t>(n - term.rank) + 1, Integer(0));
    for (auto t : centralized)
      if (cp.leq(s, t)) coeffs[static_cast<std::size_t>(n - (cm.rank(t) - 1))] += Integer(static_cast<long>(cp.mobius(s, t)));
    term.filter_chi = IntPolynomial(std::move(coeffs));
    Integer sum = 0;
    for (std::size_t u = 0; u < m.size(); ++u)
      if (m.element(u).subset_of(cm.element(s))) sum += Integer(static_cast<long>(mp.mobius(m.bottom(), u)));
    term.local_chi_at_one = sum;
    out.push_back(std::move(term));
  }
  return out;
}

Integer sign(long exponent) { return exponent % 2 == 0 ? Integer(1) : Integer(-1); }

}  // namespace

std::vector<Integer> level_distribution(const GeometricSemilattice& m) {
  m.require_valid();
  const int n = m.rank();
  std::vector<Integer> levels(static_cast<std::size_t>(n) + 1, Integer(0));
  for (const auto& term : central_terms(m)) {
    const int d = n - term.rank;
    Integer regions = sign(d) * term.filter_chi.evaluate(Integer(-1));
    Integer bounded = sign(term.rank) * term.local_chi_at_one;
    levels[static_cast<std::size_t>(d)] += regions * bounded;
  }
  return levels;
}

ChiIdentity chi_identity_check(const GeometricSemilattice& m) {
  m.require_valid();
  ChiIdentity out;
  out.lhs = char_poly(m);
  for (const auto& term : central_terms(m)) out.rhs += term.filter_chi * term.local_chi_at_one;
  out.equal = out.lhs == out.rhs;
  return out;
}

bool is_uniform(const RankedPoset& lattice) {
  for (int r = 0; r <= lattice.max_rank(); ++r) {
    const auto level = lattice.level(r);
    if (level.size() < 2) continue;
    const RankedPoset first = lattice.filter(level.front());
    for (std::size_t i = 1; i < level.size(); ++i)
      if (!poset_isomorphic(first, lattice.filter(level[i]))) return false;
  }
  return true;
}

std::optional<UniformExpansion> uniform_expansion(const GeometricSemilattice& m) {
  const GeometricSemilattice central = centralization(m);
  const RankedPoset& lp = central.poset();
  if (!is_uniform(lp)) return std::nullopt;
  const int n = central.rank();
  UniformExpansion out;
  out.levels = level_distribution(m);
  ScaledPolynomial sum;
  for (int d = 0; d <= n; ++d) {
    const auto level = lp.level(n - d);
    const RankedPoset filter = lp.filter(level.front());
    const IntPolynomial chi = char_poly(filter, static_cast<std::size_t>(d));
    out.basis.emplace_back(chi, chi.evaluate(Integer(-1)));
    sum += out.basis.back() * Rational(out.levels[static_cast<std::size_t>(d)]);
  }
  out.identity_holds = sum * Rational(sign(n)) == ScaledPolynomial(char_poly(m), Integer(1));
  return out;
}

GeometricSemilattice remove_atom_filter(const GeometricSemilattice& lattice, std::size_t atom) {
  if (atom >= lattice.atom_count()) throw std::out_of_range("atom id out of range");
  std::vector<AtomSet> sets;
  std::vector<int> ranks;
  const std::uint64_t low = (std::uint64_t{1} << atom) - 1;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const AtomSet s = lattice.element(i);
    if (s.contains(atom)) continue;
    sets.push_back(AtomSet::from_bits((s.bits() & low) | ((s.bits() & ~low) >> 1)));
    ranks.push_back(lattice.rank(i));
  }
  return GeometricSemilattice(lattice.atom_count() - 1, std::move(sets), std::move(ranks));
}

GeometricSemilattice uniform_matroid_flats(std::size_t k, std::size_t m) {
  if (k < 1 || k > m) throw std::invalid_argument("uniform matroid needs 1 <= k <= m");
  if (k == 1 && m > 1) throw std::invalid_argument("U_{1,m} with m > 1 is not simple");
  if (m > AtomSet::kCapacity - 1) throw std::length_error("too many atoms");
  std::vector<AtomSet> sets;
  std::vector<int> ranks;
  std::function<void(std::size_t, AtomSet)> grow = [&](std::size_t next, AtomSet s) {
    if (s.size() < k) {
      sets.push_back(s);
      ranks.push_back(static_cast<int>(s.size()));
    }
    if (s.size() + 1 >= k) return;
    for (std::size_t a = next; a < m; ++a) grow(a + 1, s.with(a));
  };
  grow(0, AtomSet{});
  AtomSet all;
  for (std::size_t a = 0; a < m; ++a) all = all.with(a);
  sets.push_back(all);
  ranks.push_back(static_cast<int>(k));
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (ranks[x] != ranks[y]) return ranks[x] < ranks[y];
    return sets[x].indices() < sets[y].indices();
  });
  std::vector<AtomSet> sorted_sets;
  std::vector<int> sorted_ranks;
  for (auto i : order) {
    sorted_sets.push_back(sets[i]);
    sorted_ranks.push_back(ranks[i]);
  }
  return GeometricSemilattice(m, std::move(sorted_sets), std::move(sorted_ranks));
}

}  // namespace arrlevel
