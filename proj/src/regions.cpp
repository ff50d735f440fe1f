#include "arrlevel/regions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace arrlevel {

namespace {

Integer parity_sign(long exponent) { return exponent % 2 == 0 ? Integer(1) : Integer(-1); }

RatVector scaled(const RatVector& v, int s) {
  RatVector out = v;
  if (s < 0)
    for (auto& q : out) q = -q;
  return out;
}

Flat span_of(std::size_t dim, const LinearSystem& cone, const std::vector<std::size_t>& implicit_eq) {
  std::vector<RatVector> rows;
  for (auto i : implicit_eq) {
    RatVector r = cone.constraints()[i].coeffs;
    r.push_back(Rational(0));
    rows.push_back(std::move(r));
  }
  return *Flat::from_equations(dim, rows);
}

// Sign carried from hyperplane i of the source to its image in the
// restriction of the centralization to V, or nullopt when the centralized
// hyperplane contains V.
struct UpperLink {
  std::size_t target;
  int orientation;
};

std::optional<UpperLink> upper_link(const DerivedArrangement& central, const DerivedArrangement& restricted,
                                    std::size_t i) {
  const IndexMap& c = *central.image[i];
  const auto& r = restricted.image[c.index];
  if (!r) return std::nullopt;
  return UpperLink{r->index, c.orientation * r->orientation};
}

// r of a central lattice filter: sum over T >= s of |mu(s, T)|.
Integer filter_regions(const RankedPoset& p, std::size_t s) {
  Integer total = 0;
  for (auto t : p.filter_elements(s))
    total += parity_sign(p.rank(t) - p.rank(s)) * Integer(static_cast<long>(p.mobius(s, t)));
  return total;
}

}  // namespace

std::string Region::sign_string() const {
  std::string out;
  for (int s : sign) out += s > 0 ? '+' : '-';
  return out;
}

LinearSystem region_system(const Arrangement& a, const std::vector<int>& sign) {
  if (sign.size() != a.size()) throw std::invalid_argument("sign vector length does not match the arrangement");
  LinearSystem sys(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    sys.add(scaled(a[i].normal, sign[i]), Relation::Gt, sign[i] > 0 ? a[i].offset : Rational(-a[i].offset));
  return sys;
}

std::vector<Region> enumerate_regions(const Arrangement& a) {
  std::vector<Region> regions{Region{{}, RatVector(a.dim(), Rational(0))}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Hyperplane& h = a[i];
    std::vector<Region> next;
    next.reserve(regions.size() * 2);
    for (auto& r : regions) {
      LinearSystem base(a.dim());
      for (std::size_t j = 0; j < i; ++j)
        base.add(scaled(a[j].normal, r.sign[j]), Relation::Gt, r.sign[j] > 0 ? a[j].offset : Rational(-a[j].offset));
      const Rational value = h.evaluate(r.witness);
      for (int side : {1, -1}) {
        std::optional<RatVector> witness;
        if (value * side > 0) {
          witness = r.witness;
        } else {
          LinearSystem sys = base;
          sys.add(scaled(h.normal, side), Relation::Gt, side > 0 ? h.offset : Rational(-h.offset));
          witness = feasible(sys);
        }
        if (!witness) continue;
        Region piece{r.sign, std::move(*witness)};
        piece.sign.push_back(side);
        next.push_back(std::move(piece));
      }
    }
    regions = std::move(next);
  }
  std::sort(regions.begin(), regions.end(),
            [](const Region& x, const Region& y) { return x.sign > y.sign; });
  return regions;
}

RecessionCone recession_cone(const Arrangement& a, const Region& r, const IntersectionPoset& central) {
  LinearSystem cone(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) cone.add(scaled(a[i].normal, r.sign[i]), Relation::Ge, Rational(0));
  auto implicit = implicit_equalities(cone);
  Flat span = span_of(a.dim(), cone, implicit);
  auto id = central.find(span);
  if (!id) throw std::logic_error("span of a recession cone is not a flat of the centralization");
  return RecessionCone{std::move(cone), std::move(implicit), std::move(span), *id};
}

RecessionCone recession_cone(const Arrangement& a, const Region& r) {
  return recession_cone(a, r, intersection_poset(centralize(a).arrangement));
}

std::vector<Integer> level_histogram(const Arrangement& a) {
  const IntersectionPoset central = intersection_poset(centralize(a).arrangement);
  std::vector<Integer> histogram(a.dim() + 1, Integer(0));
  for (const auto& r : enumerate_regions(a)) histogram[recession_cone(a, r, central).level()] += 1;
  return histogram;
}

std::vector<Integer> levels_via_formula(const Arrangement& a) {
  const DerivedArrangement central = centralize(a);
  const IntersectionPoset lc = intersection_poset(central.arrangement);
  const IntersectionPoset la = intersection_poset(a);
  const RankedPoset& pc = lc.poset();
  const RankedPoset& pa = la.poset();
  const std::size_t n = a.dim();
  std::vector<Integer> levels(n + 1, Integer(0));
  for (std::size_t v = 0; v < lc.size(); ++v) {
    // hyperplanes of the localization at V: those whose translate contains V
    AtomSet local;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (lc.atoms(v).contains(central.image[i]->index)) local = local.with(i);
    Integer chi_at_one = 0;
    for (std::size_t x = 0; x < la.size(); ++x)
      if (la.atoms(x).subset_of(local)) chi_at_one += Integer(static_cast<long>(pa.mobius(pa.min_element(), x)));
    const Integer bounded = parity_sign(static_cast<long>(lc.rank(v))) * chi_at_one;
    levels[n - lc.rank(v)] += filter_regions(pc, v) * bounded;
  }
  return levels;
}

PhiSplit phi_split(const Arrangement& a, const Flat& v, const Region& r) {
  const DerivedArrangement central = centralize(a);
  const IntersectionPoset lc = intersection_poset(central.arrangement);
  if (recession_cone(a, r, lc).span_flat != v)
    throw std::invalid_argument("the recession cone of the region does not span the given flat");
  DerivedArrangement restricted = restriction(central.arrangement, v);
  DerivedArrangement local = localization(a, v);

  std::vector<int> upper_sign(restricted.arrangement.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto link = upper_link(central, restricted, i);
    if (!link) continue;
    const int s = r.sign[i] * link->orientation;
    if (upper_sign[link->target] != 0 && upper_sign[link->target] != s)
      throw std::logic_error("inconsistent signs on a restricted hyperplane");
    upper_sign[link->target] = s;
  }
  auto upper_witness = feasible(region_system(restricted.arrangement, upper_sign));
  if (!upper_witness) throw std::logic_error("restricted sign vector is empty");

  std::vector<int> bounded_sign(local.arrangement.size());
  for (std::size_t j = 0; j < local.arrangement.size(); ++j) bounded_sign[j] = r.sign[local.preimages[j].front().index];
  Region bounded{std::move(bounded_sign), r.witness};

  const IntersectionPoset local_central = intersection_poset(centralize(local.arrangement).arrangement);
  if (recession_cone(local.arrangement, bounded, local_central).level() != a.dim() - local.arrangement.rank())
    throw std::logic_error("localized region is not relatively bounded");

  return PhiSplit{Region{std::move(upper_sign), std::move(*upper_witness)}, std::move(bounded),
                  std::move(restricted), std::move(local)};
}

Region psi_join(const Arrangement& a, const Flat& v, const Region& upper, const Region& bounded) {
  const DerivedArrangement central = centralize(a);
  const DerivedArrangement restricted = restriction(central.arrangement, v);
  const DerivedArrangement local = localization(a, v);
  if (upper.sign.size() != restricted.arrangement.size() || bounded.sign.size() != local.arrangement.size())
    throw std::invalid_argument("sign vectors do not match the restriction and localization");
  std::vector<int> sign(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (local.image[i]) {
      sign[i] = bounded.sign[local.image[i]->index];
    } else {
      auto link = upper_link(central, restricted, i);
      if (!link) throw std::logic_error("hyperplane is in neither the localization nor the restriction");
      sign[i] = upper.sign[link->target] * link->orientation;
    }
  }
  auto witness = feasible(region_system(a, sign));
  if (!witness) throw std::logic_error("combined sign vector is not a region");
  Region r{std::move(sign), std::move(*witness)};
  if (recession_cone(a, r).span_flat != v) throw std::logic_error("combined region spans a different flat");
  return r;
}

ScaledPolynomial chi_via_regions(const Arrangement& a) {
  const IntersectionPoset central = intersection_poset(centralize(a).arrangement);
  std::map<std::size_t, ScaledPolynomial> term;
  ScaledPolynomial sum;
  for (const auto& r : enumerate_regions(a)) {
    const RecessionCone cone = recession_cone(a, r, central);
    auto it = term.find(cone.flat_id);
    if (it == term.end()) {
      const IntPolynomial chi = char_poly(central.poset().filter(cone.flat_id), cone.level());
      it = term.emplace(cone.flat_id, ScaledPolynomial(chi, chi.evaluate(Integer(-1)))).first;
    }
    sum += it->second;
  }
  return sum * Rational(parity_sign(static_cast<long>(a.dim())));
}

IntPolynomial char_poly(const Arrangement& a) { return char_poly(intersection_poset(a).poset(), a.dim()); }

}  // namespace arrlevel
