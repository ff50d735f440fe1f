#include "arrlevel/verify.hpp"

#include "arrlevel/families.hpp"
#include "arrlevel/regions.hpp"
#include "arrlevel/text_format.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace arrlevel {

namespace {

std::string join(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i].get_str();
  }
  return out;
}

// Runs `body`, turning exceptions into failed checks.
CheckResult run_check(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return CheckResult{name, false, std::string("exception: ") + e.what()};
  }
}

CheckResult verdict(bool ok, std::string detail = {}) { return CheckResult{{}, ok, std::move(detail)}; }

bool mobius_alternates(const RankedPoset& p) {
  for (std::size_t s = 0; s < p.size(); ++s) {
    const std::int64_t mu = p.mobius(p.min_element(), s);
    if (mu == 0 || ((mu > 0) != (p.rank(s) % 2 == 0))) return false;
  }
  return true;
}

std::vector<std::size_t> elements_where(const IntersectionPoset& l, const std::function<bool(AtomSet)>& keep) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (keep(l.atoms(i))) out.push_back(i);
  return out;
}

Integer sum_of(const std::vector<Integer>& v) {
  Integer s = 0;
  for (const auto& x : v) s += x;
  return s;
}

// Level histogram shifted from ambient indexing to rank indexing.
std::vector<Integer> drop_leading(const std::vector<Integer>& h, std::size_t k) {
  return std::vector<Integer>(h.begin() + static_cast<long>(k), h.end());
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::string format_results(const std::vector<CheckResult>& results) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::string out;
  for (const auto& r : results) {
    out += r.passed ? "PASS  " : "FAIL  ";
    out += r.name;
    if (!r.detail.empty()) {
      out += std::string(width - r.name.size() + 2, ' ');
      out += r.detail;
    }
    out += '\n';
  }
  return out;
}

CheckResult check_closure_laws(const GeometricSemilattice& m) {
  return run_check("closure laws", [&] {
    const ConedLattice cm = cone(m);
    const std::size_t k = cm.atom_count();
    std::vector<std::uint64_t> subsets;
    if (k <= 9) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) subsets.push_back(x);
    } else {
      std::mt19937_64 rng(k);
      const std::uint64_t mask = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
      for (int i = 0; i < 512; ++i) subsets.push_back(rng() & mask);
    }
    for (auto bits : subsets) {
      const AtomSet x = AtomSet::from_bits(bits);
      const AtomSet c = cm.closure(x);
      if (!x.subset_of(c)) return verdict(false, "X not inside cl(X) for X = " + x.to_string());
      if (!cm.find(c)) return verdict(false, "cl(" + x.to_string() + ") is not in the cone");
      auto order = x.without(cm.a0()).indices();
      std::reverse(order.begin(), order.end());
      if (closure(m, x, order) != c) return verdict(false, "cl(" + x.to_string() + ") depends on accumulation order");
      for (std::size_t a = 0; a < k; ++a)
        if (!c.subset_of(cm.closure(x.with(a))))
          return verdict(false, "cl not monotone at " + x.to_string() + " + " + std::to_string(a));
    }
    for (auto e : cm.elements())
      if (cm.closure(e) != e) return verdict(false, "cl(X) != X for cone element " + e.to_string());
    return verdict(true, std::to_string(subsets.size()) + (k <= 9 ? " subsets (all)" : " sampled subsets"));
  });
}

CheckResult check_cone_geometric(const ConedLattice& cm) {
  return run_check("cone is a geometric lattice", [&] {
    const std::size_t n = cm.size();
    const RankedPoset& p = cm.poset();
    for (std::size_t a = 0; a < cm.atom_count(); ++a) {
      auto e = cm.find(AtomSet::singleton(a));
      if (!e || cm.rank(*e) != 1) return verdict(false, "atom " + std::to_string(a) + " missing");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t meet = cm.meet(i, j);
        const std::size_t jn = cm.join(i, j);
        std::uint64_t least = ~std::uint64_t{0};
        const AtomSet both = cm.element(i) | cm.element(j);
        for (std::size_t u = 0; u < n; ++u)
          if (both.subset_of(cm.element(u))) least &= cm.element(u).bits();
        if (cm.element(jn).bits() != least)
          return verdict(false, "cl(S + T) is not the least upper bound for " + cm.element(i).to_string() + ", " +
                                    cm.element(j).to_string());
        if (cm.rank(i) + cm.rank(j) < cm.rank(meet) + cm.rank(jn))
          return verdict(false, "semimodular inequality fails for " + cm.element(i).to_string() + ", " +
                                    cm.element(j).to_string());
      }
    }
    if (!mobius_alternates(p)) return verdict(false, "Moebius function does not alternate in sign");
    return verdict(true, std::to_string(n) + " elements, rank " + std::to_string(p.max_rank()));
  });
}

CheckResult check_wachs_round_trip(const GeometricSemilattice& lattice, std::size_t atom) {
  return run_check("cone(L - L^a) = L, a = " + std::to_string(atom), [&] {
    const GeometricSemilattice m = remove_atom_filter(lattice, atom);
    if (!m.validation()) return verdict(false, "L - L^a invalid: " + m.validation().violation);
    const ConedLattice cm = cone(m);
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    for (std::size_t j = 0; j < m.atom_count(); ++j)
      fixed.emplace_back(*cm.find(AtomSet::singleton(j)), *lattice.atom_element(j < atom ? j : j + 1));
    fixed.emplace_back(*cm.find(AtomSet::singleton(cm.a0())), *lattice.atom_element(atom));
    if (cm.size() != lattice.size())
      return verdict(false, std::to_string(cm.size()) + " vs " + std::to_string(lattice.size()) + " elements");
    return verdict(poset_isomorphic(cm.poset(), lattice.poset(), fixed).has_value());
  });
}

CheckResult check_cone_matches_geometry(const Arrangement& a) {
  return run_check("cone(L(A)) = L(cA), a0 -> H0", [&] {
    const GeometricSemilattice m = GeometricSemilattice::from_intersection_poset(intersection_poset(a));
    const ConedLattice cm = cone(m);
    const IntersectionPoset lc = intersection_poset(cone_arrangement(a));
    if (cm.size() != lc.size())
      return verdict(false, std::to_string(cm.size()) + " vs " + std::to_string(lc.size()) + " elements");
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    auto flat_of = [&](std::size_t h) {
      for (std::size_t i = 0; i < lc.size(); ++i)
        if (lc.atoms(i) == AtomSet::singleton(h)) return i;
      throw std::logic_error("cone hyperplane missing from its intersection poset");
    };
    for (std::size_t i = 0; i < a.size(); ++i) fixed.emplace_back(*cm.find(AtomSet::singleton(i)), flat_of(i + 1));
    fixed.emplace_back(*cm.find(AtomSet::singleton(cm.a0())), flat_of(0));
    return verdict(poset_isomorphic(cm.poset(), lc.poset(), fixed).has_value(), std::to_string(cm.size()) + " elements");
  });
}

CheckResult check_bijection(const Arrangement& a) {
  return run_check("Phi/Psi bijection", [&] {
    const DerivedArrangement central = centralize(a);
    const IntersectionPoset lc = intersection_poset(central.arrangement);
    const auto regions = enumerate_regions(a);
    std::map<std::size_t, Integer> per_flat;
    for (const auto& r : regions) {
      const RecessionCone cone = recession_cone(a, r, lc);
      const PhiSplit split = phi_split(a, cone.span_flat, r);
      const Region back = psi_join(a, cone.span_flat, split.upper, split.bounded);
      if (back.sign != r.sign) return verdict(false, "psi(phi(R)) != R for " + r.sign_string());
      per_flat[cone.flat_id] += 1;
    }
    for (std::size_t v = 0; v < lc.size(); ++v) {
      const Flat& flat = lc.flat(v);
      const auto restricted = restriction(central.arrangement, flat).arrangement;
      const auto local = localization(a, flat).arrangement;
      const Integer expect = zaslavsky_counts(intersection_poset(restricted).poset(), restricted.dim()).regions *
                             zaslavsky_counts(intersection_poset(local).poset(), local.dim()).bounded;
      if (per_flat[v] != expect)
        return verdict(false, "flat " + std::to_string(v) + ": " + per_flat[v].get_str() + " regions, expected " + expect.get_str());
    }
    return verdict(true, std::to_string(regions.size()) + " regions over " + std::to_string(lc.size()) + " flats");
  });
}

std::vector<CheckResult> verify_arrangement(const Arrangement& a) {
  std::vector<CheckResult> out;
  const std::size_t n = a.dim();
  const IntersectionPoset la = intersection_poset(a);
  const DerivedArrangement central = centralize(a);
  const IntersectionPoset lc = intersection_poset(central.arrangement);
  const auto regions = enumerate_regions(a);
  const ZaslavskyCounts zc = zaslavsky_counts(la.poset(), n);
  const std::vector<Integer> hist = level_histogram(a);

  out.push_back(run_check("L(A) is a geometric semilattice", [&] {
    const auto m = GeometricSemilattice::from_intersection_poset(la);
    return verdict(m.validation().ok, m.validation().ok ? std::to_string(la.size()) + " flats" : m.validation().violation);
  }));
  out.push_back(run_check("Moebius signs alternate with rank", [&] { return verdict(mobius_alternates(la.poset())); }));
  out.push_back(run_check("region count = r(A)", [&] {
    return verdict(zc.regions == Integer(static_cast<long>(regions.size())),
                   std::to_string(regions.size()) + " regions, r = " + zc.regions.get_str());
  }));
  out.push_back(run_check("levels: enumeration = formula", [&] {
    const auto f = levels_via_formula(a);
    return verdict(f == hist, "enumerate " + join(hist) + ", formula " + join(f));
  }));
  out.push_back(run_check("level sums and extremes", [&] {
    const Integer rc = zaslavsky_counts(lc.poset(), n).regions;
    const bool ok = sum_of(hist) == zc.regions && hist[n - a.rank()] == zc.bounded && hist[n] == rc;
    return verdict(ok, "sum " + sum_of(hist).get_str() + ", r_{n-rank} " + hist[n - a.rank()].get_str() + " vs b " +
                           zc.bounded.get_str() + ", r_n " + hist[n].get_str() + " vs r(centralization) " + rc.get_str());
  }));
  out.push_back(run_check("chi via regions = chi", [&] {
    const ScaledPolynomial via = chi_via_regions(a);
    const IntPolynomial chi = char_poly(la.poset(), n);
    return verdict(via == ScaledPolynomial(chi, 1), chi.to_string());
  }));

  // recession cones: characterization, Lemma-style sampling and strict interior points
  out.push_back(run_check("recession cones", [&] {
    for (const auto& r : regions) {
      const LinearSystem region = region_system(a, r.sign);
      const RecessionCone cone = recession_cone(a, r, lc);
      std::vector<bool> implicit(a.size(), false);
      for (auto i : cone.implicit_eq) implicit[i] = true;
      RatVector strict(n, Rational(0));
      for (std::size_t i = 0; i < a.size(); ++i) {
        const bool contains_span = cone.span_flat.lies_in(a[i].normal, Rational(0));
        if (contains_span != implicit[i])
          return verdict(false, "implicit equality " + std::to_string(i) + " disagrees with the span, region " + r.sign_string());
        if (implicit[i]) continue;
        LinearSystem probe = cone.system;
        RatVector c = cone.system.constraints()[i].coeffs;
        probe.add(c, Relation::Ge, Rational(1));
        auto v = feasible(probe);
        if (!v) return verdict(false, "no cone point off hyperplane " + std::to_string(i));
        for (int scale : {1, 10, 100}) {
          RatVector x = r.witness;
          for (std::size_t d = 0; d < n; ++d) x[d] += Rational(scale) * (*v)[d];
          if (!region.satisfied_by(x)) return verdict(false, "witness + c v left the region " + r.sign_string());
        }
        // -v violates constraint i; a large enough multiple leaves the region
        const Rational slack = a[i].evaluate(r.witness) * r.sign[i];
        const Rational rate = dot(c, *v);
        const Rational scale = slack / rate + 1;
        RatVector x = r.witness;
        for (std::size_t d = 0; d < n; ++d) x[d] -= scale * (*v)[d];
        if (region.satisfied_by(x)) return verdict(false, "direction outside the cone stayed in region " + r.sign_string());
        for (std::size_t d = 0; d < n; ++d) strict[d] += (*v)[d];
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational value = dot(cone.system.constraints()[i].coeffs, strict);
        if (implicit[i] ? value != 0 : value <= 0)
          return verdict(false, "summed cone point not strictly inside, region " + r.sign_string());
      }
    }
    return verdict(true, std::to_string(regions.size()) + " regions");
  }));

  out.push_back(check_bijection(a));

  out.push_back(run_check("cone lattice isomorphisms", [&] {
    const IntersectionPoset lcone = intersection_poset(cone_arrangement(a));
    const RankedPoset& pc = lcone.poset();
    auto below_h0 = elements_where(lcone, [](AtomSet s) { return !s.contains(0); });
    auto above_h0 = elements_where(lcone, [](AtomSet s) { return s.contains(0); });
    if (!poset_isomorphic(pc.induced(below_h0), la.poset()))
      return verdict(false, "L(cA) minus the filter of H0 is not L(A)");
    if (!poset_isomorphic(pc.induced(above_h0), lc.poset()))
      return verdict(false, "filter of H0 is not L(centralization)");
    for (std::size_t v = 0; v < lc.size(); ++v) {
      const Flat& flat = lc.flat(v);
      std::vector<RatVector> rows;
      for (std::size_t r = 0; r < flat.rank(); ++r) {
        RatVector row = flat.canonical().row(r);
        row.insert(row.begin() + static_cast<long>(n), Rational(0));
        rows.push_back(std::move(row));
      }
      RatVector h0(n + 2, Rational(0));
      h0[n] = 1;
      rows.push_back(std::move(h0));
      auto lifted = lcone.find(*Flat::from_equations(n + 1, rows));
      if (!lifted) return verdict(false, "flat " + std::to_string(v) + " has no image in L(cA)");
      std::vector<std::size_t> ideal;
      for (auto e : pc.ideal_elements(*lifted))
        if (!lcone.atoms(e).contains(0)) ideal.push_back(e);
      const auto local = localization(a, flat).arrangement;
      if (!poset_isomorphic(pc.induced(ideal), intersection_poset(local).poset()))
        return verdict(false, "ideal of flat " + std::to_string(v) + " is not L(localization)");
    }
    return verdict(true, std::to_string(lcone.size()) + " flats in L(cA)");
  }));
  out.push_back(check_cone_matches_geometry(a));

  const GeometricSemilattice m = GeometricSemilattice::from_intersection_poset(la);
  out.push_back(run_check("centralization(L(A)) = L(centralize(A))", [&] {
    return verdict(poset_isomorphic(centralization(m).poset(), lc.poset()).has_value());
  }));
  out.push_back(run_check("localize(L(A), V) = L(localization(A, V))", [&] {
    const ConedLattice cm = cone(m);
    for (std::size_t v = 0; v < lc.size(); ++v) {
      // the centralized element of V: hyperplanes whose translate contains V, plus a0
      AtomSet s = AtomSet::singleton(cm.a0());
      for (std::size_t i = 0; i < a.size(); ++i)
        if (lc.atoms(v).contains(central.image[i]->index)) s = s.with(i);
      const Localization loc = localize(cm, s);
      const auto local = localization(a, lc.flat(v)).arrangement;
      if (!poset_isomorphic(loc.semilattice.poset(), intersection_poset(local).poset()))
        return verdict(false, "flat " + std::to_string(v));
    }
    return verdict(true);
  }));
  out.push_back(run_check("level_distribution(L(A)) = histogram of essentialization", [&] {
    const auto ld = level_distribution(m);
    const auto ess = level_histogram(essentialize(a).arrangement);
    const auto shifted = drop_leading(hist, n - a.rank());
    return verdict(ld == ess && ld == shifted, "semilattice " + join(ld) + ", essential " + join(ess));
  }));
  out.push_back(run_check("chi identity on L(A)", [&] {
    const auto c = chi_identity_check(m);
    return verdict(c.equal, c.lhs.to_string() + " vs " + c.rhs.to_string());
  }));
  out.push_back(check_closure_laws(m));
  out.push_back(check_cone_geometric(cone(m)));
  out.push_back(run_check("uniform expansion", [&] {
    const auto u = uniform_expansion(m);
    if (!u) return verdict(true, "centralization not uniform");
    return verdict(u->identity_holds, "levels " + join(u->levels));
  }));
  out.push_back(run_check("derived arrangements", [&] {
    if (!(restriction(a, Flat::whole_space(n)).arrangement == a)) return verdict(false, "restriction to the ambient space changed A");
    if (!(centralize(central.arrangement).arrangement == central.arrangement)) return verdict(false, "centralize not idempotent");
    if (central.arrangement.rank() != a.rank()) return verdict(false, "centralize changed the rank");
    const auto e1 = essentialize(a).arrangement;
    const auto e2 = essentialize(e1).arrangement;
    if (!poset_isomorphic(intersection_poset(e1).poset(), intersection_poset(e2).poset()))
      return verdict(false, "essentialize not idempotent up to isomorphism");
    return verdict(true);
  }));
  if (n > 0 && is_braid_deformation(a)) {
    out.push_back(run_check("braid deformation: chi <-> levels", [&] {
      const IntPolynomial chi = char_poly(la.poset(), n);
      const auto from_levels = chi_from_level_sequence(hist);
      const auto back = levels_from_chi_poly(chi, n);
      return verdict(from_levels == chi && back == hist, chi.to_string() + " / " + join(back));
    }));
  }
  return out;
}

std::vector<CheckResult> verify_semilattice(const GeometricSemilattice& m) {
  std::vector<CheckResult> out;
  out.push_back(CheckResult{"geometric semilattice axioms", m.validation().ok,
                            m.validation().ok ? std::to_string(m.size()) + " elements, rank " + std::to_string(m.rank())
                                              : m.validation().violation});
  if (!m.validation()) return out;
  out.push_back(run_check("Moebius signs alternate with rank", [&] { return verdict(mobius_alternates(m.poset())); }));
  const ConedLattice cm = cone(m);
  out.push_back(check_closure_laws(m));
  out.push_back(check_cone_geometric(cm));
  out.push_back(run_check("cone minus filter of a0 = M", [&] {
    std::vector<int> ranks;
    for (std::size_t i = 0; i < cm.size(); ++i) ranks.push_back(cm.rank(i));
    const GeometricSemilattice coned(cm.atom_count(), cm.elements(), std::move(ranks));
    const auto back = remove_atom_filter(coned, cm.a0());
    return verdict(poset_isomorphic(back.poset(), m.poset()).has_value());
  }));
  out.push_back(run_check("centralization is a geometric lattice of the same rank", [&] {
    const auto c = centralization(cm);
    return verdict(c.validation().ok && c.rank() == m.rank() && c.poset().level(c.rank()).size() == 1,
                   c.validation().violation);
  }));
  out.push_back(run_check("chi identity", [&] {
    const auto c = chi_identity_check(m);
    return verdict(c.equal, c.lhs.to_string() + " vs " + c.rhs.to_string());
  }));
  out.push_back(run_check("level sums", [&] {
    const auto levels = level_distribution(m);
    const auto zc = counts(m);
    const bool positive = std::all_of(levels.begin(), levels.end(), [](const Integer& x) { return x >= 0; });
    return verdict(positive && sum_of(levels) == zc.regions && levels[0] == zc.bounded,
                   "levels " + join(levels) + ", r " + zc.regions.get_str() + ", b " + zc.bounded.get_str());
  }));
  out.push_back(run_check("localizations are geometric semilattices", [&] {
    for (auto s : cm.centralized_elements()) {
      const auto loc = localize(cm, cm.element(s));
      if (!loc.semilattice.validation()) return verdict(false, cm.element(s).to_string() + ": " + loc.semilattice.validation().violation);
    }
    return verdict(true);
  }));
  out.push_back(run_check("uniform expansion", [&] {
    const auto u = uniform_expansion(m);
    if (!u) return verdict(true, "centralization not uniform");
    return verdict(u->identity_holds, "levels " + join(u->levels));
  }));
  return out;
}

Arrangement random_arrangement(std::mt19937_64& rng, std::size_t dim, std::size_t hyperplanes, int coeff) {
  std::uniform_int_distribution<int> pick(-coeff, coeff);
  std::vector<Hyperplane> hs;
  std::vector<Hyperplane> seen;
  while (hs.size() < hyperplanes) {
    Hyperplane h;
    for (std::size_t d = 0; d < dim; ++d) h.normal.emplace_back(pick(rng));
    h.offset = pick(rng);
    if (is_zero(h.normal)) continue;
    const Hyperplane c = h.canonical();
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    hs.push_back(std::move(h));
  }
  return Arrangement(dim, std::move(hs));
}

std::vector<CheckResult> verify_fuzz(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim_pick(2, 3);
  std::uniform_int_distribution<std::size_t> size_pick(0, 6);
  std::uniform_int_distribution<int> small(0, 3);
  std::vector<CheckResult> out;
  std::size_t failures = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t dim = dim_pick(rng);
    // small coefficient ranges make parallel and concurrent hyperplanes common
    const int coeff = small(rng) == 0 ? 1 : 5;
    const Arrangement a = random_arrangement(rng, dim, size_pick(rng), coeff);
    const CheckResult r = run_check("fuzz", [&] {
      const auto hist = level_histogram(a);
      const auto formula = levels_via_formula(a);
      const auto zc = zaslavsky_counts(intersection_poset(a).poset(), dim);
      const auto rc = zaslavsky_counts(intersection_poset(centralize(a).arrangement).poset(), dim).regions;
      const bool ok = hist == formula && sum_of(hist) == zc.regions && hist[dim - a.rank()] == zc.bounded && hist[dim] == rc;
      return verdict(ok, "histogram " + join(hist) + ", formula " + join(formula));
    });
    if (!r.passed) {
      ++failures;
      if (first_failure.empty()) first_failure = "case " + std::to_string(t) + ": " + r.detail + "\n" + write_arrangement(a);
    }
  }
  out.push_back(CheckResult{"fuzz: levels identities on " + std::to_string(count) + " arrangements (seed " +
                                std::to_string(seed) + ")",
                            failures == 0,
                            failures == 0 ? "all passed" : std::to_string(failures) + " failed; first " + first_failure});
  return out;
}

}  // namespace arrlevel
