#include "arrlevel/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace arrlevel {

namespace {

std::string hyperplane_key(const Hyperplane& h) {
  const Hyperplane c = h.canonical();
  std::string key;
  for (const auto& q : c.normal) {
    key += q.get_str();
    key += ',';
  }
  key += '=';
  key += c.offset.get_str();
  return key;
}

const Rational& leading(const RatVector& v) {
  for (const auto& q : v)
    if (q != 0) return q;
  throw std::invalid_argument("zero normal vector");
}

// Sign of lambda in `v = lambda * reference`, both nonzero and parallel.
int relative_orientation(const RatVector& v, const RatVector& reference) {
  return sgn(leading(v)) * sgn(leading(reference));
}

// Pulls every hyperplane back along the chart, dropping the ones that become
// trivial and merging parallel duplicates into the lowest source index.
DerivedArrangement restrict_to_chart(const Arrangement& a, AffineChart chart) {
  const std::size_t d = chart.dim();
  std::vector<Hyperplane> out;
  std::vector<std::vector<IndexMap>> preimages;
  std::vector<std::optional<IndexMap>> image(a.size());
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Hyperplane& h = a[i];
    RatVector u;
    u.reserve(d);
    for (const auto& b : chart.basis) u.push_back(dot(h.normal, b));
    if (is_zero(u)) continue;
    Hyperplane traced{std::move(u), h.offset - dot(h.normal, chart.origin)};
    std::string key = hyperplane_key(traced);
    auto it = seen.find(key);
    if (it == seen.end()) {
      const std::size_t j = out.size();
      seen.emplace(std::move(key), j);
      image[i] = IndexMap{j, 1};
      preimages.push_back({IndexMap{i, 1}});
      out.push_back(std::move(traced));
    } else {
      const std::size_t j = it->second;
      const int o = relative_orientation(traced.normal, out[j].normal);
      image[i] = IndexMap{j, o};
      preimages[j].push_back(IndexMap{i, o});
    }
  }
  return DerivedArrangement{Arrangement(d, std::move(out)), std::move(chart), std::move(preimages), std::move(image)};
}

}  // namespace

Hyperplane Hyperplane::canonical() const {
  const Rational lead = leading(normal);
  Hyperplane c{normal, offset / lead};
  for (auto& q : c.normal) q /= lead;
  return c;
}

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)) {
  for (auto& h : hyperplanes_) {
    for (auto& q : h.normal) q.canonicalize();
    h.offset.canonicalize();
  }
  std::unordered_set<std::string> keys;
  for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
    const auto& h = hyperplanes_[i];
    if (h.normal.size() != dim_)
      throw std::invalid_argument("hyperplane " + std::to_string(i) + " has normal of length " +
                                  std::to_string(h.normal.size()) + ", expected " + std::to_string(dim_));
    if (is_zero(h.normal)) throw std::invalid_argument("hyperplane " + std::to_string(i) + " has a zero normal");
    if (!keys.insert(hyperplane_key(h)).second)
      throw std::invalid_argument("hyperplane " + std::to_string(i) + " duplicates an earlier hyperplane");
  }
}

std::size_t Arrangement::rank() const {
  if (hyperplanes_.empty()) return 0;
  std::vector<RatVector> normals;
  for (const auto& h : hyperplanes_) normals.push_back(h.normal);
  return arrlevel::rref(RatMatrix::from_rows(normals, dim_)).rank;
}

bool Arrangement::is_central() const {
  std::vector<RatVector> rows;
  for (const auto& h : hyperplanes_) {
    RatVector r = h.normal;
    r.push_back(h.offset);
    rows.push_back(std::move(r));
  }
  return AffineSubspace::from_equations(dim_, rows).has_value();
}

AffineChart AffineChart::identity(std::size_t dim) {
  AffineChart c;
  c.origin.assign(dim, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector e(dim, Rational(0));
    e[i] = 1;
    c.basis.push_back(std::move(e));
  }
  return c;
}

RatVector AffineChart::to_ambient(const RatVector& y) const {
  if (y.size() != basis.size()) throw std::invalid_argument("chart coordinate length mismatch");
  RatVector x = origin;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[j] * basis[j][i];
  return x;
}

IntersectionPoset::IntersectionPoset(std::size_t ambient_dim, std::size_t atom_count, std::vector<Flat> flats,
                                     std::vector<AtomSet> atoms)
    : ambient_dim_(ambient_dim),
      atom_count_(atom_count),
      flats_(std::move(flats)),
      atoms_(std::move(atoms)),
      poset_([&] {
        std::vector<int> ranks;
        for (const auto& f : flats_) ranks.push_back(static_cast<int>(f.rank()));
        return RankedPoset::from_atom_sets(atoms_, std::move(ranks));
      }()) {
  for (std::size_t i = 0; i < flats_.size(); ++i) index_.emplace(flats_[i].key(), i);
}

std::optional<std::size_t> IntersectionPoset::find(const Flat& f) const {
  auto it = index_.find(f.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

IntersectionPoset intersection_poset(const Arrangement& a) {
  if (a.size() > AtomSet::kCapacity) throw std::length_error("too many hyperplanes for an intersection poset");
  std::vector<Flat> flats{Flat::whole_space(a.dim())};
  std::unordered_map<std::string, std::size_t> index{{flats[0].key(), 0}};
  std::vector<std::size_t> frontier{0};
  // every flat of rank r+1 is a rank-r flat cut by one more hyperplane
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto f : frontier) {
      for (const auto& h : a.hyperplanes()) {
        if (flats[f].lies_in(h.normal, h.offset)) continue;
        auto g = flats[f].intersect(h.normal, h.offset);
        if (!g) continue;
        if (index.emplace(g->key(), flats.size()).second) {
          next.push_back(flats.size());
          flats.push_back(std::move(*g));
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<AtomSet> atoms(flats.size());
  for (std::size_t f = 0; f < flats.size(); ++f)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (flats[f].lies_in(a[i].normal, a[i].offset)) atoms[f] = atoms[f].with(i);

  std::vector<std::size_t> order(flats.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (flats[x].rank() != flats[y].rank()) return flats[x].rank() < flats[y].rank();
    return atoms[x].indices() < atoms[y].indices();
  });
  std::vector<Flat> sorted_flats;
  std::vector<AtomSet> sorted_atoms;
  for (auto i : order) {
    sorted_flats.push_back(flats[i]);
    sorted_atoms.push_back(atoms[i]);
  }
  return IntersectionPoset(a.dim(), a.size(), std::move(sorted_flats), std::move(sorted_atoms));
}

DerivedArrangement centralize(const Arrangement& a) {
  std::vector<Hyperplane> through_origin;
  through_origin.reserve(a.size());
  for (const auto& h : a.hyperplanes()) through_origin.push_back({h.normal, Rational(0)});

  std::vector<Hyperplane> out;
  std::vector<std::vector<IndexMap>> preimages;
  std::vector<std::optional<IndexMap>> image(a.size());
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < through_origin.size(); ++i) {
    std::string key = hyperplane_key(through_origin[i]);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      image[i] = IndexMap{out.size(), 1};
      preimages.push_back({IndexMap{i, 1}});
      out.push_back(through_origin[i]);
    } else {
      const std::size_t j = it->second;
      const int o = relative_orientation(through_origin[i].normal, out[j].normal);
      image[i] = IndexMap{j, o};
      preimages[j].push_back(IndexMap{i, o});
    }
  }
  return DerivedArrangement{Arrangement(a.dim(), std::move(out)), AffineChart::identity(a.dim()),
                            std::move(preimages), std::move(image)};
}

DerivedArrangement restriction(const Arrangement& a, const Flat& v) {
  if (v.ambient_dim() != a.dim()) throw std::invalid_argument("flat lives in a different dimension");
  return restrict_to_chart(a, AffineChart{v.particular_point(), v.direction_basis()});
}

DerivedArrangement localization(const Arrangement& a, const Flat& v) {
  if (v.ambient_dim() != a.dim()) throw std::invalid_argument("flat lives in a different dimension");
  if (!v.is_linear()) throw std::invalid_argument("localization needs a linear subspace");
  const auto directions = v.direction_basis();
  std::vector<Hyperplane> kept;
  std::vector<std::vector<IndexMap>> preimages;
  std::vector<std::optional<IndexMap>> image(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool parallel = std::all_of(directions.begin(), directions.end(),
                                      [&](const RatVector& d) { return dot(a[i].normal, d) == 0; });
    if (!parallel) continue;
    image[i] = IndexMap{kept.size(), 1};
    preimages.push_back({IndexMap{i, 1}});
    kept.push_back(a[i]);
  }
  return DerivedArrangement{Arrangement(a.dim(), std::move(kept)), AffineChart::identity(a.dim()),
                            std::move(preimages), std::move(image)};
}

DerivedArrangement essentialize(const Arrangement& a) {
  AffineChart chart;
  chart.origin.assign(a.dim(), Rational(0));
  if (a.size() > 0) {
    std::vector<RatVector> normals;
    for (const auto& h : a.hyperplanes()) normals.push_back(h.normal);
    RrefResult r = rref(RatMatrix::from_rows(normals, a.dim()));
    for (std::size_t i = 0; i < r.rank; ++i) chart.basis.push_back(r.reduced.row(i));
  }
  return restrict_to_chart(a, std::move(chart));
}

Arrangement cone_arrangement(const Arrangement& a) {
  const std::size_t n = a.dim();
  std::vector<Hyperplane> out;
  RatVector h0(n + 1, Rational(0));
  h0[n] = 1;
  out.push_back({std::move(h0), Rational(0)});
  for (const auto& h : a.hyperplanes()) {
    RatVector w = h.normal;
    w.push_back(-h.offset);
    out.push_back({std::move(w), Rational(0)});
  }
  return Arrangement(n + 1, std::move(out));
}

}  // namespace arrlevel
