#include "arrlevel/cli.hpp"

#include "arrlevel/families.hpp"
#include "arrlevel/regions.hpp"
#include "arrlevel/semilattice.hpp"
#include "arrlevel/text_format.hpp"
#include "arrlevel/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace arrlevel::cli {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Input {
  std::optional<Arrangement> arrangement;
  std::optional<GeometricSemilattice> semilattice;
};

Input load(const std::string& path) {
  const std::string text = read_file(path);
  Input in;
  if (detect_kind(text) == InputKind::Arrangement) {
    in.arrangement = parse_arrangement(text);
  } else {
    const PosetRecord record = parse_poset(text);
    if (record.a0) throw InputError(path + ": cone output (a0 header) is not a semilattice input");
    in.semilattice = GeometricSemilattice::from_record(record);
  }
  return in;
}

const GeometricSemilattice& valid(const GeometricSemilattice& m) {
  if (!m.validation()) throw InputError("not a geometric semilattice: " + m.validation().violation);
  return m;
}

std::string join(const std::vector<Integer>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i].get_str();
  }
  return out;
}

int cmd_chi(const std::string& path, std::ostream& out) {
  const Input in = load(path);
  IntPolynomial chi;
  ZaslavskyCounts zc;
  if (in.arrangement) {
    const auto l = intersection_poset(*in.arrangement);
    chi = char_poly(l.poset(), in.arrangement->dim());
    zc = zaslavsky_counts(l.poset(), in.arrangement->dim());
  } else {
    const auto& m = valid(*in.semilattice);
    chi = char_poly(m);
    zc = counts(m);
  }
  out << "chi " << chi.to_string() << "\n";
  out << "r " << zc.regions << "\n";
  out << "b " << zc.bounded << "\n";
  return kExitOk;
}

// Two points where the line w . x = a crosses the box [lo, hi]^2.
std::optional<std::pair<RatVector, RatVector>> clip(const Hyperplane& h, const Rational& lo, const Rational& hi) {
  std::vector<RatVector> pts;
  auto add = [&](RatVector p) {
    if (p[0] < lo || p[0] > hi || p[1] < lo || p[1] > hi) return;
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  };
  const Rational& w0 = h.normal[0];
  const Rational& w1 = h.normal[1];
  for (const Rational& edge : {lo, hi}) {
    if (w1 != 0) add({edge, (h.offset - w0 * edge) / w1});
    if (w0 != 0) add({(h.offset - w1 * edge) / w0, edge});
  }
  if (pts.size() < 2) return std::nullopt;
  std::sort(pts.begin(), pts.end());
  return std::make_pair(pts.front(), pts.back());
}

int cmd_regions(const std::string& path, bool plot, std::ostream& out) {
  const Input in = load(path);
  if (!in.arrangement) throw InputError("regions needs an arrangement file");
  const Arrangement& a = *in.arrangement;
  const auto central = intersection_poset(centralize(a).arrangement);
  const auto regions = enumerate_regions(a);
  for (const auto& r : regions) {
    const auto cone = recession_cone(a, r, central);
    out << "R " << r.sign_string() << " level " << cone.level() << " flat " << cone.flat_id << " witness";
    for (const auto& q : r.witness) out << ' ' << to_string(q);
    out << "\n";
  }
  if (!plot) return kExitOk;
  if (a.dim() != 2) throw InputError("--plot-data needs a 2-dimensional arrangement");
  // box containing every vertex and witness, padded by one
  Rational extent = 1;
  auto widen = [&](const RatVector& p) {
    for (const auto& q : p) extent = std::max(extent, Rational(abs(q)));
  };
  for (const auto& r : regions) widen(r.witness);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      std::vector<RatVector> rows{{a[i].normal[0], a[i].normal[1], a[i].offset}, {a[j].normal[0], a[j].normal[1], a[j].offset}};
      if (auto f = Flat::from_equations(2, rows); f && f->dimension() == 0) widen(f->particular_point());
    }
  const Rational hi = extent + 1;
  const Rational lo = -hi;
  out << "box " << to_string(lo) << ' ' << to_string(lo) << ' ' << to_string(hi) << ' ' << to_string(hi) << "\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto seg = clip(a[i], lo, hi);
    if (!seg) continue;
    out << "segment " << i << ' ' << to_string(seg->first[0]) << ' ' << to_string(seg->first[1]) << ' '
        << to_string(seg->second[0]) << ' ' << to_string(seg->second[1]) << "\n";
  }
  for (const auto& r : regions)
    out << "point " << r.sign_string() << ' ' << to_string(r.witness[0]) << ' ' << to_string(r.witness[1]) << "\n";
  return kExitOk;
}

int cmd_levels(const std::string& path, const std::string& method, std::ostream& out) {
  const Input in = load(path);
  if (in.semilattice) {
    const auto& m = valid(*in.semilattice);
    if (method == "enumerate") throw InputError("a poset has no regions to enumerate; use --method formula");
    const auto levels = level_distribution(m);
    out << "# rank-indexed: r_0..r_" << m.rank() << " over ranks of the centralization\n";
    out << "formula " << join(levels) << "\n";
    return kExitOk;
  }
  const Arrangement& a = *in.arrangement;
  out << "# ambient-indexed: r_0..r_" << a.dim() << " by dimension of the recession cone\n";
  std::optional<std::vector<Integer>> enumerated;
  std::optional<std::vector<Integer>> formula;
  if (method != "formula") {
    enumerated = level_histogram(a);
    out << "enumerate " << join(*enumerated) << "\n";
  }
  if (method != "enumerate") {
    formula = levels_via_formula(a);
    out << "formula " << join(*formula) << "\n";
  }
  if (enumerated && formula) {
    const bool match = *enumerated == *formula;
    out << (match ? "MATCH" : "MISMATCH") << "\n";
    return match ? kExitOk : kExitFailure;
  }
  return kExitOk;
}

int cmd_cone(const std::string& path, std::ostream& out) {
  const Input in = load(path);
  const GeometricSemilattice m = in.arrangement
                                     ? GeometricSemilattice::from_intersection_poset(intersection_poset(*in.arrangement))
                                     : *in.semilattice;
  out << write_poset(cone(valid(m)).to_record());
  return kExitOk;
}

int cmd_centralize(const std::string& path, std::ostream& out) {
  const Input in = load(path);
  if (in.arrangement) {
    out << write_arrangement(centralize(*in.arrangement).arrangement);
  } else {
    out << write_poset(centralization(valid(*in.semilattice)).to_record());
  }
  return kExitOk;
}

int cmd_family(const std::string& name, std::optional<std::size_t> n, bool levels, std::optional<std::size_t> max_n,
               std::ostream& out) {
  const ExponentialFamily fam = family_by_name(name);
  if (!n && !max_n) throw InputError("family needs N or --max-n");
  if (max_n) {
    out << "# " << name << ": ambient-indexed levels r_0..r_n and chi\n";
    for (std::size_t k = 1; k <= *max_n; ++k) {
      const Arrangement a = fam.arrangement(k);
      out << "n " << k << " levels " << join(fam.levels(k)) << " chi " << char_poly(a).to_string() << "\n";
    }
    return kExitOk;
  }
  const Arrangement a = fam.arrangement(*n);
  if (!levels) {
    out << write_arrangement(a);
    return kExitOk;
  }
  out << "# ambient-indexed: r_0..r_" << *n << "\n";
  out << "levels " << join(fam.levels(*n)) << "\n";
  out << "chi " << char_poly(a).to_string() << "\n";
  return kExitOk;
}

int cmd_verify(const std::optional<std::string>& path, std::optional<std::size_t> fuzz, std::uint64_t seed,
               std::ostream& out) {
  if (!path && !fuzz) throw InputError("verify needs FILE or --fuzz");
  std::vector<CheckResult> results;
  if (path) {
    const Input in = load(*path);
    results = in.arrangement ? verify_arrangement(*in.arrangement) : verify_semilattice(*in.semilattice);
  }
  if (fuzz) {
    auto f = verify_fuzz(*fuzz, seed);
    results.insert(results.end(), f.begin(), f.end());
  }
  out << format_results(results);
  const bool ok = all_passed(results);
  out << (ok ? "all checks passed" : "some checks failed") << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level distributions of hyperplane arrangements and geometric semilattices", "arrlevel"};
  app.require_subcommand(1);

  std::string file;
  std::string method = "both";
  bool plot = false;
  bool levels = false;
  std::string family;
  std::optional<std::size_t> family_n;
  std::optional<std::size_t> max_n;
  std::optional<std::string> verify_file;
  std::optional<std::size_t> fuzz;
  std::uint64_t seed = 1;

  auto* chi = app.add_subcommand("chi", "characteristic polynomial, r and b");
  chi->add_option("FILE", file, "arrangement or poset file")->required();
  auto* regions = app.add_subcommand("regions", "list regions with level, flat and witness");
  regions->add_option("FILE", file, "arrangement file")->required();
  regions->add_flag("--plot-data", plot, "also emit segments and witness points (dimension 2)");
  auto* lv = app.add_subcommand("levels", "level histogram");
  lv->add_option("FILE", file, "arrangement or poset file")->required();
  lv->add_option("--method", method, "enumerate, formula or both")
      ->check(CLI::IsMember({"enumerate", "formula", "both"}));
  auto* cn = app.add_subcommand("cone", "cone of the intersection poset, in poset format");
  cn->add_option("FILE", file, "arrangement or poset file")->required();
  auto* ce = app.add_subcommand("centralize", "centralized arrangement, or centralization of a poset");
  ce->add_option("FILE", file, "arrangement or poset file")->required();
  auto* fa = app.add_subcommand("family", "named braid deformations");
  fa->add_option("NAME", family, "braid, shi, catalan, semiorder or ish")->required();
  fa->add_option("N", family_n, "dimension");
  fa->add_flag("--levels", levels, "print level histogram and chi instead of the hyperplanes");
  fa->add_option("--max-n", max_n, "print a table of levels and chi for n = 1..MAX");
  auto* ve = app.add_subcommand("verify", "run every applicable check");
  ve->add_option("FILE", verify_file, "arrangement or poset file");
  ve->add_option("--fuzz", fuzz, "also check this many random arrangements");
  ve->add_option("--seed", seed, "seed for --fuzz");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const std::string what = e.what();
    err << "error: " << what << "\n";
    return kExitMalformed;
  }

  try {
    if (chi->parsed()) return cmd_chi(file, out);
    if (regions->parsed()) return cmd_regions(file, plot, out);
    if (lv->parsed()) return cmd_levels(file, method, out);
    if (cn->parsed()) return cmd_cone(file, out);
    if (ce->parsed()) return cmd_centralize(file, out);
    if (fa->parsed()) return cmd_family(family, family_n, levels, max_n, out);
    if (ve->parsed()) return cmd_verify(verify_file, fuzz, seed, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const MalformedSemilattice& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace arrlevel::cli
