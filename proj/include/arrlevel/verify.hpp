#pragma once

// Every invariant the library knows how to check, packaged as named
// pass/fail results for the command line tool and the acceptance suite.

#include "arrlevel/arrangement.hpp"
#include "arrlevel/semilattice.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace arrlevel {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<CheckResult>& results);
/// One `PASS|FAIL  name  detail` line per result.
std::string format_results(const std::vector<CheckResult>& results);

std::vector<CheckResult> verify_arrangement(const Arrangement& a);
std::vector<CheckResult> verify_semilattice(const GeometricSemilattice& m);

/// Closure laws of the cone on every subset of atoms + {a0} (at most 2^(k+1)
/// subsets), plus independence of the accumulation order.
CheckResult check_closure_laws(const GeometricSemilattice& m);
/// cM is a lattice with join cl(S + T) and meet S & T, ranked, atomistic and
/// semimodular.
CheckResult check_cone_geometric(const ConedLattice& cm);
/// cone(L - L^a) is isomorphic to L with a0 sent to a.
CheckResult check_wachs_round_trip(const GeometricSemilattice& lattice, std::size_t atom);
/// cone(L(a)) is isomorphic to L(cone_arrangement(a)), atoms matched by index
/// and a0 sent to H0.
CheckResult check_cone_matches_geometry(const Arrangement& a);

/// Integer coefficients drawn from [-coeff, coeff], rejecting zero normals
/// and repeated hyperplanes.
Arrangement random_arrangement(std::mt19937_64& rng, std::size_t dim, std::size_t hyperplanes, int coeff);

/// psi_join(phi_split(R)) = R for every region, and the number of regions
/// whose recession cone spans V is r(restriction of the centralization to V)
/// times b(localization at V), for every flat V of the centralization.
CheckResult check_bijection(const Arrangement& a);

/// Random arrangements of dimension 2-3 with up to 6 hyperplanes; checks the
/// level identities on each.
std::vector<CheckResult> verify_fuzz(std::size_t count, std::uint64_t seed);

}  // namespace arrlevel
