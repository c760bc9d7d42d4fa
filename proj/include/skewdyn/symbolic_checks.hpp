#ifndef SKEWDYN_SYMBOLIC_CHECKS_HPP
#define SKEWDYN_SYMBOLIC_CHECKS_HPP

#include <optional>

#include "skewdyn/polynomial.hpp"

namespace skewdyn {

// Affine maps over the symbols a := alpha, b := alpha^l.  Only exponents of
// the unit symbols may be negative.
PolyMap psi_affine(int q, int d);
PolyMap psi_inverse_affine(int q, int d);
PolyMap phi_affine(int q, int d);
PolyMap phi_inverse_affine(int q, int d);

// Projective forms with unit denominators cleared by a- and b-powers.
PolyMap psi_projective(int q, int d);
PolyMap psi_inverse_projective(int q, int d);
PolyMap phi_projective(int q, int d);
PolyMap phi_inverse_projective(int q, int d);

// Exact sequence P^(-1), P^(0), ..., P^(n_max) of first components of the
// forward iterates, via
//   P^(n+1) = P^(n) + P^(n-1) + (P^(n))^q a^(nd) z2^d.
// Degrees grow like q^n; n_max beyond `cap` raises cap-exceeded.
std::vector<MultiPoly> iterate_psi_symbolic(int q, int d, int n_max, int cap = 6);

struct DegreeReport {
  bool pass = false;
  std::vector<long> forward_degrees;   // deg f^n,  n = 1..n_max
  std::vector<long> inverse_degrees;   // deg f^-n
  std::vector<long> expected;
};

// deg(Psi^n) = q^n + d (q^n - 1)/(q - 1) and deg(Psi^-n) = deg(Psi^n), exactly
DegreeReport verify_degree_formula(int q, int d, int n_max);

// deg(Phi^n) = deg(Phi^-n) = q^n, exactly
DegreeReport verify_phi_degrees(int q, int d, int n_max);

struct HyperplaneImage {
  PolyMap restricted;              // components after z3 := 0
  std::optional<int> collapse_to;  // index of the single surviving component
};

HyperplaneImage hyperplane_image(const PolyMap& projective);

// Vanishing locus of all components on {z3 = 0}, reported as a union of
// coordinate subspaces: each locus lists the z-variables set to zero
// (z3 = 0 implicit).  Components surviving on {z3 = 0} must be monomials or
// binomials times units; anything else raises unsupported-form.
struct IndReport {
  std::vector<std::vector<int>> loci;
};

IndReport indeterminacy_on_hyperplane(const PolyMap& projective);

// Does (eta^k z0, eta^k z1, nu z2) commute with Phi when eta is a formal
// (q-1)-th root of unity?  Exact polynomial identity under the exponent
// relation eta^(q-1) = 1.
bool check_centralizer_family(int q, int d, int eta_exponent);

// Negative-control variant with an explicit integer scalar in place of eta.
bool check_centralizer_integer(int q, int d, long eta_value);

struct FibrationReport {
  bool psi_ok = false;
  bool phi_ok = false;
  bool pass() const { return psi_ok && phi_ok; }
};

// Third component depends on z2 alone and is linear in it, for both maps.
FibrationReport check_fibration_invariance(int q, int d);

}  // namespace skewdyn

#endif
