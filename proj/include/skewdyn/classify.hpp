#ifndef SKEWDYN_CLASSIFY_HPP
#define SKEWDYN_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "skewdyn/green.hpp"

namespace skewdyn {

enum class Verdict {
  ConvergesToFixedPoint,
  FibonacciEscape,
  MaximalEscape,
  Undetermined,
};

const char* verdict_name(Verdict v);

struct Evidence {
  int n_decided = 0;
  int budget_used = 0;
  std::optional<complexd> fibonacci_limit;
  std::optional<GreenEstimate> green;
  std::optional<complexd> g_value;
};

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  Evidence evidence;
};

// Decision procedure over one forward orbit:
//   (i)  sustained contraction below eps_zero        -> ConvergesToFixedPoint
//   (ii) ratio P^(n+1)/P^(n) within 1e-8 of phi over a 20-step window and
//        P^(n) phi^(-n) Cauchy (tol 1e-10) with a nonzero limit that is
//        stable under doubling the budget             -> FibonacciEscape
//   (iii) escaped green estimate                      -> MaximalEscape
//   otherwise                                         -> Undetermined
Classification classify(const Params& params, const Point3& p, int budget = 2000);

// Cauchy-converged value of P^(n) phi^(-n) (window 20, tol 1e-10), or
// nullopt; a limit of zero is excluded.
std::optional<complexd> fibonacci_limit(const Params& params, const Point3& p,
                                        int budget);

// First step at which the orbit norm falls to the accumulated rounding
// floor (double noise amplified at rate phi along the unstable direction),
// i.e. the point is indistinguishable from a stable-manifold point at
// working precision.  Exactly-representable stable points instead hit the
// eps_zero detector of the stop policy.
std::optional<int> contraction_step(const OrbitResult& orb,
                                    double eps_zero = 1e-12);

struct RegionSpec {
  enum class Region { Omega, OmegaPrime };
  Region region = Region::Omega;
  int M = 0;           // Omega: requires M(q-1) + d*gamma > 0
  double epsilon = 0;  // OmegaPrime: requires ((1+eps)phi)^q |alpha|^d < phi
};

// Literal evaluation of the membership inequalities
//   Omega:      |p0| > |p1| > 0  and  |p1|^(q-1) |p2|^d > 2 + phi^M
//   OmegaPrime: (|p0| + |p1|)^(q-1) |p2|^d < phi * eps
// Throws std::invalid_argument when the region parameters are inadmissible
// for the map parameters.
bool region_test(const Params& params, complexd p0, complexd p1, complexd p2,
                 const RegionSpec& spec);

// Largest admissible OmegaPrime epsilon scaled by 0.9; only defined below
// the critical modulus.
double default_omega_prime_epsilon(const Params& params);

struct PhaseSample {
  complexd p0, p1, p2;
};

struct PhaseRow {
  double modulus = 0.0;
  int counts[4] = {0, 0, 0, 0};  // indexed by Verdict
  std::vector<Classification> classifications;  // one per sample
};

struct PhaseTable {
  std::vector<PhaseSample> samples;
  std::vector<PhaseRow> rows;
};

struct PhaseSampleSpec {
  int count = 200;
  unsigned long long seed = 1;
  double alpha_arg = 0.0;  // argument applied to every modulus
  int budget = 2000;
  int threads = 1;
};

// Classifies a shared grid of points, sampled off {z2=0} inside the
// narrowest subcritical OmegaPrime of the moduli list, under each alpha.
PhaseTable phase_transition_probe(int q, int d, const std::vector<double>& moduli,
                                  const PhaseSampleSpec& spec);

// Rejection-samples points of the explicit escape region Omega with the
// fiber coordinate kept in [1.8, 3.5], where the telescoped green bounds
// are comfortably conservative.
std::vector<PhaseSample> sample_omega(const Params& params, int count,
                                      unsigned long long seed, int M);

// Smallest M >= 0 with M(q-1) + d * ln|alpha|/ln(phi) > 0.
int smallest_omega_exponent(const Params& params);

}  // namespace skewdyn

#endif
