#ifndef SKEWDYN_SERIES_HPP
#define SKEWDYN_SERIES_HPP

#include <optional>
#include <vector>

#include "skewdyn/orbit.hpp"

namespace skewdyn {

// Partial-sum state of g_n = phi z0 + z1 + z2^d sum_{j<=n} term_j with
// term_j = (P^(j))^q phi^(-j) alpha^(jd).  The convergence / divergence
// tests act on the actual summand z2^d term_j.
struct SeriesState {
  int n = 0;
  complexd g_n;
  complexd term_n;
  std::optional<double> tail_bound;
};

enum class SeriesStatus { converged, diverged, unknown };

struct SeriesResult {
  SeriesStatus status = SeriesStatus::unknown;
  // last partial sum; the limit when converged, zero placeholder if the sum
  // left double range (possible only on diverged runs)
  complexd value;
  std::vector<SeriesState> states;
};

SeriesResult series_g(const Params& params, const Point3& p, int max_terms);

struct LemmaReport {
  bool pass = false;
  double rel_diff = 0.0;
  LogMagnitude lhs_log;
  LogMagnitude rhs_log;
};

// Both sides of  P^(n+1) + phi^(-1) P^(n) = phi^n (phi p0 + p1 + p2^d sum...),
// the recurrence side against the weighted-sum side, in scaled arithmetic.
LemmaReport check_lemma_identity(const Params& params, const Point3& p, int n);

enum class StableVerdict { in_Ws, not_in_Ws, undetermined };

struct StableEvidence {
  std::optional<complexd> g_value;
  std::optional<double> decay_slope;
  OrbitStop orbit_stop = OrbitStop::completed;
  std::optional<complexd> fibonacci_limit;
};

struct StableReport {
  StableVerdict verdict = StableVerdict::undetermined;
  StableEvidence evidence;
};

// Membership test for the stable manifold of the origin, 0 < |alpha| < 1.
// Combines g(p) ~ 0, the tail-decay fit of |r_j| phi^j against |alpha|^(jd),
// and orbit contraction; the three signals must agree for a verdict.
StableReport stable_criterion(const Params& params, const Point3& p, int max_terms);

enum class StableRootStatus { ok, newton_no_convergence, validation_failed };

struct StableRootResult {
  StableRootStatus status = StableRootStatus::newton_no_convergence;
  complexd p0;
  int newton_iters = 0;
  double validation_norm = 0.0;  // ||Psi^60(p)||_inf
};

// Solves g_N(p0, p1, p2) = 0 for p0 by Newton iteration from -p1/phi, then
// validates by running the orbit.  Requires 0 < |alpha| < critical modulus.
// truncation == 0 picks the default N with |alpha|^(N d) phi^(-N) < 1e-30.
StableRootResult stable_root(const Params& params, complexd p1, complexd p2,
                             int truncation = 0);

int default_stable_truncation(const Params& params);

}  // namespace skewdyn

#endif
