#ifndef SKEWDYN_ORBIT_HPP
#define SKEWDYN_ORBIT_HPP

#include <optional>
#include <vector>

#include "skewdyn/maps.hpp"

namespace skewdyn {

// Early-termination rules for orbit computations.  log_escape and eps_zero
// are in natural-log / absolute units.  hard_log_cap keeps the ScaledComplex
// exponent far away from its own limits no matter what the caller asks for.
struct StopPolicy {
  double log_escape = 1e4;
  double eps_zero = 1e-12;
  int zero_window = 10;
  static constexpr double hard_log_cap = 1e15;
};

enum class OrbitStop { completed, escaped, zero_detected };

// One step of the forward orbit.  point holds (P^(n), P^(n-1), alpha^n z2);
// log_mag is log max(|P^(n)|, |P^(n-1)|); g_partial is the partial sum
//   g_n = phi z0 + z1 + z2^d sum_{j<=n} (P^(j))^q phi^(-j) alpha^(jd)
// when it fits a double, and ratio is P^(n)/P^(n-1) when the denominator is
// nonzero and the quotient fits a double.
struct OrbitRecord {
  int n = 0;
  Point3 point;
  LogMagnitude log_mag;
  std::optional<complexd> g_partial;
  std::optional<complexd> ratio;
};

struct OrbitResult {
  std::vector<OrbitRecord> records;
  OrbitStop stop = OrbitStop::completed;
};

OrbitResult orbit(const Params& params, const Point3& start, int max_steps,
                  const StopPolicy& policy = StopPolicy{});

}  // namespace skewdyn

#endif
