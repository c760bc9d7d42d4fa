#ifndef SKEWDYN_GREEN_HPP
#define SKEWDYN_GREEN_HPP

#include "skewdyn/orbit.hpp"

namespace skewdyn {

// Escape-rate estimate log+||f^n(p)|| / q^n together with the telescoped
// tail bound ln(C)/(q^n (q-1)) at the stopping step.
struct GreenEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  int n_used = 0;
  bool escaped = false;
  // true when a bounded orbit was detected and the iteration gave up early;
  // the zero value is then a heuristic verdict, not a bounded-error estimate
  bool stopped_early = false;
};

GreenEstimate green_plus(const Params& params, const Point3& p,
                         double target_error,
                         const StopPolicy& policy = StopPolicy{});

GreenEstimate green_plus_henon(const Params& params, const Point2& w,
                               double target_error,
                               const StopPolicy& policy = StopPolicy{});

// backward Green function; only defined on |alpha| = 1 (within 1e-12)
GreenEstimate green_minus(const Params& params, const Point3& p,
                          double target_error,
                          const StopPolicy& policy = StopPolicy{});

struct GreenCheckReport {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  GreenEstimate first;
  GreenEstimate second;
};

// |G(Psi p) - q G(p)| <= q (sum of the two reported bounds)
GreenCheckReport check_functional_equation(const Params& params, const Point3& p,
                                           double target_error);

// |G_Psi(p) - G_henon(h(p))| <= sum of the two reported bounds
GreenCheckReport check_semiconjugacy(const Params& params, const Point3& p,
                                     double target_error);

}  // namespace skewdyn

#endif
