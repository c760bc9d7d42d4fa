#include "skewdyn/green.hpp"

#include <cmath>
#include <stdexcept>

namespace skewdyn {

namespace {

// Shared driver: iterates `step`, reading the max-norm log via `log_norm`,
// until the telescoped tail ln(C)/(q^n (q-1)) drops below target_error.
template <typename State, typename Step, typename LogNorm>
GreenEstimate estimate(const Params& params, State cur, double log_c,
                       double target_error, const StopPolicy& policy,
                       Step step, LogNorm log_norm) {
  if (!(target_error > 0.0))
    throw std::invalid_argument("green: target_error must be > 0");

  const double q = params.q;
  const double log_eps_zero = std::log(policy.eps_zero);
  double qn = 1.0;
  int consecutive_small = 0;
  double log_plus = 0.0, prev_log_plus = 0.0;
  GreenEstimate est;

  for (int n = 0; n <= 100000; ++n) {
    LogMagnitude lm = log_norm(cur);
    prev_log_plus = log_plus;
    log_plus = (lm.finite && lm.value > 0.0) ? lm.value : 0.0;
    est.value = log_plus / qn;
    est.error_bound = log_c / (qn * (q - 1.0));
    est.n_used = n;

    if (est.error_bound <= target_error) break;
    if (lm.finite && lm.value > StopPolicy::hard_log_cap) break;

    if (!lm.finite || lm.value < log_eps_zero) {
      if (++consecutive_small >= policy.zero_window) {
        est.value = 0.0;
        est.stopped_early = true;
        est.escaped = false;
        return est;
      }
    } else {
      consecutive_small = 0;
    }
    cur = step(cur);
    qn *= q;
  }
  // Certified escape needs a positive value net of the bound and the
  // degree-q growth signature at the tail; sub-maximal (Fibonacci) growth
  // multiplies the log by ~1 per step, maximal by ~q.
  est.escaped = est.value - est.error_bound > 0.0 && prev_log_plus > 0.0 &&
                log_plus / prev_log_plus >= 0.5 * (1.0 + q);
  return est;
}

double psi_log_c(const Params& params, const ScaledComplex& z2) {
  LogMagnitude lm = sc_log_abs(z2);
  double abs_p2_d = lm.finite ? std::exp(params.d * lm.value) : 0.0;
  return std::log(3.0 * std::max(1.0, abs_p2_d));
}

}  // namespace

GreenEstimate green_plus(const Params& params, const Point3& p,
                         double target_error, const StopPolicy& policy) {
  double log_c = psi_log_c(params, p.z2);
  return estimate(
      params, p, log_c, target_error, policy,
      [&](const Point3& z) { return apply_psi(params, z); },
      [](const Point3& z) { return z.log_norm(); });
}

GreenEstimate green_plus_henon(const Params& params, const Point2& w,
                               double target_error, const StopPolicy& policy) {
  // one-step bound |phi_alpha(w)|_inf <= 3 max(1, |alpha^l|) max(1, |w|_inf)^q,
  // so C = 3 max(1, |alpha^l|), which is 3 whenever |alpha| <= 1
  double log_c = std::log(3.0 * std::max(1.0, std::abs(params.alpha_to_l)));
  return estimate(
      params, w, log_c, target_error, policy,
      [&](const Point2& v) { return apply_henon(params, v); },
      [](const Point2& v) { return v.log_norm(); });
}

GreenEstimate green_minus(const Params& params, const Point3& p,
                          double target_error, const StopPolicy& policy) {
  if (std::abs(std::abs(params.alpha) - 1.0) > 1e-12)
    throw std::domain_error("green_minus: requires |alpha| = 1");
  double log_c = psi_log_c(params, p.z2);
  return estimate(
      params, p, log_c, target_error, policy,
      [&](const Point3& z) { return apply_psi_inv(params, z); },
      [](const Point3& z) { return z.log_norm(); });
}

GreenCheckReport check_functional_equation(const Params& params, const Point3& p,
                                           double target_error) {
  GreenCheckReport rep;
  rep.first = green_plus(params, apply_psi(params, p), target_error);
  rep.second = green_plus(params, p, target_error);
  rep.lhs = rep.first.value;
  rep.rhs = params.q * rep.second.value;
  rep.tolerance = params.q * (rep.first.error_bound + rep.second.error_bound);
  rep.pass = std::abs(rep.lhs - rep.rhs) <= rep.tolerance;
  return rep;
}

GreenCheckReport check_semiconjugacy(const Params& params, const Point3& p,
                                     double target_error) {
  GreenCheckReport rep;
  rep.first = green_plus(params, p, target_error);
  rep.second = green_plus_henon(params, h_map(params, p), target_error);
  rep.lhs = rep.first.value;
  rep.rhs = rep.second.value;
  rep.tolerance = rep.first.error_bound + rep.second.error_bound;
  rep.pass = std::abs(rep.lhs - rep.rhs) <= rep.tolerance;
  return rep;
}

}  // namespace skewdyn
