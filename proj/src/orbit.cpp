#include "skewdyn/orbit.hpp"

#include <cmath>
#include <stdexcept>

namespace skewdyn {

namespace {

std::optional<complexd> finite_or_none(const ScaledComplex& v) {
  if (!v.in_double_range()) return std::nullopt;
  return v.to_complex();
}

}  // namespace

OrbitResult orbit(const Params& params, const Point3& start, int max_steps,
                  const StopPolicy& policy) {
  if (max_steps < 1) throw std::invalid_argument("orbit: max_steps must be >= 1");

  OrbitResult out;
  out.records.reserve(static_cast<size_t>(max_steps) + 1);

  const ScaledComplex phi = ScaledComplex::from_double(kPhi);
  const ScaledComplex inv_phi = ScaledComplex::from_double(1.0 / kPhi);
  const double log_eps_zero = std::log(policy.eps_zero);

  // g head: phi*z0 + z1
  ScaledComplex g_head = sc_add(sc_mul(phi, start.z0), start.z1);
  ScaledComplex series_sum;                 // sum of (P^(j))^q phi^(-j) z2_j^d
  ScaledComplex phi_neg = ScaledComplex::from_double(1.0);  // phi^(-n)

  Point3 cur = start;
  int consecutive_small = 0;

  for (int n = 0;; ++n) {
    // term_n = (P^(n))^q * phi^(-n) * (alpha^n z2)^d, using the transported
    // z2 coordinate, which is alpha^n z2 by construction
    ScaledComplex term =
        sc_mul(sc_mul(sc_powi(cur.z0, params.q), phi_neg), sc_powi(cur.z2, params.d));
    series_sum = sc_add(series_sum, term);

    OrbitRecord rec;
    rec.n = n;
    rec.point = cur;
    rec.log_mag = lm_max(sc_log_abs(cur.z0), sc_log_abs(cur.z1));
    rec.g_partial = finite_or_none(sc_add(g_head, series_sum));
    if (!cur.z1.is_zero()) rec.ratio = finite_or_none(sc_div(cur.z0, cur.z1));
    out.records.push_back(rec);

    if (rec.log_mag.finite && rec.log_mag.value > policy.log_escape) {
      out.stop = OrbitStop::escaped;
      return out;
    }
    if (rec.log_mag.finite && rec.log_mag.value > StopPolicy::hard_log_cap) {
      out.stop = OrbitStop::escaped;
      return out;
    }
    LogMagnitude full = cur.log_norm();
    if (!full.finite || full.value < log_eps_zero) {
      if (++consecutive_small >= policy.zero_window) {
        out.stop = OrbitStop::zero_detected;
        return out;
      }
    } else {
      consecutive_small = 0;
    }
    if (n == max_steps) break;

    cur = apply_psi(params, cur);
    phi_neg = sc_mul(phi_neg, inv_phi);
  }
  out.stop = OrbitStop::completed;
  return out;
}

}  // namespace skewdyn
