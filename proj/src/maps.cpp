#include "skewdyn/maps.hpp"

#include <stdexcept>

namespace skewdyn {

Point3 apply_psi(const Params& p, const Point3& z) {
  ScaledComplex term = sc_mul(sc_powi(z.z0, p.q), sc_powi(z.z2, p.d));
  Point3 out;
  out.z0 = sc_add(sc_add(z.z0, z.z1), term);
  out.z1 = z.z0;
  out.z2 = sc_mul(p.alpha_sc(), z.z2);
  return out;
}

Point3 apply_psi_inv(const Params& p, const Point3& z) {
  ScaledComplex alpha = p.alpha_sc();
  ScaledComplex alpha_d = sc_powi(alpha, p.d);
  ScaledComplex term = sc_div(sc_mul(sc_powi(z.z1, p.q), sc_powi(z.z2, p.d)), alpha_d);
  Point3 out;
  out.z0 = z.z1;
  out.z1 = sc_sub(sc_sub(z.z0, z.z1), term);
  out.z2 = sc_div(z.z2, alpha);
  return out;
}

Point3 apply_phi(const Params& p, const Point3& z) {
  ScaledComplex al = ScaledComplex::from_complex(p.alpha_to_l);
  Point3 out;
  out.z0 = sc_mul(al, sc_add(sc_add(z.z0, z.z1), sc_powi(z.z0, p.q)));
  out.z1 = sc_mul(al, z.z0);
  out.z2 = sc_mul(p.alpha_sc(), z.z2);
  return out;
}

Point2 apply_henon(const Params& p, const Point2& w) {
  ScaledComplex al = ScaledComplex::from_complex(p.alpha_to_l);
  Point2 out;
  out.w0 = sc_mul(al, sc_add(sc_add(w.w0, w.w1), sc_powi(w.w0, p.q)));
  out.w1 = sc_mul(al, w.w0);
  return out;
}

ScaledComplex sc_pow_rational(const ScaledComplex& z, long num, long den) {
  if (den == 1) {
    if (num >= 0) return sc_powi(z, static_cast<int>(num));
    return sc_div(ScaledComplex::from_double(1.0),
                  sc_powi(z, static_cast<int>(-num)));
  }
  if (z.is_zero())
    throw std::domain_error("sc_pow_rational: fractional power of zero is branch-undefined");
  double e = static_cast<double>(num) / static_cast<double>(den);
  LogMagnitude lm = sc_log_abs(z);
  return ScaledComplex::from_log_polar(e * lm.value, e * sc_arg(z));
}

Point3 theta(const Params& p, const Point3& z) {
  if (!p.l_integral && z.z2.is_zero())
    throw std::domain_error("theta: z2 = 0 with fractional l is branch-undefined");
  ScaledComplex z2l = sc_pow_rational(z.z2, p.l_num, p.l_den);
  return {sc_mul(z.z0, z2l), sc_mul(z.z1, z2l), z.z2};
}

Point2 h_map(const Params& p, const Point3& z) {
  if (!p.l_integral && z.z2.is_zero())
    throw std::domain_error("h_map: z2 = 0 with fractional l is branch-undefined");
  ScaledComplex z2l = sc_pow_rational(z.z2, p.l_num, p.l_den);
  return {sc_mul(z.z0, z2l), sc_mul(z.z1, z2l)};
}

}  // namespace skewdyn
