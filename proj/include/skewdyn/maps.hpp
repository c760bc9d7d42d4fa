#ifndef SKEWDYN_MAPS_HPP
#define SKEWDYN_MAPS_HPP

#include "skewdyn/params.hpp"

namespace skewdyn {

// forward map (z0, z1, z2) -> (z0 + z1 + z0^q z2^d, z0, alpha z2)
Point3 apply_psi(const Params& p, const Point3& z);

// inverse map (z0, z1, z2) -> (z1, z0 - z1 - z1^q z2^d / alpha^d, z2/alpha)
Point3 apply_psi_inv(const Params& p, const Point3& z);

// conjugated map (z0, z1, z2) -> (a^l (z0 + z1 + z0^q), a^l z0, alpha z2)
Point3 apply_phi(const Params& p, const Point3& z);

// Henon factor (w0, w1) -> a^l (w0 + w1 + w0^q, w0)
Point2 apply_henon(const Params& p, const Point2& w);

// semi-conjugacy theta = (z0 z2^l, z1 z2^l, z2); principal branch of z2^l
// when l is fractional, in which case z2 = 0 is refused
Point3 theta(const Params& p, const Point3& z);

// projection to the Henon plane, h = (z0 z2^l, z1 z2^l)
Point2 h_map(const Params& p, const Point3& z);

// z^e for a rational exponent e = num/den (den >= 1); principal branch when
// den > 1
ScaledComplex sc_pow_rational(const ScaledComplex& z, long num, long den);

}  // namespace skewdyn

#endif
