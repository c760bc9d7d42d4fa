#ifndef SKEWDYN_PARAMS_HPP
#define SKEWDYN_PARAMS_HPP

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "skewdyn/scaled_complex.hpp"

namespace skewdyn {

// golden ratio and its conjugate -1/phi
inline constexpr double kPhi = 1.6180339887498948482;
inline constexpr double kPhiPrime = -0.61803398874989484820;
inline constexpr double kSqrt5 = 2.2360679774997896964;

using complexd = std::complex<double>;

// The parameter triple (q, d, alpha) of the map family
//   (z0, z1, z2) -> (z0 + z1 + z0^q z2^d, z0, alpha z2),
// plus the derived quantities used everywhere: l = d/(q-1) as an exact
// rational, alpha^l on the principal branch (exact integer power when
// (q-1) | d), and the critical modulus phi^((1-q)/d) at which the escape
// behaviour off {z2=0} changes.
struct Params {
  int q;
  int d;
  complexd alpha;

  // l = d/(q-1), reduced
  long l_num;
  long l_den;
  bool l_integral;
  double l;

  complexd alpha_to_l;
  double critical_modulus;

  Params(int q_, int d_, complexd alpha_) : q(q_), d(d_), alpha(alpha_) {
    if (q < 2) throw std::invalid_argument("Params: q must be >= 2");
    if (d < 1) throw std::invalid_argument("Params: d must be >= 1");
    double am = std::abs(alpha);
    if (!(am > 0.0) || am > 1.0 + 1e-15)
      throw std::invalid_argument("Params: need 0 < |alpha| <= 1");

    long g = std::gcd(static_cast<long>(d), static_cast<long>(q - 1));
    l_num = d / g;
    l_den = (q - 1) / g;
    l_integral = (l_den == 1);
    l = static_cast<double>(l_num) / static_cast<double>(l_den);

    if (l_integral) {
      complexd acc(1.0, 0.0);
      for (long i = 0; i < l_num; ++i) acc *= alpha;
      alpha_to_l = acc;
    } else {
      alpha_to_l = std::exp(l * std::log(alpha));  // principal branch
    }
    critical_modulus = std::pow(kPhi, static_cast<double>(1 - q) / d);
  }

  bool subcritical() const { return std::abs(alpha) < critical_modulus; }
  ScaledComplex alpha_sc() const { return ScaledComplex::from_complex(alpha); }
};

struct Point3 {
  ScaledComplex z0, z1, z2;

  static Point3 from_complex(complexd a, complexd b, complexd c) {
    return {ScaledComplex::from_complex(a), ScaledComplex::from_complex(b),
            ScaledComplex::from_complex(c)};
  }
  static Point3 from_real(double a, double b, double c) {
    return from_complex({a, 0}, {b, 0}, {c, 0});
  }

  // log of the max-norm over the three coordinates
  LogMagnitude log_norm() const {
    return lm_max(sc_log_abs(z0), lm_max(sc_log_abs(z1), sc_log_abs(z2)));
  }
};

// point of the Henon-factor plane
struct Point2 {
  ScaledComplex w0, w1;

  static Point2 from_complex(complexd a, complexd b) {
    return {ScaledComplex::from_complex(a), ScaledComplex::from_complex(b)};
  }
  LogMagnitude log_norm() const {
    return lm_max(sc_log_abs(w0), sc_log_abs(w1));
  }
};

}  // namespace skewdyn

#endif
