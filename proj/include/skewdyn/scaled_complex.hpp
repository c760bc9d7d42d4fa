#ifndef SKEWDYN_SCALED_COMPLEX_HPP
#define SKEWDYN_SCALED_COMPLEX_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace skewdyn {

// Signed exponent with far more headroom than the 11 bits of a double.
// Orbit loops bail out long before |exponent| can reach the edge of this
// range (see StopPolicy::hard_log_cap), so wraparound is unreachable.
using wide_exp_t = __int128;

// Natural log of a modulus.  finite == false encodes -infinity, which is
// the log-magnitude of the canonical zero and of nothing else.
struct LogMagnitude {
  double value = 0.0;
  bool finite = true;

  static LogMagnitude neg_infinity() { return {0.0, false}; }
  static LogMagnitude of(double v) { return {v, true}; }

  bool operator<(const LogMagnitude& o) const {
    if (!finite) return o.finite;
    if (!o.finite) return false;
    return value < o.value;
  }
  bool operator>(const LogMagnitude& o) const { return o < *this; }
};

// Complex number stored as mantissa * 2^exponent with 1 <= |mantissa| < 2,
// or mantissa == 0 and exponent == 0 (the canonical zero).  Survives the
// doubly exponential magnitudes produced by iterating degree-q maps.
class ScaledComplex {
 public:
  ScaledComplex() : m_(0.0, 0.0), e_(0) {}

  ScaledComplex(std::complex<double> mantissa, wide_exp_t exponent)
      : m_(mantissa), e_(exponent) {
    normalize();
  }

  static ScaledComplex from_complex(std::complex<double> c) {
    return ScaledComplex(c, 0);
  }
  static ScaledComplex from_double(double x) {
    return ScaledComplex(std::complex<double>(x, 0.0), 0);
  }
  // Builds the value exp(log_mod + i*arg) without evaluating exp() in
  // double range; log_mod may be far outside [-709, 709].
  static ScaledComplex from_log_polar(double log_mod, double arg);

  std::complex<double> mantissa() const { return m_; }
  wide_exp_t exponent() const { return e_; }
  bool is_zero() const { return m_.real() == 0.0 && m_.imag() == 0.0; }

  // Exact when the exponent fits a double's range; otherwise over/underflows
  // the way ldexp does.
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (e_ > 2000) return {std::numeric_limits<double>::infinity(), 0.0};
    if (e_ < -2000) return {0.0, 0.0};
    int k = static_cast<int>(e_);
    return {std::ldexp(m_.real(), k), std::ldexp(m_.imag(), k)};
  }

  bool in_double_range() const { return is_zero() || (e_ > -1000 && e_ < 1000); }

 private:
  void normalize() {
    double a = std::abs(m_);
    if (a == 0.0 || !std::isfinite(a)) {
      m_ = {0.0, 0.0};
      e_ = 0;
      return;
    }
    int k = 0;
    std::frexp(a, &k);  // a = f * 2^k, f in [0.5, 1)
    // shift so the modulus lands in [1, 2)
    int shift = 1 - k;
    if (shift != 0) {
      m_ = {std::ldexp(m_.real(), shift), std::ldexp(m_.imag(), shift)};
      e_ -= shift;
    }
  }

  std::complex<double> m_;
  wide_exp_t e_;
};

// Exponent alignment cutoff: past 64 bits the smaller addend is below one
// ulp of the larger, so returning the larger operand is exact at double
// precision.
inline constexpr int kAlignCutoffBits = 64;

inline ScaledComplex sc_add(const ScaledComplex& x, const ScaledComplex& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const ScaledComplex& big = (x.exponent() >= y.exponent()) ? x : y;
  const ScaledComplex& small = (x.exponent() >= y.exponent()) ? y : x;
  wide_exp_t diff = big.exponent() - small.exponent();
  if (diff > kAlignCutoffBits) return big;
  int shift = -static_cast<int>(diff);
  std::complex<double> aligned(std::ldexp(small.mantissa().real(), shift),
                               std::ldexp(small.mantissa().imag(), shift));
  return ScaledComplex(big.mantissa() + aligned, big.exponent());
}

inline ScaledComplex sc_neg(const ScaledComplex& x) {
  if (x.is_zero()) return x;
  return ScaledComplex(-x.mantissa(), x.exponent());
}

inline ScaledComplex sc_sub(const ScaledComplex& x, const ScaledComplex& y) {
  return sc_add(x, sc_neg(y));
}

inline ScaledComplex sc_mul(const ScaledComplex& x, const ScaledComplex& y) {
  if (x.is_zero() || y.is_zero()) return ScaledComplex();
  return ScaledComplex(x.mantissa() * y.mantissa(), x.exponent() + y.exponent());
}

inline ScaledComplex sc_div(const ScaledComplex& x, const ScaledComplex& y) {
  if (x.is_zero()) return ScaledComplex();
  return ScaledComplex(x.mantissa() / y.mantissa(), x.exponent() - y.exponent());
}

inline ScaledComplex sc_powi(const ScaledComplex& x, int k) {
  // binary exponentiation, renormalized at every squaring
  ScaledComplex base = x;
  ScaledComplex acc = ScaledComplex::from_double(1.0);
  int n = k;
  while (n > 0) {
    if (n & 1) acc = sc_mul(acc, base);
    n >>= 1;
    if (n > 0) base = sc_mul(base, base);
  }
  return acc;
}

inline LogMagnitude sc_log_abs(const ScaledComplex& x) {
  if (x.is_zero()) return LogMagnitude::neg_infinity();
  constexpr double ln2 = 0.69314718055994530942;
  return LogMagnitude::of(std::log(std::abs(x.mantissa())) +
                          static_cast<double>(x.exponent()) * ln2);
}

inline double sc_arg(const ScaledComplex& x) { return std::arg(x.mantissa()); }

inline ScaledComplex ScaledComplex::from_log_polar(double log_mod, double arg) {
  constexpr double ln2 = 0.69314718055994530942;
  double e2 = log_mod / ln2;  // exponent in base 2
  double efloor = std::floor(e2);
  double frac = e2 - efloor;  // in [0, 1)
  double mod = std::exp2(frac);
  std::complex<double> m(mod * std::cos(arg), mod * std::sin(arg));
  return ScaledComplex(m, static_cast<wide_exp_t>(efloor));
}

inline LogMagnitude lm_max(const LogMagnitude& a, const LogMagnitude& b) {
  return (a < b) ? b : a;
}

inline std::string wide_exp_to_string(wide_exp_t e) {
  if (e == 0) return "0";
  bool neg = e < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(e + 1)) + 1
                            : static_cast<unsigned __int128>(e);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}

}  // namespace skewdyn

#endif
