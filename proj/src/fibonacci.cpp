#include "skewdyn/fibonacci.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <type_traits>

namespace skewdyn {

using bigrat = boost::multiprecision::cpp_rational;

bigint fib(long n) {
  if (n < -1) throw std::invalid_argument("fib: n must be >= -1");
  if (n == -1) return 1;
  bigint a = 0, b = 1;  // F_0, F_1
  for (long i = 0; i < n; ++i) {
    bigint next = a + b;
    a = b;
    b = next;
  }
  return a;
}

namespace {

template <typename T>
T times_big(const bigint& c, const T& v) {
  if constexpr (std::is_same_v<T, bigint>) {
    return c * v;
  } else if constexpr (std::is_same_v<T, bigrat>) {
    return bigrat(c) * v;
  } else {
    return T(static_cast<double>(c)) * v;
  }
}

}  // namespace

template <typename T>
std::pair<T, T> restricted_psi_n(long n, const T& z0, const T& z1) {
  if (n < 1) throw std::invalid_argument("restricted_psi_n: n must be >= 1");
  bigint fn1 = fib(n + 1), fn = fib(n), fnm1 = fib(n - 1);
  return {times_big(fn1, z0) + times_big(fn, z1),
          times_big(fn, z0) + times_big(fnm1, z1)};
}

template <typename T>
std::pair<T, T> restricted_psi_neg_n(long n, const T& z0, const T& z1) {
  if (n < 1) throw std::invalid_argument("restricted_psi_neg_n: n must be >= 1");
  bigint fn1 = fib(n + 1), fn = fib(n), fnm1 = fib(n - 1);
  T a = times_big(fnm1, z0) - times_big(fn, z1);
  T b = times_big(fn1, z1) - times_big(fn, z0);
  if (n % 2 != 0) return {T(0) - a, T(0) - b};
  return {a, b};
}

template std::pair<bigint, bigint> restricted_psi_n<bigint>(long, const bigint&, const bigint&);
template std::pair<bigint, bigint> restricted_psi_neg_n<bigint>(long, const bigint&, const bigint&);
template std::pair<bigrat, bigrat> restricted_psi_n<bigrat>(long, const bigrat&, const bigrat&);
template std::pair<bigrat, bigrat> restricted_psi_neg_n<bigrat>(long, const bigrat&, const bigrat&);
template std::pair<std::complex<double>, std::complex<double>>
restricted_psi_n<std::complex<double>>(long, const std::complex<double>&, const std::complex<double>&);
template std::pair<std::complex<double>, std::complex<double>>
restricted_psi_neg_n<std::complex<double>>(long, const std::complex<double>&, const std::complex<double>&);

}  // namespace skewdyn
