#ifndef SKEWDYN_FIBONACCI_HPP
#define SKEWDYN_FIBONACCI_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <utility>

namespace skewdyn {

using bigint = boost::multiprecision::cpp_int;

// F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}; also defined for n = -1 (F_{-1} = 1)
bigint fib(long n);

// Restriction of the n-th forward iterate to {z2 = 0}:
//   (z0, z1) -> (F_{n+1} z0 + F_n z1, F_n z0 + F_{n-1} z1),   n >= 1.
// Exact over any ring T that can absorb a bigint coefficient.
template <typename T>
std::pair<T, T> restricted_psi_n(long n, const T& z0, const T& z1);

// Restriction of the n-th backward iterate to {z2 = 0}:
//   (z0, z1) -> (-1)^n (F_{n-1} z0 - F_n z1, -F_n z0 + F_{n+1} z1),  n >= 1.
template <typename T>
std::pair<T, T> restricted_psi_neg_n(long n, const T& z0, const T& z1);

}  // namespace skewdyn

#endif
