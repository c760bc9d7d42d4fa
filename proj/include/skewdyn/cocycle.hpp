#ifndef SKEWDYN_COCYCLE_HPP
#define SKEWDYN_COCYCLE_HPP

#include "skewdyn/maps.hpp"

namespace skewdyn {

// 2x2 matrix attached to a point of an orbit.  The whole module uses the
// row-vector convention M.v := v M^T, so that
//   (P^(n), P^(n-1)) = A_n(p) . (p0, p1).
struct CocycleMatrix {
  ScaledComplex m00, m01, m10, m11;

  static CocycleMatrix identity() {
    ScaledComplex one = ScaledComplex::from_double(1.0);
    return {one, ScaledComplex(), ScaledComplex(), one};
  }
};

// A(z) = [[1 + z0^(q-1) z2^d, 1], [1, 0]]
CocycleMatrix eval_cocycle(const Params& params, const Point3& z);

// A_n(p) = A(Psi^(n-1) p) ... A(Psi p) A(p); n = 0 gives the identity
CocycleMatrix cocycle_product(const Params& params, const Point3& p, int n);

CocycleMatrix cocycle_matmul(const CocycleMatrix& a, const CocycleMatrix& b);

// row-vector action (v0, v1) -> v M^T
std::pair<ScaledComplex, ScaledComplex> cocycle_apply(
    const CocycleMatrix& m, const ScaledComplex& v0, const ScaledComplex& v1);

}  // namespace skewdyn

#endif
