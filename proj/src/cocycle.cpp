#include "skewdyn/cocycle.hpp"

#include <stdexcept>

namespace skewdyn {

CocycleMatrix eval_cocycle(const Params& params, const Point3& z) {
  ScaledComplex one = ScaledComplex::from_double(1.0);
  CocycleMatrix m;
  m.m00 = sc_add(one, sc_mul(sc_powi(z.z0, params.q - 1), sc_powi(z.z2, params.d)));
  m.m01 = one;
  m.m10 = one;
  m.m11 = ScaledComplex();
  return m;
}

CocycleMatrix cocycle_matmul(const CocycleMatrix& a, const CocycleMatrix& b) {
  CocycleMatrix r;
  r.m00 = sc_add(sc_mul(a.m00, b.m00), sc_mul(a.m01, b.m10));
  r.m01 = sc_add(sc_mul(a.m00, b.m01), sc_mul(a.m01, b.m11));
  r.m10 = sc_add(sc_mul(a.m10, b.m00), sc_mul(a.m11, b.m10));
  r.m11 = sc_add(sc_mul(a.m10, b.m01), sc_mul(a.m11, b.m11));
  return r;
}

CocycleMatrix cocycle_product(const Params& params, const Point3& p, int n) {
  if (n < 0) throw std::invalid_argument("cocycle_product: n must be >= 0");
  CocycleMatrix acc = CocycleMatrix::identity();
  Point3 cur = p;
  for (int j = 0; j < n; ++j) {
    acc = cocycle_matmul(eval_cocycle(params, cur), acc);
    cur = apply_psi(params, cur);
  }
  return acc;
}

std::pair<ScaledComplex, ScaledComplex> cocycle_apply(
    const CocycleMatrix& m, const ScaledComplex& v0, const ScaledComplex& v1) {
  return {sc_add(sc_mul(m.m00, v0), sc_mul(m.m01, v1)),
          sc_add(sc_mul(m.m10, v0), sc_mul(m.m11, v1))};
}

}  // namespace skewdyn
