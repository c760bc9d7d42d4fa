#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "skewdyn/cocycle.hpp"
#include "skewdyn/fibonacci.hpp"
#include "skewdyn/orbit.hpp"

using namespace skewdyn;

namespace {

double rel_diff(const ScaledComplex& a, const ScaledComplex& b) {
  ScaledComplex d = sc_sub(a, b);
  LogMagnitude ld = sc_log_abs(d);
  if (!ld.finite) return 0.0;
  LogMagnitude lm = lm_max(sc_log_abs(a), sc_log_abs(b));
  if (!lm.finite) return 1e300;
  return std::exp(ld.value - lm.value);
}

complexd rand_complex(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> box(lo, hi);
  return {box(rng), box(rng)};
}

}  // namespace

TEST_CASE("forward map formula") {
  Params p(2, 1, {0.5, 0.0});
  Point3 out = apply_psi(p, Point3::from_real(1, 1, 1));
  CHECK(out.z0.to_complex() == complexd(3, 0));
  CHECK(out.z1.to_complex() == complexd(1, 0));
  CHECK(out.z2.to_complex() == complexd(0.5, 0));

  // the axis {0}x{0}xC is invariant
  Point3 axis = apply_psi(p, Point3::from_complex({0, 0}, {0, 0}, {0.3, 0.4}));
  CHECK(axis.z0.is_zero());
  CHECK(axis.z1.is_zero());
  CHECK(axis.z2.to_complex() == complexd(0.5, 0) * complexd(0.3, 0.4));

  Point3 inv = apply_psi_inv(p, Point3::from_real(3, 1, 0.5));
  CHECK(inv.z0.to_complex() == complexd(1, 0));
  CHECK(inv.z1.to_complex() == complexd(1, 0));
  CHECK(inv.z2.to_complex() == complexd(1, 0));
}

TEST_CASE("fixed point at the origin") {
  Params p(3, 2, {0.7, 0.1});
  Point3 out = apply_psi(p, Point3::from_real(0, 0, 0));
  CHECK(out.z0.is_zero());
  CHECK(out.z1.is_zero());
  CHECK(out.z2.is_zero());
}

TEST_CASE("henon factor and conjugated map") {
  Params p(2, 1, {0.5, 0.0});
  Point2 w = apply_henon(p, Point2::from_complex({1, 0}, {1, 0}));
  CHECK(w.w0.to_complex() == complexd(1.5, 0));
  CHECK(w.w1.to_complex() == complexd(0.5, 0));

  Point2 fixed = apply_henon(p, Point2::from_complex({0, 0}, {0, 0}));
  CHECK(fixed.w0.is_zero());
  CHECK(fixed.w1.is_zero());

  Params p32(3, 2, {0.5, 0.0});  // l = 1
  Point3 out = apply_phi(p32, Point3::from_real(1, 0, 2));
  CHECK(out.z0.to_complex() == complexd(1, 0));
  CHECK(out.z1.to_complex() == complexd(0.5, 0));
  CHECK(out.z2.to_complex() == complexd(1, 0));
}

TEST_CASE("theta and h") {
  Params p(2, 1, {0.5, 0.0});
  Point3 t = theta(p, Point3::from_real(2, 3, 4));
  CHECK(t.z0.to_complex() == complexd(8, 0));
  CHECK(t.z1.to_complex() == complexd(12, 0));
  CHECK(t.z2.to_complex() == complexd(4, 0));

  Point2 h = h_map(p, Point3::from_real(2, 3, 4));
  CHECK(h.w0.to_complex() == complexd(8, 0));
  CHECK(h.w1.to_complex() == complexd(12, 0));

  // integral l collapses {z2=0} to the origin of the henon plane
  Point2 collapsed = h_map(p, Point3::from_real(5, -7, 0));
  CHECK(collapsed.w0.is_zero());
  CHECK(collapsed.w1.is_zero());

  // fractional l refuses the branch point
  Params frac(3, 1, {0.5, 0.0});  // l = 1/2
  CHECK_THROWS_AS(theta(frac, Point3::from_real(1, 1, 0)), std::domain_error);
  CHECK_THROWS_AS(h_map(frac, Point3::from_real(1, 1, 0)), std::domain_error);
}

TEST_CASE("inverse identity on random points") {
  // relative to the point norm; the box shrinks for larger q+d, where the
  // forward image is bigger and cancellation in the inverse grows with it
  std::mt19937_64 rng(41);
  for (auto [q, d, are, aim, box] : {std::tuple{2, 1, 0.5, 0.0, 10.0},
                                     {3, 2, 0.8, 0.1, 3.0},
                                     {2, 2, 0.3, -0.2, 6.0},
                                     {4, 3, 0.95, 0.0, 2.0}}) {
    Params p(q, d, {are, aim});
    for (int t = 0; t < 200; ++t) {
      Point3 z = Point3::from_complex(rand_complex(rng, -box, box),
                                      rand_complex(rng, -box, box),
                                      rand_complex(rng, -box, box));
      Point3 back = apply_psi_inv(p, apply_psi(p, z));
      double norm = std::exp(z.log_norm().value);
      double err = std::abs(sc_sub(back.z0, z.z0).to_complex()) +
                   std::abs(sc_sub(back.z1, z.z1).to_complex()) +
                   std::abs(sc_sub(back.z2, z.z2).to_complex());
      CHECK(err / norm <= 1e-12);
    }
  }
}

TEST_CASE("semi-conjugacy for integral l") {
  std::mt19937_64 rng(43);
  Params p(2, 1, {0.5, 0.0});
  for (int t = 0; t < 200; ++t) {
    Point3 z = Point3::from_complex(rand_complex(rng, -3, 3), rand_complex(rng, -3, 3),
                                    rand_complex(rng, 0.2, 2.0));
    Point3 lhs = theta(p, apply_psi(p, z));
    Point3 rhs = apply_phi(p, theta(p, z));
    CHECK(rel_diff(lhs.z0, rhs.z0) <= 1e-10);
    CHECK(rel_diff(lhs.z1, rhs.z1) <= 1e-10);
    CHECK(rel_diff(lhs.z2, rhs.z2) <= 1e-10);
  }
}

TEST_CASE("eigen action on the stable line of {z2=0}") {
  Params p(2, 1, {0.9, 0.0});
  complexd c(0.8, -0.3);
  Point3 out = apply_psi(p, Point3::from_complex(kPhiPrime * c, c, {0, 0}));
  ScaledComplex expect0 = ScaledComplex::from_complex(kPhiPrime * kPhiPrime * c);
  ScaledComplex expect1 = ScaledComplex::from_complex(kPhiPrime * c);
  CHECK(rel_diff(out.z0, expect0) <= 1e-12);
  CHECK(rel_diff(out.z1, expect1) <= 1e-12);
  CHECK(out.z2.is_zero());
}

TEST_CASE("fiber coordinate is transported exactly") {
  Params p(2, 1, {0.5, 0.0});  // power of two: multiplication is exact
  Point3 cur = Point3::from_real(1, 2, 3);
  for (int n = 1; n <= 60; ++n) {
    cur = apply_psi(p, cur);
    ScaledComplex expect = sc_mul(sc_powi(p.alpha_sc(), n), ScaledComplex::from_double(3.0));
    CHECK(cur.z2.mantissa() == expect.mantissa());
    CHECK(cur.z2.exponent() == expect.exponent());
  }

  // generic alpha: iterated transport matches iterated multiplication bit for bit
  Params g(2, 1, {0.71, 0.22});
  Point3 zg = Point3::from_real(1, 2, 3);
  ScaledComplex z2 = zg.z2;
  for (int n = 0; n < 40; ++n) {
    zg = apply_psi(g, zg);
    z2 = sc_mul(g.alpha_sc(), z2);
    CHECK(zg.z2.mantissa() == z2.mantissa());
    CHECK(zg.z2.exponent() == z2.exponent());
  }
}

TEST_CASE("fibonacci numbers and the restricted closed forms") {
  CHECK(fib(0) == 0);
  CHECK(fib(1) == 1);
  CHECK(fib(5) == 5);
  CHECK(fib(6) == 8);
  CHECK(fib(90) == bigint("2880067194370816120"));

  auto img = restricted_psi_n<bigint>(5, 1, 0);
  CHECK(img.first == 8);
  CHECK(img.second == 5);

  // one backward step is (z1, z0 - z1)
  auto back = restricted_psi_neg_n<bigint>(1, 7, 3);
  CHECK(back.first == 3);
  CHECK(back.second == 4);
}

TEST_CASE("orbit on {z2=0} is exactly Fibonacci") {
  Params p(2, 1, {0.9, 0.0});
  OrbitResult orb = orbit(p, Point3::from_real(1, 0, 0), 30);
  REQUIRE(orb.records.size() == 31);
  for (int n = 0; n <= 30; ++n) {
    complexd v = orb.records[static_cast<size_t>(n)].point.z0.to_complex();
    CHECK(v.real() == static_cast<double>(fib(n + 1)));
    CHECK(v.imag() == 0.0);
  }
  // partial sums of g freeze at phi*z0 + z1 = phi on this hypersurface
  REQUIRE(orb.records.back().g_partial.has_value());
  CHECK(orb.records.back().g_partial->real() == doctest::Approx(kPhi));
}

TEST_CASE("exact match of forward orbit with the closed form on integers") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> small(-50, 50);
  Params p(2, 1, {0.37, 0.11});
  for (int t = 0; t < 20; ++t) {
    long a = small(rng), b = small(rng);
    OrbitResult orb = orbit(p, Point3::from_real(static_cast<double>(a),
                                                 static_cast<double>(b), 0.0),
                            30, StopPolicy{1e200, 1e-300, 10});
    for (long n = 1; n <= 30; ++n) {
      auto expect = restricted_psi_n<bigint>(n, bigint(a), bigint(b));
      complexd v = orb.records[static_cast<size_t>(n)].point.z0.to_complex();
      complexd w = orb.records[static_cast<size_t>(n)].point.z1.to_complex();
      CHECK(v.real() == static_cast<double>(expect.first));
      CHECK(w.real() == static_cast<double>(expect.second));
    }
  }
}

TEST_CASE("backward iterates on {z2=0} follow the alternating closed form") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> small(-50, 50);
  Params p(2, 1, {0.37, 0.11});
  for (int t = 0; t < 10; ++t) {
    long a = small(rng), b = small(rng);
    Point3 cur = Point3::from_real(static_cast<double>(a), static_cast<double>(b), 0.0);
    for (long n = 1; n <= 30; ++n) {
      cur = apply_psi_inv(p, cur);
      auto expect = restricted_psi_neg_n<bigint>(n, bigint(a), bigint(b));
      CHECK(cur.z0.to_complex().real() == static_cast<double>(expect.first));
      CHECK(cur.z1.to_complex().real() == static_cast<double>(expect.second));
      CHECK(cur.z2.is_zero());
    }
  }
}

TEST_CASE("orbit on the stable line contracts at rate -log(phi)") {
  // double rounding plants a phi^n-growing admixture of the unstable
  // direction, so the clean geometric window ends around n = 20
  Params p(2, 1, {0.5, 0.0});
  complexd c(0.9, 0.0);
  OrbitResult orb = orbit(p, Point3::from_complex(kPhiPrime * c, c, {0, 0}), 20,
                          StopPolicy{1e4, 1e-300, 10});
  REQUIRE(orb.records.size() == 21);
  for (size_t n = 2; n + 1 < orb.records.size(); ++n) {
    double diff = orb.records[n + 1].log_mag.value - orb.records[n].log_mag.value;
    CHECK(diff == doctest::Approx(-std::log(kPhi)).epsilon(1e-6));
  }
}

TEST_CASE("escaping orbit: monotone log and doubling growth, oracle cross-check") {
  Params p(2, 1, {0.9, 0.0});
  OrbitResult orb = orbit(p, Point3::from_real(10, 5, 1), 40,
                          StopPolicy{1e200, 1e-300, 10});
  REQUIRE(orb.records.size() == 41);

  for (size_t n = 1; n < orb.records.size(); ++n)
    CHECK(orb.records[n].log_mag.value > orb.records[n - 1].log_mag.value);

  double r = orb.records[40].log_mag.value / orb.records[39].log_mag.value;
  CHECK(r == doctest::Approx(2.0).epsilon(1e-3));

  oracle::triple cur{oracle::mpc(10.0), oracle::mpc(5.0), oracle::mpc(1.0)};
  oracle::mpc alpha(0.9);
  for (int n = 1; n <= 5; ++n) {
    cur = oracle::step(cur, 2, 1, alpha);
    complexd got = orb.records[static_cast<size_t>(n)].point.z0.to_complex();
    CHECK(oracle::rel_error(oracle::mpc(got), cur.z0) <= 1e-13);
  }
}

TEST_CASE("orbit record bookkeeping") {
  Params p(2, 1, {0.5, 0.0});
  OrbitResult orb = orbit(p, Point3::from_real(1, 0, 0), 10);
  for (size_t n = 0; n < orb.records.size(); ++n)
    CHECK(orb.records[n].n == static_cast<int>(n));
  // ratio is absent when the previous value is zero
  CHECK_FALSE(orb.records[0].ratio.has_value());
  REQUIRE(orb.records[1].ratio.has_value());

  // all-zero orbit stops via the zero detector
  OrbitResult zero = orbit(p, Point3::from_real(0, 0, 0), 100);
  CHECK(zero.stop == OrbitStop::zero_detected);
}

TEST_CASE("cocycle shape and values") {
  Params p(2, 1, {0.5, 0.0});
  CocycleMatrix a0 = eval_cocycle(p, Point3::from_real(4, 9, 0));
  CHECK(a0.m00.to_complex() == complexd(1, 0));
  CHECK(a0.m01.to_complex() == complexd(1, 0));
  CHECK(a0.m10.to_complex() == complexd(1, 0));
  CHECK(a0.m11.is_zero());

  CocycleMatrix a1 = eval_cocycle(p, Point3::from_real(1, 1, 1));
  CHECK(a1.m00.to_complex() == complexd(2, 0));
  CHECK(a1.m11.is_zero());
}

TEST_CASE("cocycle product reproduces the orbit") {
  std::mt19937_64 rng(59);
  for (auto [q, d, are] : {std::tuple{2, 1, 0.45}, {3, 2, 0.6}}) {
    Params p(q, d, {are, 0.05});
    for (int t = 0; t < 12; ++t) {
      Point3 z = Point3::from_complex(rand_complex(rng, -0.8, 0.8),
                                      rand_complex(rng, -0.8, 0.8),
                                      rand_complex(rng, -0.8, 0.8));
      OrbitResult orb = orbit(p, z, 30, StopPolicy{1e200, 1e-300, 10});
      for (int n : {5, 17, 30}) {
        CocycleMatrix an = cocycle_product(p, z, n);
        auto [v0, v1] = cocycle_apply(an, z.z0, z.z1);
        CHECK(rel_diff(v0, orb.records[static_cast<size_t>(n)].point.z0) <= 1e-10);
        CHECK(rel_diff(v1, orb.records[static_cast<size_t>(n)].point.z1) <= 1e-10);
      }
    }
  }
}
