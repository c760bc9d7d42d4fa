#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "skewdyn/orbit.hpp"
#include "skewdyn/symbolic_checks.hpp"

using namespace skewdyn;

namespace {

// exact evaluation over Gaussian rationals, for dyadic test points where
// the expanded polynomial cancels too heavily for double arithmetic
struct ratc {
  boost::multiprecision::cpp_rational re, im;

  ratc operator+(const ratc& o) const { return {re + o.re, im + o.im}; }
  ratc operator*(const ratc& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

complexd exact_eval(const MultiPoly& p, const std::array<ratc, kNumVars>& v) {
  std::array<std::vector<ratc>, kNumVars> pow;
  for (int i = 0; i < kNumVars; ++i) {
    int top = p.max_exponent(i);
    pow[i].push_back(ratc{1, 0});
    for (int k = 1; k <= top; ++k) pow[i].push_back(pow[i].back() * v[i]);
  }
  ratc acc{0, 0};
  for (const auto& t : p.terms()) {
    ratc m{boost::multiprecision::cpp_rational(t.second), 0};
    for (int i = 0; i < kNumVars; ++i) {
      if (t.first[i] < 0) throw std::invalid_argument("exact_eval: negative exponent");
      if (t.first[i] > 0) m = m * pow[i][static_cast<size_t>(t.first[i])];
    }
    acc = acc + m;
  }
  return {static_cast<double>(acc.re), static_cast<double>(acc.im)};
}

}  // namespace

TEST_CASE("symbolic iterates of the first component") {
  std::vector<MultiPoly> seq = iterate_psi_symbolic(2, 1, 2);
  REQUIRE(seq.size() == 4);  // P^(-1), P^(0), P^(1), P^(2)

  MultiPoly expect_p1 = poly_add(
      poly_add(MultiPoly::variable(kVarZ0), MultiPoly::variable(kVarZ1)),
      poly_mul(MultiPoly::variable(kVarZ0, 2), MultiPoly::variable(kVarZ2)));
  CHECK(seq[2] == expect_p1);
  CHECK(seq[3].z_degree() == 7);

  std::vector<MultiPoly> seq32 = iterate_psi_symbolic(3, 2, 2);
  CHECK(seq32[3].z_degree() == 17);

  CHECK_THROWS_AS(iterate_psi_symbolic(2, 1, 7), std::length_error);
}

TEST_CASE("degree growth formula, forward and backward") {
  DegreeReport r21 = verify_degree_formula(2, 1, 5);
  CHECK(r21.pass);
  CHECK(r21.expected == std::vector<long>{3, 7, 15, 31, 63});
  CHECK(r21.forward_degrees == r21.expected);
  CHECK(r21.inverse_degrees == r21.expected);

  DegreeReport r31 = verify_degree_formula(3, 1, 2);
  CHECK(r31.pass);
  CHECK(r31.expected == std::vector<long>{4, 13});

  DegreeReport r22 = verify_degree_formula(2, 2, 4);
  CHECK(r22.pass);
  CHECK(r22.expected == std::vector<long>{4, 10, 22, 46});
}

TEST_CASE("conjugated map stays at degree q^n in both directions") {
  DegreeReport r = verify_phi_degrees(2, 1, 5);
  CHECK(r.pass);
  CHECK(r.forward_degrees == std::vector<long>{2, 4, 8, 16, 32});
  CHECK(r.inverse_degrees == std::vector<long>{2, 4, 8, 16, 32});

  DegreeReport r32 = verify_phi_degrees(3, 2, 3);
  CHECK(r32.pass);
  CHECK(r32.forward_degrees == std::vector<long>{3, 9, 27});
}

TEST_CASE("hyperplane collapse points") {
  HyperplaneImage psi = hyperplane_image(psi_projective(2, 1));
  REQUIRE(psi.collapse_to.has_value());
  CHECK(*psi.collapse_to == 0);  // (1:0:0:0)
  // the surviving component is z0^q z2^d
  CHECK(psi.restricted.comps[0] ==
        poly_mul(MultiPoly::variable(kVarZ0, 2), MultiPoly::variable(kVarZ2)));
  CHECK(psi.restricted.comps[1].is_zero());
  CHECK(psi.restricted.comps[2].is_zero());
  CHECK(psi.restricted.comps[3].is_zero());

  HyperplaneImage phi = hyperplane_image(phi_projective(2, 1));
  REQUIRE(phi.collapse_to.has_value());
  CHECK(*phi.collapse_to == 0);

  HyperplaneImage phi_inv = hyperplane_image(phi_inverse_projective(2, 1));
  REQUIRE(phi_inv.collapse_to.has_value());
  CHECK(*phi_inv.collapse_to == 1);  // (0:1:0:0)

  HyperplaneImage psi_inv = hyperplane_image(psi_inverse_projective(2, 1));
  REQUIRE(psi_inv.collapse_to.has_value());
  CHECK(*psi_inv.collapse_to == 1);
}

TEST_CASE("indeterminacy loci on the hyperplane at infinity") {
  for (auto [q, d] : {std::pair{2, 1}, {3, 2}}) {
    IndReport psi = indeterminacy_on_hyperplane(psi_projective(q, d));
    CHECK(psi.loci == std::vector<std::vector<int>>{{0}, {2}});

    IndReport psi_inv = indeterminacy_on_hyperplane(psi_inverse_projective(q, d));
    CHECK(psi_inv.loci == std::vector<std::vector<int>>{{1}, {2}});

    IndReport phi_inv = indeterminacy_on_hyperplane(phi_inverse_projective(q, d));
    CHECK(phi_inv.loci == std::vector<std::vector<int>>{{1}});

    IndReport phi = indeterminacy_on_hyperplane(phi_projective(q, d));
    CHECK(phi.loci == std::vector<std::vector<int>>{{0}});
  }
}

TEST_CASE("unsupported component shapes are rejected") {
  // a trinomial component surviving on z3 = 0
  PolyMap odd;
  odd.comps.push_back(poly_add(
      poly_add(MultiPoly::variable(kVarZ0, 2), MultiPoly::variable(kVarZ1, 2)),
      MultiPoly::variable(kVarZ2, 2)));
  odd.comps.push_back(MultiPoly::variable(kVarZ0));
  odd.comps.push_back(MultiPoly::variable(kVarZ2));
  PolyMap proj = homogenize(odd, 2);
  CHECK_THROWS_AS(indeterminacy_on_hyperplane(proj), std::domain_error);
}

TEST_CASE("scalings by roots of unity commute") {
  // q = 2: only the trivial root
  CHECK(check_centralizer_family(2, 1, 0));
  // q = 3: {1, -1}
  CHECK(check_centralizer_family(3, 1, 0));
  CHECK(check_centralizer_family(3, 1, 1));
  // q = 4: the three cube roots
  for (int k = 0; k < 3; ++k) CHECK(check_centralizer_family(4, 2, k));

  // integer negative control: 2 is not a (q-1)-th root of unity
  CHECK_FALSE(check_centralizer_integer(3, 1, 2));
  CHECK_FALSE(check_centralizer_integer(2, 1, 2));
  CHECK_FALSE(check_centralizer_integer(4, 2, 2));
  // but 1 trivially commutes
  CHECK(check_centralizer_integer(3, 1, 1));
}

TEST_CASE("third component rides the fibration") {
  for (auto [q, d] : {std::pair{2, 1}, {3, 2}, {4, 3}}) {
    FibrationReport rep = check_fibration_invariance(q, d);
    CHECK(rep.psi_ok);
    CHECK(rep.phi_ok);
  }
  // negative control: the first component mixes z1 in, so the map is not
  // constant on {z0 = cst}
  CHECK(psi_affine(2, 1).comps[0].depends_on(kVarZ1));
}

TEST_CASE("symbolic iterates agree with the numeric orbit") {
  using boost::multiprecision::cpp_rational;
  std::mt19937_64 rng(111);
  std::uniform_int_distribution<int> eighth(-8, 8);
  auto dyadic = [&]() { return cpp_rational(eighth(rng), 8); };

  for (auto [q, d, a_re_num, a_im_num] : {std::tuple{2, 1, 3, 1},     // alpha = (3 + i)/4
                                          {3, 2, 2, -1}}) {           // alpha = (2 - i)/4
    complexd alpha(a_re_num / 4.0, a_im_num / 4.0);
    Params params(q, d, alpha);
    std::vector<MultiPoly> seq = iterate_psi_symbolic(q, d, 4);
    for (int t = 0; t < 20; ++t) {
      std::array<ratc, kNumVars> v{};
      v[kVarZ0] = {dyadic(), dyadic()};
      v[kVarZ1] = {dyadic(), dyadic()};
      v[kVarZ2] = {dyadic(), dyadic()};
      v[kVarZ3] = {1, 0};
      v[kVarA] = {cpp_rational(a_re_num, 4), cpp_rational(a_im_num, 4)};
      v[kVarB] = {1, 0};

      Point3 start = Point3::from_complex(
          {static_cast<double>(v[kVarZ0].re), static_cast<double>(v[kVarZ0].im)},
          {static_cast<double>(v[kVarZ1].re), static_cast<double>(v[kVarZ1].im)},
          {static_cast<double>(v[kVarZ2].re), static_cast<double>(v[kVarZ2].im)});
      OrbitResult orb = orbit(params, start, 4, StopPolicy{1e200, 1e-300, 10});
      for (int n = 1; n <= 4; ++n) {
        complexd sym = exact_eval(seq[static_cast<size_t>(n) + 1], v);
        complexd num = orb.records[static_cast<size_t>(n)].point.z0.to_complex();
        CHECK(std::abs(sym - num) <= 1e-10 * std::max(1.0, std::abs(sym)));
      }
    }
  }
}
