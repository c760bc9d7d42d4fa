#ifndef SKEWDYN_POLYNOMIAL_HPP
#define SKEWDYN_POLYNOMIAL_HPP

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace skewdyn {

using bigint = boost::multiprecision::cpp_int;

// Exponent slots of a monomial.  0..2 are z0, z1, z2 (never negative),
// 3 is the homogenizing variable z3, 4 and 5 track the formal unit symbols
// a := alpha and b := alpha^l (Laurent exponents, may be negative), and the
// last two are scratch unit symbols used by the centralizer check: a root
// of unity eta and a free scalar nu.
inline constexpr int kVarZ0 = 0;
inline constexpr int kVarZ1 = 1;
inline constexpr int kVarZ2 = 2;
inline constexpr int kVarZ3 = 3;
inline constexpr int kVarA = 4;
inline constexpr int kVarB = 5;
inline constexpr int kVarEta = 6;
inline constexpr int kVarNu = 7;
inline constexpr int kNumVars = 8;

using Exponents = std::array<int16_t, kNumVars>;

// Exact sparse polynomial with arbitrary-precision integer coefficients,
// stored in canonical form: terms sorted by exponent vector, no zero
// coefficients.
class MultiPoly {
 public:
  using Term = std::pair<Exponents, bigint>;

  MultiPoly() = default;

  static MultiPoly zero() { return MultiPoly(); }
  static MultiPoly constant(bigint c);
  static MultiPoly variable(int slot, int exp = 1);
  static MultiPoly monomial(const Exponents& e, bigint c);

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  // max of e0+e1+e2 over monomials (zero polynomial reports -1);
  // include_z3 adds e3 for homogeneous forms
  long z_degree(bool include_z3 = false) const;
  int max_exponent(int slot) const;
  bool depends_on(int slot) const;

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // substitute slot := 0 (drops every term with a positive exponent there;
  // negative exponents on a unit slot are an error)
  MultiPoly substitute_zero(int slot) const;
  // substitute slot := 1 (erases the exponent)
  MultiPoly substitute_one(int slot) const;
  // reduce the eta exponent modulo `modulus` (the relation eta^modulus = 1)
  MultiPoly reduce_eta(int modulus) const;

  std::complex<double> eval(const std::array<std::complex<double>, kNumVars>& v) const;

  // one `coeff e0 e1 e2 e3 ea eb` line per monomial; refuses polynomials
  // that carry the scratch symbols
  std::string dump() const;

  // building block for arithmetic: terms must end up sorted and nonzero
  static MultiPoly from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

MultiPoly poly_add(const MultiPoly& f, const MultiPoly& g);
MultiPoly poly_sub(const MultiPoly& f, const MultiPoly& g);
MultiPoly poly_neg(const MultiPoly& f);
MultiPoly poly_mul(const MultiPoly& f, const MultiPoly& g);
MultiPoly poly_pow(const MultiPoly& f, int k);

// 3 components for an affine map of C^3, 4 for its projective form
struct PolyMap {
  std::vector<MultiPoly> comps;

  bool projective() const { return comps.size() == 4; }
};

// substitutes map.comps for z0, z1, z2 inside `into`; a, b, eta, nu and z3
// are never substituted
MultiPoly poly_compose(const PolyMap& map, const MultiPoly& into);
PolyMap map_compose(const PolyMap& outer, const PolyMap& inner);

// (f0 : f1 : f2 : z3^D) with each monomial padded by z3 to degree D
PolyMap homogenize(const PolyMap& affine, int target_degree);
PolyMap dehomogenize(const PolyMap& projective);

}  // namespace skewdyn

#endif
