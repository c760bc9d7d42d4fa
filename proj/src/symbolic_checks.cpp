#include "skewdyn/symbolic_checks.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewdyn {

namespace {

MultiPoly var(int slot, int exp = 1) { return MultiPoly::variable(slot, exp); }

MultiPoly unit_monomial(int slot, int exp) {
  Exponents e{};
  e[slot] = static_cast<int16_t>(exp);
  return MultiPoly::from_terms({{e, bigint(1)}});
}

long expected_psi_degree(int q, int d, int n) {
  long qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  return qn + static_cast<long>(d) * (qn - 1) / (q - 1);
}

long power_long(int q, int n) {
  long r = 1;
  for (int i = 0; i < n; ++i) r *= q;
  return r;
}

}  // namespace

PolyMap psi_affine(int q, int d) {
  MultiPoly z0 = var(kVarZ0), z1 = var(kVarZ1), z2 = var(kVarZ2);
  PolyMap m;
  m.comps.push_back(poly_add(poly_add(z0, z1),
                             poly_mul(var(kVarZ0, q), var(kVarZ2, d))));
  m.comps.push_back(z0);
  m.comps.push_back(poly_mul(unit_monomial(kVarA, 1), z2));
  return m;
}

PolyMap psi_inverse_affine(int q, int d) {
  MultiPoly z0 = var(kVarZ0), z1 = var(kVarZ1), z2 = var(kVarZ2);
  PolyMap m;
  m.comps.push_back(z1);
  m.comps.push_back(poly_sub(poly_sub(z0, z1),
                             poly_mul(poly_mul(var(kVarZ1, q), var(kVarZ2, d)),
                                      unit_monomial(kVarA, -d))));
  m.comps.push_back(poly_mul(unit_monomial(kVarA, -1), z2));
  return m;
}

PolyMap phi_affine(int q, int d) {
  (void)d;
  MultiPoly z0 = var(kVarZ0), z1 = var(kVarZ1), z2 = var(kVarZ2);
  MultiPoly b = unit_monomial(kVarB, 1);
  PolyMap m;
  m.comps.push_back(poly_mul(b, poly_add(poly_add(z0, z1), var(kVarZ0, q))));
  m.comps.push_back(poly_mul(b, z0));
  m.comps.push_back(poly_mul(unit_monomial(kVarA, 1), z2));
  return m;
}

PolyMap phi_inverse_affine(int q, int d) {
  (void)d;
  MultiPoly z0 = var(kVarZ0), z1 = var(kVarZ1), z2 = var(kVarZ2);
  PolyMap m;
  m.comps.push_back(poly_mul(unit_monomial(kVarB, -1), z1));
  m.comps.push_back(poly_sub(poly_mul(unit_monomial(kVarB, -1), poly_sub(z0, z1)),
                             poly_mul(unit_monomial(kVarB, -q), var(kVarZ1, q))));
  m.comps.push_back(poly_mul(unit_monomial(kVarA, -1), z2));
  return m;
}

namespace {

PolyMap scale_by_unit(const PolyMap& m, int slot, int exp) {
  MultiPoly u = unit_monomial(slot, exp);
  PolyMap out;
  for (const MultiPoly& c : m.comps) out.comps.push_back(poly_mul(u, c));
  return out;
}

}  // namespace

PolyMap psi_projective(int q, int d) { return homogenize(psi_affine(q, d), q + d); }

PolyMap psi_inverse_projective(int q, int d) {
  // clear the a^(-d) denominator before homogenizing
  return homogenize(scale_by_unit(psi_inverse_affine(q, d), kVarA, d), q + d);
}

PolyMap phi_projective(int q, int d) { return homogenize(phi_affine(q, d), q); }

PolyMap phi_inverse_projective(int q, int d) {
  // denominators 1/b, 1/b^q, 1/a cleared by a b^q
  PolyMap scaled = scale_by_unit(scale_by_unit(phi_inverse_affine(q, d), kVarB, q), kVarA, 1);
  return homogenize(scaled, q);
}

std::vector<MultiPoly> iterate_psi_symbolic(int q, int d, int n_max, int cap) {
  if (q < 2 || d < 1) throw std::invalid_argument("iterate_psi_symbolic: need q >= 2, d >= 1");
  if (n_max < 0) throw std::invalid_argument("iterate_psi_symbolic: n_max must be >= 0");
  if (n_max > cap) throw std::length_error("iterate_psi_symbolic: cap-exceeded");

  std::vector<MultiPoly> seq;
  seq.reserve(static_cast<size_t>(n_max) + 2);
  seq.push_back(var(kVarZ1));  // P^(-1)
  seq.push_back(var(kVarZ0)); // P^(0)
  for (int n = 0; n < n_max; ++n) {
    const MultiPoly& pn = seq.back();
    const MultiPoly& pm = seq[seq.size() - 2];
    Exponents w{};
    w[kVarZ2] = static_cast<int16_t>(d);
    w[kVarA] = static_cast<int16_t>(n * d);
    MultiPoly term = poly_mul(poly_pow(pn, q), MultiPoly::monomial(w, 1));
    seq.push_back(poly_add(poly_add(pn, pm), term));
  }
  return seq;
}

DegreeReport verify_degree_formula(int q, int d, int n_max) {
  DegreeReport rep;
  std::vector<MultiPoly> fwd = iterate_psi_symbolic(q, d, n_max, std::max(n_max, 6));

  // backward iterates: Psi^-(n+1) = (C_n, B_n - C_n - C_n^q z2^d a^-(n+1)d, .)
  MultiPoly B = var(kVarZ0), C = var(kVarZ1);
  std::vector<long> inv_deg;
  for (int n = 1; n <= n_max; ++n) {
    Exponents w{};
    w[kVarZ2] = static_cast<int16_t>(d);
    w[kVarA] = static_cast<int16_t>(-n * d);
    MultiPoly Cn = poly_sub(poly_sub(B, C), poly_mul(poly_pow(C, q), MultiPoly::monomial(w, 1)));
    B = C;
    C = Cn;
    inv_deg.push_back(std::max({B.z_degree(), C.z_degree(), 1L}));
  }

  rep.pass = true;
  for (int n = 1; n <= n_max; ++n) {
    long expect = expected_psi_degree(q, d, n);
    long fdeg = std::max({fwd[static_cast<size_t>(n) + 1].z_degree(),
                          fwd[static_cast<size_t>(n)].z_degree(), 1L});
    rep.forward_degrees.push_back(fdeg);
    rep.inverse_degrees.push_back(inv_deg[static_cast<size_t>(n) - 1]);
    rep.expected.push_back(expect);
    if (fdeg != expect || inv_deg[static_cast<size_t>(n) - 1] != expect) rep.pass = false;
  }
  return rep;
}

DegreeReport verify_phi_degrees(int q, int d, int n_max) {
  DegreeReport rep;
  PolyMap fwd = phi_affine(q, d);
  PolyMap bwd = phi_inverse_affine(q, d);
  PolyMap f = fwd, g = bwd;
  rep.pass = true;
  for (int n = 1; n <= n_max; ++n) {
    long expect = power_long(q, n);
    long df = std::max({f.comps[0].z_degree(), f.comps[1].z_degree(), f.comps[2].z_degree()});
    long dg = std::max({g.comps[0].z_degree(), g.comps[1].z_degree(), g.comps[2].z_degree()});
    rep.forward_degrees.push_back(df);
    rep.inverse_degrees.push_back(dg);
    rep.expected.push_back(expect);
    if (df != expect || dg != expect) rep.pass = false;
    if (n < n_max) {
      f = map_compose(fwd, f);
      g = map_compose(bwd, g);
    }
  }
  return rep;
}

HyperplaneImage hyperplane_image(const PolyMap& projective) {
  if (!projective.projective())
    throw std::invalid_argument("hyperplane_image: expected a projective map");
  HyperplaneImage out;
  for (const MultiPoly& c : projective.comps)
    out.restricted.comps.push_back(c.substitute_zero(kVarZ3));
  int survivor = -1;
  int n_surviving = 0;
  for (int i = 0; i < 4; ++i) {
    if (!out.restricted.comps[static_cast<size_t>(i)].is_zero()) {
      ++n_surviving;
      survivor = i;
    }
  }
  if (n_surviving == 1) out.collapse_to = survivor;
  return out;
}

IndReport indeterminacy_on_hyperplane(const PolyMap& projective) {
  if (!projective.projective())
    throw std::invalid_argument("indeterminacy_on_hyperplane: expected a projective map");

  std::vector<MultiPoly> restricted;
  for (const MultiPoly& c : projective.comps) {
    MultiPoly r = c.substitute_zero(kVarZ3);
    if (r.term_count() > 2)
      throw std::domain_error(
          "indeterminacy_on_hyperplane: unsupported-form (component is neither "
          "monomial nor binomial on z3 = 0)");
    if (!r.is_zero()) restricted.push_back(std::move(r));
  }

  // a candidate subspace {z_i = 0 for i in S, z3 = 0} lies in the locus iff
  // it kills every surviving component; keep the minimal qualifying S
  std::vector<std::vector<int>> qualifying;
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<int> subset;
    for (int v = 0; v < 3; ++v)
      if (mask & (1u << v)) subset.push_back(v);
    bool kills_all = true;
    for (const MultiPoly& c : restricted) {
      MultiPoly r = c;
      for (int v : subset) r = r.substitute_zero(v);
      if (!r.is_zero()) {
        kills_all = false;
        break;
      }
    }
    if (kills_all) qualifying.push_back(subset);
  }

  IndReport rep;
  for (const auto& s : qualifying) {
    bool minimal = true;
    for (const auto& t : qualifying) {
      if (t.size() < s.size() &&
          std::includes(s.begin(), s.end(), t.begin(), t.end()))
        minimal = false;
    }
    if (minimal) rep.loci.push_back(s);
  }
  return rep;
}

namespace {

bool centralizer_commutes(int q, int d, const PolyMap& f, int eta_modulus) {
  PolyMap phi = phi_affine(q, d);
  PolyMap lhs = map_compose(f, phi);  // f after Phi
  PolyMap rhs = map_compose(phi, f);  // Phi after f
  for (int i = 0; i < 3; ++i) {
    MultiPoly a = lhs.comps[static_cast<size_t>(i)];
    MultiPoly b = rhs.comps[static_cast<size_t>(i)];
    if (eta_modulus >= 1) {
      a = a.reduce_eta(eta_modulus);
      b = b.reduce_eta(eta_modulus);
    }
    if (a != b) return false;
  }
  return true;
}

}  // namespace

bool check_centralizer_family(int q, int d, int eta_exponent) {
  PolyMap f;
  MultiPoly eta_k = unit_monomial(kVarEta, eta_exponent);
  f.comps.push_back(poly_mul(eta_k, var(kVarZ0)));
  f.comps.push_back(poly_mul(eta_k, var(kVarZ1)));
  f.comps.push_back(poly_mul(unit_monomial(kVarNu, 1), var(kVarZ2)));
  return centralizer_commutes(q, d, f, q - 1);
}

bool check_centralizer_integer(int q, int d, long eta_value) {
  PolyMap f;
  MultiPoly c = MultiPoly::constant(eta_value);
  f.comps.push_back(poly_mul(c, var(kVarZ0)));
  f.comps.push_back(poly_mul(c, var(kVarZ1)));
  f.comps.push_back(poly_mul(unit_monomial(kVarNu, 1), var(kVarZ2)));
  return centralizer_commutes(q, d, f, 0);
}

namespace {

bool third_component_fibered(const MultiPoly& c) {
  if (c.is_zero()) return false;
  for (const auto& t : c.terms()) {
    if (t.first[kVarZ0] != 0 || t.first[kVarZ1] != 0 || t.first[kVarZ3] != 0)
      return false;
    if (t.first[kVarZ2] != 1) return false;  // linear in z2, no constant term
  }
  return true;
}

}  // namespace

FibrationReport check_fibration_invariance(int q, int d) {
  FibrationReport rep;
  rep.psi_ok = third_component_fibered(psi_affine(q, d).comps[2]);
  rep.phi_ok = third_component_fibered(phi_affine(q, d).comps[2]);
  return rep;
}

}  // namespace skewdyn
