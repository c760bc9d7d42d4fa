#include "skewdyn/polynomial.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace skewdyn {

namespace {

struct ExponentsHash {
  size_t operator()(const Exponents& e) const {
    // FNV-1a over the raw bytes
    uint64_t h = 1469598103934665603ull;
    const unsigned char* p = reinterpret_cast<const unsigned char*>(e.data());
    for (size_t i = 0; i < sizeof(int16_t) * kNumVars; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

Exponents add_exponents(const Exponents& x, const Exponents& y) {
  Exponents r;
  for (int i = 0; i < kNumVars; ++i) {
    int s = static_cast<int>(x[i]) + static_cast<int>(y[i]);
    if (s > INT16_MAX || s < INT16_MIN)
      throw std::overflow_error("MultiPoly: exponent overflow");
    r[i] = static_cast<int16_t>(s);
  }
  return r;
}

void check_z_nonnegative(const Exponents& e) {
  for (int i = kVarZ0; i <= kVarZ3; ++i)
    if (e[i] < 0)
      throw std::invalid_argument("MultiPoly: negative exponent on a z-variable");
}

}  // namespace

MultiPoly MultiPoly::constant(bigint c) {
  if (c == 0) return MultiPoly();
  Exponents e{};
  return from_terms({{e, std::move(c)}});
}

MultiPoly MultiPoly::variable(int slot, int exp) {
  if (slot < 0 || slot >= kNumVars)
    throw std::invalid_argument("MultiPoly: bad variable slot");
  Exponents e{};
  e[slot] = static_cast<int16_t>(exp);
  if (slot <= kVarZ3) check_z_nonnegative(e);
  return from_terms({{e, bigint(1)}});
}

MultiPoly MultiPoly::monomial(const Exponents& e, bigint c) {
  check_z_nonnegative(e);
  if (c == 0) return MultiPoly();
  return from_terms({{e, std::move(c)}});
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  MultiPoly p;
  p.terms_ = std::move(terms);
  return p;
}

long MultiPoly::z_degree(bool include_z3) const {
  long deg = -1;
  for (const Term& t : terms_) {
    long d = t.first[kVarZ0] + t.first[kVarZ1] + t.first[kVarZ2];
    if (include_z3) d += t.first[kVarZ3];
    deg = std::max(deg, d);
  }
  return deg;
}

int MultiPoly::max_exponent(int slot) const {
  int m = 0;
  for (const Term& t : terms_) m = std::max(m, static_cast<int>(t.first[slot]));
  return m;
}

bool MultiPoly::depends_on(int slot) const {
  for (const Term& t : terms_)
    if (t.first[slot] != 0) return true;
  return false;
}

MultiPoly MultiPoly::substitute_zero(int slot) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.first[slot] < 0)
      throw std::invalid_argument("substitute_zero: negative power of the zeroed variable");
    if (t.first[slot] == 0) out.push_back(t);
  }
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::substitute_one(int slot) const {
  std::unordered_map<Exponents, bigint, ExponentsHash> acc;
  for (const Term& t : terms_) {
    Exponents e = t.first;
    e[slot] = 0;
    acc[e] += t.second;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) out.emplace_back(kv.first, std::move(kv.second));
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::reduce_eta(int modulus) const {
  if (modulus < 1) throw std::invalid_argument("reduce_eta: modulus must be >= 1");
  std::unordered_map<Exponents, bigint, ExponentsHash> acc;
  for (const Term& t : terms_) {
    Exponents e = t.first;
    int r = e[kVarEta] % modulus;
    if (r < 0) r += modulus;
    e[kVarEta] = static_cast<int16_t>(r);
    acc[e] += t.second;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) out.emplace_back(kv.first, std::move(kv.second));
  return from_terms(std::move(out));
}

std::complex<double> MultiPoly::eval(
    const std::array<std::complex<double>, kNumVars>& v) const {
  std::complex<double> acc(0.0, 0.0);
  for (const Term& t : terms_) {
    std::complex<double> m(static_cast<double>(t.second), 0.0);
    for (int i = 0; i < kNumVars; ++i) {
      int e = t.first[i];
      if (e == 0) continue;
      std::complex<double> p(1.0, 0.0);
      std::complex<double> base = v[i];
      int k = e;
      if (k < 0) {
        base = 1.0 / base;
        k = -k;
      }
      for (int j = 0; j < k; ++j) p *= base;
      m *= p;
    }
    acc += m;
  }
  return acc;
}

std::string MultiPoly::dump() const {
  std::ostringstream os;
  for (const Term& t : terms_) {
    if (t.first[kVarEta] != 0 || t.first[kVarNu] != 0)
      throw std::invalid_argument("dump: polynomial carries scratch symbols");
    os << t.second;
    for (int i = kVarZ0; i <= kVarB; ++i) os << ' ' << t.first[i];
    os << '\n';
  }
  return os.str();
}

MultiPoly poly_add(const MultiPoly& f, const MultiPoly& g) {
  std::vector<MultiPoly::Term> out;
  out.reserve(f.terms().size() + g.terms().size());
  auto it = f.terms().begin(), jt = g.terms().begin();
  const auto fe = f.terms().end(), ge = g.terms().end();
  while (it != fe && jt != ge) {
    if (it->first < jt->first) {
      out.push_back(*it++);
    } else if (jt->first < it->first) {
      out.push_back(*jt++);
    } else {
      bigint c = it->second + jt->second;
      if (c != 0) out.emplace_back(it->first, std::move(c));
      ++it;
      ++jt;
    }
  }
  out.insert(out.end(), it, fe);
  out.insert(out.end(), jt, ge);
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly poly_neg(const MultiPoly& f) {
  std::vector<MultiPoly::Term> out = f.terms();
  for (auto& t : out) t.second = -t.second;
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly poly_sub(const MultiPoly& f, const MultiPoly& g) {
  return poly_add(f, poly_neg(g));
}

MultiPoly poly_mul(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() || g.is_zero()) return MultiPoly();
  const MultiPoly& small = f.terms().size() <= g.terms().size() ? f : g;
  const MultiPoly& big = f.terms().size() <= g.terms().size() ? g : f;

  std::unordered_map<Exponents, bigint, ExponentsHash> acc;
  acc.reserve(big.terms().size() * 2);
  for (const auto& ts : small.terms()) {
    for (const auto& tb : big.terms()) {
      acc[add_exponents(ts.first, tb.first)] += ts.second * tb.second;
    }
  }
  std::vector<MultiPoly::Term> out;
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) out.emplace_back(kv.first, std::move(kv.second));
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly poly_pow(const MultiPoly& f, int k) {
  if (k < 0) throw std::invalid_argument("poly_pow: negative power");
  MultiPoly acc = MultiPoly::constant(1);
  MultiPoly base = f;
  int n = k;
  while (n > 0) {
    if (n & 1) acc = poly_mul(acc, base);
    n >>= 1;
    if (n > 0) base = poly_mul(base, base);
  }
  return acc;
}

MultiPoly poly_compose(const PolyMap& map, const MultiPoly& into) {
  if (map.comps.size() != 3)
    throw std::invalid_argument("poly_compose: map must have 3 affine components");

  // power caches per substituted variable
  std::array<std::vector<MultiPoly>, 3> pows;
  for (int v = 0; v < 3; ++v) pows[v].push_back(MultiPoly::constant(1));
  auto power_of = [&](int v, int e) -> const MultiPoly& {
    while (static_cast<int>(pows[v].size()) <= e)
      pows[v].push_back(poly_mul(pows[v].back(), map.comps[v]));
    return pows[v][e];
  };

  MultiPoly acc;
  for (const auto& t : into.terms()) {
    Exponents rest = t.first;
    rest[kVarZ0] = rest[kVarZ1] = rest[kVarZ2] = 0;
    MultiPoly m = MultiPoly::monomial(rest, t.second);
    for (int v = 0; v < 3; ++v) {
      int e = t.first[v];
      if (e < 0) throw std::invalid_argument("poly_compose: negative z exponent");
      if (e > 0) m = poly_mul(m, power_of(v, e));
    }
    acc = poly_add(acc, m);
  }
  return acc;
}

PolyMap map_compose(const PolyMap& outer, const PolyMap& inner) {
  PolyMap out;
  out.comps.reserve(outer.comps.size());
  for (const MultiPoly& c : outer.comps) out.comps.push_back(poly_compose(inner, c));
  return out;
}

PolyMap homogenize(const PolyMap& affine, int target_degree) {
  if (affine.comps.size() != 3)
    throw std::invalid_argument("homogenize: expected 3 affine components");
  PolyMap out;
  for (const MultiPoly& c : affine.comps) {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(c.terms().size());
    for (const auto& t : c.terms()) {
      long zdeg = t.first[kVarZ0] + t.first[kVarZ1] + t.first[kVarZ2];
      long pad = target_degree - zdeg;
      if (pad < 0)
        throw std::invalid_argument("homogenize: target degree below component degree");
      Exponents e = t.first;
      e[kVarZ3] = static_cast<int16_t>(pad);
      terms.emplace_back(e, t.second);
    }
    out.comps.push_back(MultiPoly::from_terms(std::move(terms)));
  }
  out.comps.push_back(MultiPoly::variable(kVarZ3, target_degree));
  return out;
}

PolyMap dehomogenize(const PolyMap& projective) {
  if (projective.comps.size() != 4)
    throw std::invalid_argument("dehomogenize: expected 4 projective components");
  PolyMap out;
  for (int i = 0; i < 3; ++i)
    out.comps.push_back(projective.comps[i].substitute_one(kVarZ3));
  return out;
}

}  // namespace skewdyn
