#include "skewdyn/series.hpp"

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>

#include "skewdyn/classify.hpp"

namespace skewdyn {

namespace {

constexpr double kSeriesRelTol = 1e-16;
constexpr int kSeriesQuietRun = 5;
constexpr double kSeriesBlowup = 1e6;

double sc_abs_or_zero(const ScaledComplex& v) {
  LogMagnitude lm = sc_log_abs(v);
  if (!lm.finite) return 0.0;
  if (lm.value > 700.0) return std::numeric_limits<double>::infinity();
  if (lm.value < -700.0) return 0.0;
  return std::exp(lm.value);
}

}  // namespace

SeriesResult series_g(const Params& params, const Point3& p, int max_terms) {
  if (max_terms < 1) throw std::invalid_argument("series_g: max_terms must be >= 1");

  SeriesResult out;
  out.states.reserve(static_cast<size_t>(max_terms) + 1);

  const ScaledComplex phi = ScaledComplex::from_double(kPhi);
  const ScaledComplex inv_phi = ScaledComplex::from_double(1.0 / kPhi);
  const ScaledComplex alpha_d = sc_powi(params.alpha_sc(), params.d);
  const ScaledComplex z2_d = sc_powi(p.z2, params.d);

  ScaledComplex g = sc_add(sc_mul(phi, p.z0), p.z1);
  ScaledComplex phi_neg = ScaledComplex::from_double(1.0);  // phi^(-n)
  ScaledComplex alpha_nd = ScaledComplex::from_double(1.0); // alpha^(nd)

  Point3 cur = p;
  int quiet = 0;
  double prev_contrib = -1.0;
  double ratio_hat = -1.0;

  for (int n = 0; n <= max_terms; ++n) {
    ScaledComplex term = sc_mul(sc_mul(sc_powi(cur.z0, params.q), phi_neg), alpha_nd);
    ScaledComplex contrib = sc_mul(z2_d, term);
    g = sc_add(g, contrib);

    SeriesState st;
    st.n = n;
    st.g_n = g.in_double_range() ? g.to_complex() : complexd(0, 0);
    st.term_n = term.in_double_range() ? term.to_complex() : complexd(0, 0);

    double ac = sc_abs_or_zero(contrib);
    if (prev_contrib > 0.0 && ac > 0.0) {
      double r = ac / prev_contrib;
      ratio_hat = std::max(r, ratio_hat);
      if (ratio_hat < 1.0 && ratio_hat > 0.0)
        st.tail_bound = ac * ratio_hat / (1.0 - ratio_hat);
    }
    prev_contrib = ac;
    out.states.push_back(st);

    double ag = sc_abs_or_zero(g);
    if (ac > kSeriesBlowup) {
      out.status = SeriesStatus::diverged;
      out.value = st.g_n;
      return out;
    }
    if (ac <= kSeriesRelTol * ag) {
      if (++quiet >= kSeriesQuietRun) {
        out.status = SeriesStatus::converged;
        out.value = st.g_n;
        return out;
      }
    } else {
      quiet = 0;
    }

    cur = apply_psi(params, cur);
    phi_neg = sc_mul(phi_neg, inv_phi);
    alpha_nd = sc_mul(alpha_nd, alpha_d);
  }
  out.status = SeriesStatus::unknown;
  out.value = out.states.back().g_n;
  return out;
}

LemmaReport check_lemma_identity(const Params& params, const Point3& p, int n) {
  if (n < 0) throw std::invalid_argument("check_lemma_identity: n must be >= 0");

  const ScaledComplex phi = ScaledComplex::from_double(kPhi);
  const ScaledComplex inv_phi = ScaledComplex::from_double(1.0 / kPhi);
  const ScaledComplex alpha_d = sc_powi(params.alpha_sc(), params.d);
  const ScaledComplex z2_d = sc_powi(p.z2, params.d);

  ScaledComplex sum;  // sum_{j<=n} (P^(j))^q phi^(-j) alpha^(jd)
  ScaledComplex phi_neg = ScaledComplex::from_double(1.0);
  ScaledComplex alpha_nd = ScaledComplex::from_double(1.0);

  Point3 cur = p;
  for (int j = 0; j <= n; ++j) {
    sum = sc_add(sum, sc_mul(sc_mul(sc_powi(cur.z0, params.q), phi_neg), alpha_nd));
    cur = apply_psi(params, cur);
    phi_neg = sc_mul(phi_neg, inv_phi);
    alpha_nd = sc_mul(alpha_nd, alpha_d);
  }
  // cur now holds (P^(n+1), P^(n), .)
  ScaledComplex lhs = sc_add(cur.z0, sc_mul(inv_phi, cur.z1));
  ScaledComplex head = sc_add(sc_mul(phi, p.z0), p.z1);
  ScaledComplex rhs = sc_add(head, sc_mul(z2_d, sum));
  if (n > 0) rhs = sc_mul(rhs, sc_powi(phi, n));

  LemmaReport rep;
  rep.lhs_log = sc_log_abs(lhs);
  rep.rhs_log = sc_log_abs(rhs);
  ScaledComplex diff = sc_sub(lhs, rhs);
  LogMagnitude ld = sc_log_abs(diff);
  LogMagnitude lm = lm_max(rep.lhs_log, rep.rhs_log);
  if (!ld.finite) {
    rep.rel_diff = 0.0;
  } else if (!lm.finite) {
    rep.rel_diff = std::numeric_limits<double>::infinity();
  } else {
    rep.rel_diff = std::exp(ld.value - lm.value);
  }
  rep.pass = rep.rel_diff <= 1e-8;
  return rep;
}

namespace {

// least-squares slope of log(|r_j| phi^j) against j over the series tail;
// r_j are the suffix sums of the alpha-weighted terms
std::optional<double> tail_decay_slope(const std::vector<SeriesState>& states,
                                       bool* all_zero) {
  *all_zero = false;
  int n_states = static_cast<int>(states.size());
  if (n_states < 4) return std::nullopt;

  std::vector<complexd> suffix(n_states, complexd(0, 0));
  complexd acc(0, 0);
  for (int j = n_states - 1; j >= 0; --j) {
    acc += states[j].term_n;
    suffix[j] = acc;  // r_{j-1} contribution; r_j = sum_{k >= j+1} term_k
  }

  // r_j for j in [0, n_states-2]
  std::vector<double> xs, ys;
  const int window = 12;
  int hi = n_states - 2;
  int lo = std::max(0, hi - window + 1);
  double phi_j = std::pow(kPhi, lo + 1);
  for (int j = lo; j <= hi; ++j) {
    double r = std::abs(suffix[j + 1]);
    double v = r * phi_j;
    phi_j *= kPhi;
    if (v > 1e-290) {
      xs.push_back(static_cast<double>(j));
      ys.push_back(std::log(v));
    }
  }
  if (xs.empty()) {
    *all_zero = true;
    return std::nullopt;
  }
  if (xs.size() < 4) return std::nullopt;

  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

StableReport stable_criterion(const Params& params, const Point3& p, int max_terms) {
  if (std::abs(params.alpha) >= 1.0)
    throw std::invalid_argument("stable_criterion: requires 0 < |alpha| < 1");

  StableReport rep;
  SeriesResult series = series_g(params, p, max_terms);
  if (series.status != SeriesStatus::diverged) rep.evidence.g_value = series.value;

  OrbitResult orb = orbit(params, p, 2000);
  rep.evidence.orbit_stop = orb.stop;

  // scale for the g ~ 0 test: the magnitudes actually summed
  double scale = std::abs(kPhi * p.z0.to_complex()) + std::abs(p.z1.to_complex());
  for (const SeriesState& st : series.states) {
    double t = std::abs(st.term_n);
    if (std::isfinite(t)) scale += t;
  }
  double tol_g = 1e-8 * std::max(1.0, scale);

  bool all_zero_tail = false;
  std::optional<double> slope = tail_decay_slope(series.states, &all_zero_tail);
  rep.evidence.decay_slope = slope;
  double slope_threshold = 0.5 * params.d * std::log(std::abs(params.alpha));
  bool decay_ok = all_zero_tail || (slope.has_value() && *slope <= slope_threshold);

  bool g_zero = series.status == SeriesStatus::converged && std::abs(series.value) <= tol_g;
  bool contracts = orb.stop == OrbitStop::zero_detected || contraction_step(orb).has_value();

  if (contracts && g_zero && decay_ok) {
    rep.verdict = StableVerdict::in_Ws;
    return rep;
  }
  if (orb.stop == OrbitStop::escaped) {
    rep.verdict = StableVerdict::not_in_Ws;
    return rep;
  }
  if (series.status == SeriesStatus::diverged) {
    rep.verdict = StableVerdict::not_in_Ws;
    return rep;
  }
  if (series.status == SeriesStatus::converged && std::abs(series.value) > 10.0 * tol_g) {
    // cross-validate: a definite nonzero g should come with a Fibonacci-speed
    // escape or a visible green value
    rep.evidence.fibonacci_limit = fibonacci_limit(params, p, 2000);
    rep.verdict = StableVerdict::not_in_Ws;
    return rep;
  }
  rep.verdict = StableVerdict::undetermined;
  return rep;
}

int default_stable_truncation(const Params& params) {
  // smallest N with (|alpha|^d / phi)^N < 1e-30, from the tail estimate
  // |r_n| = O(phi^(-n) |alpha|^(nd))
  double rate = params.d * std::log(1.0 / std::abs(params.alpha)) + std::log(kPhi);
  return static_cast<int>(std::ceil(30.0 * std::log(10.0) / rate)) + 1;
}

namespace {

// Newton and its validation orbit run on 113-bit floats: the contraction
// certificate ||Psi^60(p)|| < 1e-6 amplifies root error by phi^60 ~ 3e12,
// which is unreachable from a double-rounded root (and double rounding
// noise inside the orbit itself re-escapes at Fibonacci speed).
using quad = boost::multiprecision::cpp_bin_float_quad;

struct qcomplex {
  quad re, im;
  qcomplex() : re(0), im(0) {}
  qcomplex(double r, double i) : re(r), im(i) {}
  qcomplex(quad r, quad i) : re(std::move(r)), im(std::move(i)) {}
  explicit qcomplex(complexd c) : re(c.real()), im(c.imag()) {}

  qcomplex operator+(const qcomplex& o) const { return {re + o.re, im + o.im}; }
  qcomplex operator-(const qcomplex& o) const { return {re - o.re, im - o.im}; }
  qcomplex operator*(const qcomplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  qcomplex operator/(const qcomplex& o) const {
    quad den = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
};

quad qabs(const qcomplex& z) { return sqrt(z.re * z.re + z.im * z.im); }

bool qfinite(const qcomplex& z) {
  return boost::math::isfinite(z.re) && boost::math::isfinite(z.im);
}

}  // namespace

StableRootResult stable_root(const Params& params, complexd p1, complexd p2,
                             int truncation) {
  if (!(std::abs(params.alpha) < params.critical_modulus))
    throw std::invalid_argument("stable_root: requires |alpha| below the critical modulus");
  int N = truncation > 0 ? truncation : default_stable_truncation(params);

  const quad phi = (1 + sqrt(quad(5))) / 2;
  qcomplex alpha_d(1.0, 0.0);
  for (int i = 0; i < params.d; ++i) alpha_d = alpha_d * qcomplex(params.alpha);
  qcomplex p2q(p2);
  qcomplex p2_d(1.0, 0.0);
  for (int i = 0; i < params.d; ++i) p2_d = p2_d * p2q;
  qcomplex p1q(p1);

  StableRootResult out;
  qcomplex p0 = qcomplex(-p1q.re / phi, -p1q.im / phi);

  for (int it = 0; it < 100; ++it) {
    // evaluate g_N and dg_N/dp0 along the truncated orbit
    qcomplex P = p0, Pm = p1q;             // P^(j), P^(j-1)
    qcomplex D(1.0, 0.0), Dm(0.0, 0.0);    // their p0-derivatives
    qcomplex u = p2_d;                     // (alpha^j p2)^d
    qcomplex w(1.0, 0.0);                  // phi^(-j) alpha^(jd)
    qcomplex sum(0.0, 0.0), dsum(0.0, 0.0);
    const qcomplex qc(static_cast<double>(params.q), 0.0);
    bool bad = false;
    for (int j = 0; j <= N; ++j) {
      qcomplex Pq1(1.0, 0.0);  // P^(q-1)
      for (int k = 0; k < params.q - 1; ++k) Pq1 = Pq1 * P;
      qcomplex Pq = Pq1 * P;
      sum = sum + Pq * w;
      dsum = dsum + qc * Pq1 * D * w;
      qcomplex Pn = P + Pm + Pq * u;
      qcomplex Dn = D + Dm + qc * Pq1 * u * D;
      Pm = P; P = Pn;
      Dm = D; D = Dn;
      u = u * alpha_d;
      w = w * alpha_d;
      w = {w.re / phi, w.im / phi};
      if (!qfinite(P)) {
        bad = true;
        break;
      }
    }
    if (bad) {
      out.status = StableRootStatus::newton_no_convergence;
      out.p0 = {static_cast<double>(p0.re), static_cast<double>(p0.im)};
      out.newton_iters = it;
      return out;
    }
    qcomplex F = qcomplex(phi * p0.re, phi * p0.im) + p1q + p2_d * sum;
    qcomplex Fp = qcomplex(phi, quad(0)) + p2_d * dsum;
    qcomplex step = F / Fp;
    p0 = p0 - step;
    out.newton_iters = it + 1;
    if (!qfinite(p0)) {
      out.status = StableRootStatus::newton_no_convergence;
      out.p0 = {0.0, 0.0};
      return out;
    }
    if (qabs(step) <= 1e-12) {
      out.p0 = {static_cast<double>(p0.re), static_cast<double>(p0.im)};
      // validate by contraction of the orbit from the converged root
      qcomplex z0 = p0, z1 = p1q, z2 = p2q;
      qcomplex alpha(params.alpha);
      for (int n = 0; n < 60; ++n) {
        qcomplex zq(1.0, 0.0);
        for (int k = 0; k < params.q; ++k) zq = zq * z0;
        qcomplex zd(1.0, 0.0);
        for (int k = 0; k < params.d; ++k) zd = zd * z2;
        qcomplex nz0 = z0 + z1 + zq * zd;
        z1 = z0;
        z0 = nz0;
        z2 = alpha * z2;
      }
      quad norm = qabs(z0);
      if (qabs(z1) > norm) norm = qabs(z1);
      if (qabs(z2) > norm) norm = qabs(z2);
      out.validation_norm = static_cast<double>(norm);
      out.status = out.validation_norm < 1e-6 ? StableRootStatus::ok
                                              : StableRootStatus::validation_failed;
      return out;
    }
  }
  out.status = StableRootStatus::newton_no_convergence;
  out.p0 = {static_cast<double>(p0.re), static_cast<double>(p0.im)};
  return out;
}

}  // namespace skewdyn
