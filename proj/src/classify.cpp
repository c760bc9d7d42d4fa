#include "skewdyn/classify.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "skewdyn/parallel.hpp"
#include "skewdyn/series.hpp"

namespace skewdyn {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConvergesToFixedPoint: return "ConvergesToFixedPoint";
    case Verdict::FibonacciEscape: return "FibonacciEscape";
    case Verdict::MaximalEscape: return "MaximalEscape";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

constexpr int kFibWindow = 20;
constexpr double kFibRatioTol = 1e-8;
constexpr double kFibCauchyTol = 1e-10;
constexpr double kFibNonzeroFloor = 1e-8;

// P^(n) phi^(-n) along recorded orbit points, when in double range
std::vector<std::optional<complexd>> normalized_sequence(
    const std::vector<OrbitRecord>& records) {
  std::vector<std::optional<complexd>> s(records.size());
  ScaledComplex phi_neg = ScaledComplex::from_double(1.0);
  const ScaledComplex inv_phi = ScaledComplex::from_double(1.0 / kPhi);
  for (size_t n = 0; n < records.size(); ++n) {
    ScaledComplex v = sc_mul(records[n].point.z0, phi_neg);
    if (v.in_double_range()) s[n] = v.to_complex();
    phi_neg = sc_mul(phi_neg, inv_phi);
  }
  return s;
}

// Cauchy detection at the end of the recorded orbit
std::optional<complexd> cauchy_limit(const std::vector<OrbitRecord>& records) {
  auto s = normalized_sequence(records);
  int n = static_cast<int>(s.size());
  if (n < kFibWindow + 2) return std::nullopt;
  for (int k = n - kFibWindow - 1; k < n - 1; ++k) {
    if (!s[k] || !s[k + 1]) return std::nullopt;
    if (std::abs(*s[k + 1] - *s[k]) > kFibCauchyTol) return std::nullopt;
  }
  complexd lim = *s[n - 1];
  if (std::abs(lim) <= kFibNonzeroFloor) return std::nullopt;
  return lim;
}

bool ratio_locked(const std::vector<OrbitRecord>& records) {
  int n = static_cast<int>(records.size());
  if (n < kFibWindow + 1) return false;
  for (int k = n - kFibWindow; k < n; ++k) {
    if (!records[k].ratio) return false;
    if (std::abs(*records[k].ratio - complexd(kPhi, 0)) > kFibRatioTol) return false;
  }
  return true;
}

}  // namespace

std::optional<complexd> fibonacci_limit(const Params& params, const Point3& p,
                                        int budget) {
  OrbitResult orb = orbit(params, p, budget);
  if (orb.stop == OrbitStop::zero_detected || orb.stop == OrbitStop::escaped)
    return std::nullopt;
  return cauchy_limit(orb.records);
}

std::optional<int> contraction_step(const OrbitResult& orb, double eps_zero) {
  if (orb.records.empty()) return std::nullopt;
  // log-domain recursion noise_{n+1} = phi * noise_n + eps * norm_n; the
  // phi amplification overshoots for orbits that grow slower than phi, so
  // a fire additionally requires the norm to sit far below the start scale
  const double log_eps = std::log(2.2204460492503131e-16);
  const double log_phi = std::log(kPhi);
  LogMagnitude start = orb.records.front().point.log_norm();
  double small_log = std::log(1e-6) + std::max(0.0, start.finite ? start.value : 0.0);
  double log_noise = -std::numeric_limits<double>::infinity();
  for (const OrbitRecord& rec : orb.records) {
    LogMagnitude full = rec.point.log_norm();
    if (!full.finite) return rec.n;
    double floor_log = std::max(std::log(eps_zero), std::log(8.0) + log_noise);
    if (full.value <= std::min(floor_log, small_log)) return rec.n;
    double inject = log_eps + full.value;
    double hi = std::max(log_noise + log_phi, inject);
    log_noise = hi + std::log1p(std::exp(std::min(log_noise + log_phi, inject) - hi));
  }
  return std::nullopt;
}

Classification classify(const Params& params, const Point3& p, int budget) {
  if (budget < 1) throw std::invalid_argument("classify: budget must be >= 1");
  Classification out;
  out.evidence.budget_used = budget;

  OrbitResult orb = orbit(params, p, budget);
  out.evidence.n_decided = static_cast<int>(orb.records.size()) - 1;

  if (orb.stop == OrbitStop::zero_detected) {
    out.verdict = Verdict::ConvergesToFixedPoint;
    return out;
  }
  if (std::optional<int> dip = contraction_step(orb)) {
    out.verdict = Verdict::ConvergesToFixedPoint;
    out.evidence.n_decided = *dip;
    return out;
  }

  if (orb.stop == OrbitStop::completed && ratio_locked(orb.records)) {
    std::optional<complexd> lim1 = cauchy_limit(orb.records);
    if (lim1) {
      // doubled-budget stability before reporting
      std::optional<complexd> lim2 = fibonacci_limit(params, p, 2 * budget);
      if (lim2 && std::abs(*lim2 - *lim1) <= 1e-8 * std::max(1.0, std::abs(*lim1))) {
        out.verdict = Verdict::FibonacciEscape;
        out.evidence.fibonacci_limit = lim2;
        out.evidence.budget_used = 2 * budget;
        return out;
      }
    }
  }

  GreenEstimate g = green_plus(params, p, 1e-6);
  out.evidence.green = g;
  if (g.escaped) {
    out.verdict = Verdict::MaximalEscape;
    out.evidence.n_decided = g.n_used;
    return out;
  }

  out.verdict = Verdict::Undetermined;
  return out;
}

double default_omega_prime_epsilon(const Params& params) {
  if (!params.subcritical())
    throw std::invalid_argument(
        "default_omega_prime_epsilon: only defined below the critical modulus");
  double abs_alpha_d = std::pow(std::abs(params.alpha), params.d);
  double eps_max = std::pow(kPhi / abs_alpha_d, 1.0 / params.q) / kPhi - 1.0;
  return 0.9 * eps_max;
}

bool region_test(const Params& params, complexd p0, complexd p1, complexd p2,
                 const RegionSpec& spec) {
  double a0 = std::abs(p0), a1 = std::abs(p1), a2 = std::abs(p2);
  if (spec.region == RegionSpec::Region::Omega) {
    if (spec.M < 0) throw std::invalid_argument("region_test: M must be >= 0");
    double gamma = std::log(std::abs(params.alpha)) / std::log(kPhi);
    if (!(spec.M * (params.q - 1) + params.d * gamma > 0.0))
      throw std::invalid_argument("region_test: M(q-1) + d*gamma must be > 0");
    return a0 > a1 && a1 > 0.0 &&
           std::pow(a1, params.q - 1) * std::pow(a2, params.d) >
               2.0 + std::pow(kPhi, spec.M);
  }
  if (!(spec.epsilon > 0.0))
    throw std::invalid_argument("region_test: epsilon must be > 0");
  double eta = std::pow((1.0 + spec.epsilon) * kPhi, params.q) *
               std::pow(std::abs(params.alpha), params.d);
  if (!(eta < kPhi))
    throw std::invalid_argument("region_test: ((1+eps)phi)^q |alpha|^d must be < phi");
  return std::pow(a0 + a1, params.q - 1) * std::pow(a2, params.d) <
         kPhi * spec.epsilon;
}

int smallest_omega_exponent(const Params& params) {
  double gamma = std::log(std::abs(params.alpha)) / std::log(kPhi);
  for (int M = 0; M < 1000; ++M)
    if (M * (params.q - 1) + params.d * gamma > 0.0) return M;
  throw std::logic_error("smallest_omega_exponent: no admissible M found");
}

std::vector<PhaseSample> sample_omega(const Params& params, int count,
                                      unsigned long long seed, int M) {
  RegionSpec spec;
  spec.region = RegionSpec::Region::Omega;
  spec.M = M;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_complex = [&](double rlo, double rhi) {
    double r = rlo + (rhi - rlo) * unit(rng);
    double t = 2.0 * M_PI * unit(rng);
    return complexd(r * std::cos(t), r * std::sin(t));
  };

  std::vector<PhaseSample> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100000)
      throw std::runtime_error("sample_omega: rejection sampling stalled");
    PhaseSample s;
    s.p1 = draw_complex(1.6, 2.3);
    s.p0 = s.p1 * (1.2 + 0.8 * unit(rng)) *
           std::polar(1.0, 2.0 * M_PI * unit(rng));
    s.p2 = draw_complex(1.8, 3.5);
    if (region_test(params, s.p0, s.p1, s.p2, spec)) out.push_back(s);
  }
  return out;
}

PhaseTable phase_transition_probe(int q, int d, const std::vector<double>& moduli,
                                  const PhaseSampleSpec& spec) {
  if (moduli.empty())
    throw std::invalid_argument("phase_transition_probe: need at least one modulus");

  PhaseTable table;

  // sample inside the narrowest subcritical Omega' so the same grid is
  // meaningful for every modulus in the list
  double bound = 0.1 * kPhi;
  bool have_sub = false;
  for (double m : moduli) {
    Params trial(q, d, complexd(m * std::cos(spec.alpha_arg), m * std::sin(spec.alpha_arg)));
    if (trial.subcritical()) {
      double b = kPhi * default_omega_prime_epsilon(trial);
      bound = have_sub ? std::min(bound, b) : b;
      have_sub = true;
    }
  }
  bound *= 0.95;

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_complex = [&](double rlo, double rhi) {
    double r = rlo + (rhi - rlo) * unit(rng);
    double t = 2.0 * M_PI * unit(rng);
    return complexd(r * std::cos(t), r * std::sin(t));
  };

  while (static_cast<int>(table.samples.size()) < spec.count) {
    PhaseSample s;
    s.p0 = draw_complex(0.05, 0.35);
    s.p1 = draw_complex(0.05, 0.35);
    s.p2 = draw_complex(0.05, 0.8);
    double lhs = std::pow(std::abs(s.p0) + std::abs(s.p1), q - 1) *
                 std::pow(std::abs(s.p2), d);
    if (lhs < bound && std::abs(s.p2) > 0.02) table.samples.push_back(s);
  }

  for (double m : moduli) {
    Params params(q, d, complexd(m * std::cos(spec.alpha_arg), m * std::sin(spec.alpha_arg)));
    PhaseRow row;
    row.modulus = m;
    row.classifications.resize(table.samples.size());
    parallel_map(table.samples.size(), spec.threads, [&](size_t i) {
      const PhaseSample& s = table.samples[i];
      row.classifications[i] =
          classify(params, Point3::from_complex(s.p0, s.p1, s.p2), spec.budget);
    });
    for (const Classification& c : row.classifications)
      row.counts[static_cast<int>(c.verdict)]++;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace skewdyn
