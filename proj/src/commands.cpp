#include "skewdyn/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "skewdyn/classify.hpp"
#include "skewdyn/parallel.hpp"
#include "skewdyn/series.hpp"
#include "skewdyn/symbolic_checks.hpp"
#include "skewdyn/text_io.hpp"

namespace skewdyn {

namespace {

Params params_of(const RunConfig& cfg) {
  return Params(cfg.q, cfg.d, complexd(cfg.alpha_re, cfg.alpha_im));
}

std::string csv_complex(const std::optional<complexd>& v) {
  if (!v) return ",";
  return fmt_double(v->real()) + "," + fmt_double(v->imag());
}

void append_green_json(JsonWriter& w, const GreenEstimate& g) {
  w.key_double("value", g.value)
      .key_double("error_bound", g.error_bound)
      .key_int("n_used", g.n_used)
      .key_bool("escaped", g.escaped)
      .key_bool("stopped_early", g.stopped_early);
}

void append_params_json(JsonWriter& w, const RunConfig& cfg) {
  w.begin_object("params")
      .key_int("q", cfg.q)
      .key_int("d", cfg.d);
  w.begin_array("alpha").array_double(cfg.alpha_re).array_double(cfg.alpha_im).end_array();
  w.end_object();
}

void append_point_json(JsonWriter& w, const RunConfig& cfg) {
  w.begin_array("point");
  w.begin_object().key_double("re", cfg.p0.real()).key_double("im", cfg.p0.imag()).end_object();
  w.begin_object().key_double("re", cfg.p1.real()).key_double("im", cfg.p1.imag()).end_object();
  w.begin_object().key_double("re", cfg.p2.real()).key_double("im", cfg.p2.imag()).end_object();
  w.end_array();
}

}  // namespace

std::string render_orbit_csv(const RunConfig& cfg) {
  Params params = params_of(cfg);
  Point3 start = Point3::from_complex(cfg.p0, cfg.p1, cfg.p2);
  // deliver the requested rows even for fast escapes; only the exponent
  // guard and the zero detector cut the listing short
  StopPolicy policy;
  policy.log_escape = StopPolicy::hard_log_cap;
  OrbitResult orb = orbit(params, start, cfg.steps, policy);

  std::string out = "n,p_re,p_im,log_mag,ratio_re,ratio_im,g_re,g_im\n";
  for (const OrbitRecord& r : orb.records) {
    complexd p = r.point.z0.to_complex();
    out += std::to_string(r.n) + "," + fmt_double(p.real()) + "," + fmt_double(p.imag());
    out += ",";
    out += r.log_mag.finite ? fmt_double(r.log_mag.value) : std::string("-inf");
    out += "," + csv_complex(r.ratio);
    out += "," + csv_complex(r.g_partial);
    out += "\n";
  }
  return out;
}

std::string render_classify_json(const RunConfig& cfg) {
  Params params = params_of(cfg);
  Classification c =
      classify(params, Point3::from_complex(cfg.p0, cfg.p1, cfg.p2), cfg.max_steps);

  // attach the series value when it is finite, as classification evidence
  SeriesResult sr = series_g(params, Point3::from_complex(cfg.p0, cfg.p1, cfg.p2),
                             cfg.max_terms);
  if (sr.status == SeriesStatus::converged) c.evidence.g_value = sr.value;

  JsonWriter w;
  w.begin_object();
  w.key_string("verdict", verdict_name(c.verdict));
  w.begin_object("evidence");
  w.key_int("n_decided", c.evidence.n_decided);
  w.key_int("budget_used", c.evidence.budget_used);
  if (c.evidence.fibonacci_limit) {
    w.begin_array("fibonacci_limit")
        .array_double(c.evidence.fibonacci_limit->real())
        .array_double(c.evidence.fibonacci_limit->imag())
        .end_array();
  } else {
    w.key_null("fibonacci_limit");
  }
  if (c.evidence.green) {
    w.begin_object("green");
    append_green_json(w, *c.evidence.green);
    w.end_object();
  } else {
    w.key_null("green");
  }
  if (c.evidence.g_value) {
    w.begin_array("g_value")
        .array_double(c.evidence.g_value->real())
        .array_double(c.evidence.g_value->imag())
        .end_array();
  } else {
    w.key_null("g_value");
  }
  w.end_object();
  append_params_json(w, cfg);
  append_point_json(w, cfg);
  w.end_object();
  return w.str() + "\n";
}

std::string render_green_json(const RunConfig& cfg) {
  Params params = params_of(cfg);
  GreenEstimate g;
  if (cfg.green_variant == "plus") {
    g = green_plus(params, Point3::from_complex(cfg.p0, cfg.p1, cfg.p2), cfg.target_error);
  } else if (cfg.green_variant == "henon") {
    g = green_plus_henon(params, Point2::from_complex(cfg.p0, cfg.p1), cfg.target_error);
  } else {
    g = green_minus(params, Point3::from_complex(cfg.p0, cfg.p1, cfg.p2), cfg.target_error);
  }
  JsonWriter w;
  w.begin_object();
  w.key_string("variant", cfg.green_variant);
  append_green_json(w, g);
  append_params_json(w, cfg);
  append_point_json(w, cfg);
  w.end_object();
  return w.str() + "\n";
}

namespace {

std::string join_longs(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s;
}

void check_line(std::string& report, bool& ok, bool pass, const std::string& what) {
  report += (pass ? "[PASS] " : "[FAIL] ") + what + "\n";
  ok = ok && pass;
}

}  // namespace

VerifyOutcome render_verify(const RunConfig& cfg) {
  Params params = params_of(cfg);
  VerifyOutcome out;
  out.ok = true;

  if (cfg.suite == "degrees") {
    DegreeReport psi = verify_degree_formula(cfg.q, cfg.d, cfg.n_max);
    check_line(out.report, out.ok, psi.pass,
               "degree growth of the forward/backward iterates: got " +
                   join_longs(psi.forward_degrees) + " / " + join_longs(psi.inverse_degrees) +
                   ", expected " + join_longs(psi.expected));
    DegreeReport phi = verify_phi_degrees(cfg.q, cfg.d, cfg.n_max);
    check_line(out.report, out.ok, phi.pass,
               "conjugated-map degrees q^n: got " + join_longs(phi.forward_degrees) +
                   " / " + join_longs(phi.inverse_degrees));
  } else if (cfg.suite == "conjugacy") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::uniform_real_distribution<double> rad(0.3, 2.0);
    // right-half-plane z2 keeps the principal branch coherent for fractional l
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    int worst_trial = -1;
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      complexd z0(box(rng), box(rng)), z1(box(rng), box(rng));
      complexd z2 = std::polar(rad(rng), ang(rng));
      Point3 p = Point3::from_complex(z0, z1, z2);
      Point3 lhs = theta(params, apply_psi(params, p));
      Point3 rhs = apply_phi(params, theta(params, p));
      for (auto [l, r] : {std::pair{lhs.z0, rhs.z0}, {lhs.z1, rhs.z1}, {lhs.z2, rhs.z2}}) {
        ScaledComplex diff = sc_sub(l, r);
        LogMagnitude ld = sc_log_abs(diff), lm = lm_max(sc_log_abs(l), sc_log_abs(r));
        double rel = (!ld.finite) ? 0.0 : (!lm.finite ? 1e300 : std::exp(ld.value - lm.value));
        if (rel > worst) {
          worst = rel;
          worst_trial = t;
        }
      }
    }
    check_line(out.report, out.ok, worst <= 1e-10,
               "semi-conjugacy theta o psi = Phi o theta on " + std::to_string(cfg.trials) +
                   " random points, worst relative difference " + fmt_double(worst) +
                   " (trial " + std::to_string(worst_trial) + ")");
  } else if (cfg.suite == "fibration") {
    FibrationReport rep = check_fibration_invariance(cfg.q, cfg.d);
    check_line(out.report, out.ok, rep.psi_ok,
               "forward map preserves {z2 = cst}: third component is linear in z2 alone");
    check_line(out.report, out.ok, rep.phi_ok,
               "conjugated map preserves {z2 = cst}: third component is linear in z2 alone");
    bool negative_control = psi_affine(cfg.q, cfg.d).comps[0].depends_on(kVarZ1);
    check_line(out.report, out.ok, negative_control,
               "negative control: first component is not a function of z0 alone");
  } else if (cfg.suite == "centralizer") {
    for (int k = 0; k < cfg.q - 1; ++k) {
      bool pass = check_centralizer_family(cfg.q, cfg.d, k);
      check_line(out.report, out.ok, pass,
                 "scaling by the (q-1)-th root of unity with exponent " + std::to_string(k) +
                     " commutes with the conjugated map");
    }
    bool neg = !check_centralizer_integer(cfg.q, cfg.d, 2);
    check_line(out.report, out.ok, neg,
               "negative control: scaling by 2 does not commute");
  } else if (cfg.suite == "lemma-identity") {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      Point3 p = Point3::from_complex({box(rng), box(rng)}, {box(rng), box(rng)},
                                      {box(rng), box(rng)});
      int n = 1 + static_cast<int>(rng() % 15);
      LemmaReport rep = check_lemma_identity(params, p, n);
      worst = std::max(worst, rep.rel_diff);
    }
    check_line(out.report, out.ok, worst <= 1e-8,
               "recurrence vs weighted-sum identity on " + std::to_string(cfg.trials) +
                   " random points, worst relative difference " + fmt_double(worst));
  } else if (cfg.suite == "green-equations") {
    auto samples = sample_omega(params, cfg.trials, cfg.seed, smallest_omega_exponent(params));
    int fe_fail = 0, sc_fail = 0;
    double max_bound = 0.0;
    int max_n = 0;
    for (const PhaseSample& s : samples) {
      Point3 p = Point3::from_complex(s.p0, s.p1, s.p2);
      GreenCheckReport fe = check_functional_equation(params, p, cfg.target_error);
      GreenCheckReport sc = check_semiconjugacy(params, p, cfg.target_error);
      if (!fe.pass) ++fe_fail;
      if (!sc.pass) ++sc_fail;
      max_bound = std::max({max_bound, fe.first.error_bound, fe.second.error_bound,
                            sc.second.error_bound});
      max_n = std::max({max_n, fe.first.n_used, fe.second.n_used, sc.second.n_used});
    }
    check_line(out.report, out.ok, fe_fail == 0,
               "G(psi p) = q G(p) within summed bounds on " +
                   std::to_string(samples.size()) + " escape-region samples (" +
                   std::to_string(fe_fail) + " failures)");
    check_line(out.report, out.ok, sc_fail == 0,
               "G agrees with the Henon-factor value through h (" +
                   std::to_string(sc_fail) + " failures)");
    check_line(out.report, out.ok, max_bound <= 1e-6 && max_n <= 30,
               "reported bounds <= 1e-6 with n_used <= 30 (worst bound " +
                   fmt_double(max_bound) + ", worst n " + std::to_string(max_n) + ")");
  }
  return out;
}

SweepOutcome render_sweep(const RunConfig& cfg) {
  PhaseSampleSpec spec;
  spec.count = cfg.samples;
  spec.seed = cfg.seed;
  spec.budget = cfg.max_steps;
  spec.threads = cfg.threads;
  PhaseTable table = phase_transition_probe(cfg.q, cfg.d, cfg.moduli, spec);

  SweepOutcome out;
  out.csv =
      "alpha_modulus,p0_re,p0_im,p1_re,p1_im,p2_re,p2_im,verdict,n_decided,"
      "limit_re,limit_im,green_value,green_error_bound\n";
  for (const PhaseRow& row : table.rows) {
    for (size_t i = 0; i < table.samples.size(); ++i) {
      const PhaseSample& s = table.samples[i];
      const Classification& c = row.classifications[i];
      out.csv += fmt_double(row.modulus);
      out.csv += "," + fmt_double(s.p0.real()) + "," + fmt_double(s.p0.imag());
      out.csv += "," + fmt_double(s.p1.real()) + "," + fmt_double(s.p1.imag());
      out.csv += "," + fmt_double(s.p2.real()) + "," + fmt_double(s.p2.imag());
      out.csv += std::string(",") + verdict_name(c.verdict);
      out.csv += "," + std::to_string(c.evidence.n_decided);
      out.csv += "," + csv_complex(c.evidence.fibonacci_limit);
      if (c.evidence.green) {
        out.csv += "," + fmt_double(c.evidence.green->value) + "," +
                   fmt_double(c.evidence.green->error_bound);
      } else {
        out.csv += ",,";
      }
      out.csv += "\n";
    }
  }

  std::ostringstream sum;
  sum << "alpha_modulus";
  for (int v = 0; v < 4; ++v) sum << "," << verdict_name(static_cast<Verdict>(v));
  sum << "\n";
  for (const PhaseRow& row : table.rows) {
    sum << fmt_double(row.modulus);
    for (int v = 0; v < 4; ++v) sum << "," << row.counts[v];
    sum << "\n";
  }
  out.summary = sum.str();
  return out;
}

RasterOutcome render_raster(const RunConfig& cfg) {
  Params params = params_of(cfg);
  const RasterSpec& r = cfg.raster;
  const size_t n_pix = static_cast<size_t>(r.nx) * static_cast<size_t>(r.ny);

  // pixel centers on a closed grid: x runs left to right, y top to bottom
  auto point_at = [&](int i, int j) {
    double x = r.center_x - r.width / 2.0 + r.width * i / (r.nx - 1);
    double y = r.center_y + r.height / 2.0 - r.height * j / (r.ny - 1);
    complexd c[3] = {r.p0, r.p1, r.p2};
    auto& cx = c[r.axis_x_coord];
    cx = r.axis_x_imag ? complexd(cx.real(), x) : complexd(x, cx.imag());
    auto& cy = c[r.axis_y_coord];
    cy = r.axis_y_imag ? complexd(cy.real(), y) : complexd(y, cy.imag());
    return Point3::from_complex(c[0], c[1], c[2]);
  };

  std::vector<uint16_t> pixels(n_pix, 0);
  RasterOutcome out;
  JsonWriter w;
  w.begin_object();
  w.key_string("type", "raster").key_string("channel", r.channel);
  w.key_int("nx", r.nx).key_int("ny", r.ny);
  w.key_double("center_x", r.center_x).key_double("center_y", r.center_y);
  w.key_double("width", r.width).key_double("height", r.height);

  if (r.channel == "classification") {
    static constexpr uint16_t levels[4] = {0, 21845, 43690, 65535};
    std::vector<uint8_t> verdicts(n_pix, 3);
    parallel_map(n_pix, cfg.threads, [&](size_t k) {
      int i = static_cast<int>(k) % r.nx, j = static_cast<int>(k) / r.nx;
      Classification c = classify(params, point_at(i, j), cfg.max_steps);
      verdicts[k] = static_cast<uint8_t>(c.verdict);
    });
    for (size_t k = 0; k < n_pix; ++k) pixels[k] = levels[verdicts[k]];
    w.begin_object("levels");
    for (int v = 0; v < 4; ++v)
      w.key_int(verdict_name(static_cast<Verdict>(v)), levels[v]);
    w.end_object();
  } else {
    std::vector<double> values(n_pix, 0.0);
    std::vector<uint8_t> finite(n_pix, 0);
    if (r.channel == "green") {
      parallel_map(n_pix, cfg.threads, [&](size_t k) {
        int i = static_cast<int>(k) % r.nx, j = static_cast<int>(k) / r.nx;
        GreenEstimate g = green_plus(params, point_at(i, j), cfg.target_error);
        values[k] = g.value;
        finite[k] = 1;
      });
    } else {
      parallel_map(n_pix, cfg.threads, [&](size_t k) {
        int i = static_cast<int>(k) % r.nx, j = static_cast<int>(k) / r.nx;
        SeriesResult sr = series_g(params, point_at(i, j), cfg.max_terms);
        if (sr.status == SeriesStatus::diverged) {
          finite[k] = 0;  // pinned at full white
        } else {
          values[k] = std::abs(sr.value);
          finite[k] = 1;
        }
      });
    }
    double vmin = 0.0, vmax = 0.0;
    bool any = false;
    for (size_t k = 0; k < n_pix; ++k) {
      if (!finite[k]) continue;
      if (!any || values[k] < vmin) vmin = any ? std::min(vmin, values[k]) : values[k];
      vmax = any ? std::max(vmax, values[k]) : values[k];
      any = true;
    }
    for (size_t k = 0; k < n_pix; ++k) {
      if (!finite[k]) {
        pixels[k] = 65535;
      } else if (vmax > vmin) {
        pixels[k] =
            static_cast<uint16_t>(std::lround((values[k] - vmin) / (vmax - vmin) * 65535.0));
      } else {
        pixels[k] = 0;
      }
    }
    w.key_double("value_min", any ? vmin : 0.0).key_double("value_max", any ? vmax : 0.0);
    w.key_bool("diverged_pinned_white", r.channel == "g-magnitude");
  }

  append_params_json(w, cfg);
  w.end_object();
  out.sidecar_json = w.str() + "\n";
  out.pgm = encode_pgm16(r.nx, r.ny, pixels);
  return out;
}

int run_command(RunConfig cfg) {
  if (const char* env = std::getenv("SKEWDYN_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) cfg.threads = t;
  }
  if (auto e = validate_config(cfg)) {
    std::cerr << "config error: " << e->message << "\n";
    return kExitConfigError;
  }
  try {
    if (cfg.command == "orbit") {
      std::string csv = render_orbit_csv(cfg);
      if (cfg.out_path.empty())
        std::cout << csv;
      else
        write_file(cfg.out_path, csv);
      return kExitOk;
    }
    if (cfg.command == "classify") {
      std::string json = render_classify_json(cfg);
      if (cfg.out_path.empty())
        std::cout << json;
      else
        write_file(cfg.out_path, json);
      return kExitOk;
    }
    if (cfg.command == "green") {
      std::string json = render_green_json(cfg);
      if (cfg.out_path.empty())
        std::cout << json;
      else
        write_file(cfg.out_path, json);
      return kExitOk;
    }
    if (cfg.command == "verify") {
      VerifyOutcome v = render_verify(cfg);
      if (cfg.out_path.empty())
        std::cout << v.report;
      else
        write_file(cfg.out_path, v.report);
      return v.ok ? kExitOk : kExitVerifyFailed;
    }
    if (cfg.command == "sweep") {
      SweepOutcome s = render_sweep(cfg);
      if (cfg.out_path.empty())
        std::cout << s.csv;
      else
        write_file(cfg.out_path, s.csv);
      std::cerr << s.summary;
      return kExitOk;
    }
    if (cfg.command == "raster") {
      RasterOutcome r = render_raster(cfg);
      write_file(cfg.out_path, r.pgm);
      std::string sidecar =
          cfg.sidecar_path.empty() ? cfg.out_path + ".json" : cfg.sidecar_path;
      write_file(sidecar, r.sidecar_json);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  std::cerr << "config error: unknown command " << cfg.command << "\n";
  return kExitConfigError;
}

}  // namespace skewdyn
