#include "skewdyn/run_config.hpp"

#include <cmath>
#include <json.hpp>

namespace skewdyn {

namespace {

using nlohmann::json;

std::optional<ConfigError> err(const std::string& m) { return ConfigError{m}; }

bool read_complex(const json& j, std::complex<double>& out, std::string& msg) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    msg = "complex values are [re, im] pairs";
    return false;
  }
  out = {j[0].get<double>(), j[1].get<double>()};
  return true;
}

}  // namespace

std::optional<ConfigError> load_config_json(const std::string& json_text, RunConfig& cfg) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) return err("config is not valid JSON");
  if (!doc.is_object()) return err("config root must be an object");

  std::string msg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    try {
      if (k == "params") {
        if (!v.is_object()) return err("params must be an object");
        for (auto p = v.begin(); p != v.end(); ++p) {
          if (p.key() == "q") cfg.q = p.value().get<int>();
          else if (p.key() == "d") cfg.d = p.value().get<int>();
          else if (p.key() == "alpha") {
            std::complex<double> a;
            if (!read_complex(p.value(), a, msg)) return err("params.alpha: " + msg);
            cfg.alpha_re = a.real();
            cfg.alpha_im = a.imag();
          } else return err("unknown key params." + p.key());
        }
      } else if (k == "threads") cfg.threads = v.get<int>();
      else if (k == "seed") cfg.seed = v.get<unsigned long long>();
      else if (k == "budgets") {
        if (!v.is_object()) return err("budgets must be an object");
        for (auto p = v.begin(); p != v.end(); ++p) {
          if (p.key() == "max_steps") cfg.max_steps = p.value().get<int>();
          else if (p.key() == "max_terms") cfg.max_terms = p.value().get<int>();
          else if (p.key() == "target_error") cfg.target_error = p.value().get<double>();
          else return err("unknown key budgets." + p.key());
        }
      } else if (k == "out") cfg.out_path = v.get<std::string>();
      else if (k == "sidecar") cfg.sidecar_path = v.get<std::string>();
      else if (k == "point") {
        if (!v.is_array() || v.size() != 3) return err("point must be [[re,im],[re,im],[re,im]]");
        if (!read_complex(v[0], cfg.p0, msg)) return err("point[0]: " + msg);
        if (!read_complex(v[1], cfg.p1, msg)) return err("point[1]: " + msg);
        if (!read_complex(v[2], cfg.p2, msg)) return err("point[2]: " + msg);
      } else if (k == "steps") cfg.steps = v.get<int>();
      else if (k == "green_variant") cfg.green_variant = v.get<std::string>();
      else if (k == "suite") cfg.suite = v.get<std::string>();
      else if (k == "n_max") cfg.n_max = v.get<int>();
      else if (k == "trials") cfg.trials = v.get<int>();
      else if (k == "moduli") cfg.moduli = v.get<std::vector<double>>();
      else if (k == "samples") cfg.samples = v.get<int>();
      else if (k == "raster") {
        if (!v.is_object()) return err("raster must be an object");
        RasterSpec& r = cfg.raster;
        for (auto p = v.begin(); p != v.end(); ++p) {
          const std::string& rk = p.key();
          if (rk == "base") {
            if (!p.value().is_array() || p.value().size() != 3)
              return err("raster.base must be three [re,im] pairs");
            if (!read_complex(p.value()[0], r.p0, msg)) return err("raster.base[0]: " + msg);
            if (!read_complex(p.value()[1], r.p1, msg)) return err("raster.base[1]: " + msg);
            if (!read_complex(p.value()[2], r.p2, msg)) return err("raster.base[2]: " + msg);
          } else if (rk == "axis_x") r.axis_x_coord = p.value().get<int>();
          else if (rk == "axis_x_imag") r.axis_x_imag = p.value().get<bool>();
          else if (rk == "axis_y") r.axis_y_coord = p.value().get<int>();
          else if (rk == "axis_y_imag") r.axis_y_imag = p.value().get<bool>();
          else if (rk == "center") {
            std::complex<double> c;
            if (!read_complex(p.value(), c, msg)) return err("raster.center: " + msg);
            r.center_x = c.real();
            r.center_y = c.imag();
          } else if (rk == "width") r.width = p.value().get<double>();
          else if (rk == "height") r.height = p.value().get<double>();
          else if (rk == "nx") r.nx = p.value().get<int>();
          else if (rk == "ny") r.ny = p.value().get<int>();
          else if (rk == "channel") r.channel = p.value().get<std::string>();
          else return err("unknown key raster." + rk);
        }
      } else return err("unknown config key " + k);
    } catch (const json::exception& e) {
      return err("bad value for " + k + ": " + e.what());
    }
  }
  return std::nullopt;
}

std::optional<ConfigError> validate_config(const RunConfig& cfg) {
  if (cfg.q < 2) return err("q must be an integer >= 2");
  if (cfg.d < 1) return err("d must be an integer >= 1");
  double am = std::hypot(cfg.alpha_re, cfg.alpha_im);
  if (!(am > 0.0) || am > 1.0) return err("need 0 < |alpha| <= 1");
  if (cfg.threads < 1) return err("threads must be >= 1");
  if (cfg.max_steps < 1 || cfg.max_terms < 1) return err("budgets must be >= 1");
  if (!(cfg.target_error > 0.0)) return err("target_error must be > 0");
  if (cfg.command == "orbit" && cfg.steps < 1) return err("steps must be >= 1");
  if (cfg.command == "green" && cfg.green_variant != "plus" &&
      cfg.green_variant != "henon" && cfg.green_variant != "minus")
    return err("green_variant must be plus | henon | minus");
  if (cfg.command == "verify" && cfg.suite != "degrees" && cfg.suite != "conjugacy" &&
      cfg.suite != "fibration" && cfg.suite != "centralizer" &&
      cfg.suite != "lemma-identity" && cfg.suite != "green-equations")
    return err("unknown verify suite " + cfg.suite);
  if (cfg.command == "sweep") {
    if (cfg.moduli.empty()) return err("sweep needs at least one alpha modulus");
    for (double m : cfg.moduli)
      if (!(m > 0.0) || m > 1.0) return err("sweep moduli must satisfy 0 < m <= 1");
    if (cfg.samples < 0) return err("samples must be >= 0");
  }
  if (cfg.command == "raster") {
    const RasterSpec& r = cfg.raster;
    if (r.nx < 2 || r.ny < 2) return err("raster resolution must be >= 2 per axis");
    if (!(r.width > 0.0) || !(r.height > 0.0)) return err("raster window is degenerate");
    if (r.axis_x_coord < 0 || r.axis_x_coord > 2 || r.axis_y_coord < 0 || r.axis_y_coord > 2)
      return err("raster axes must name coordinate 0, 1 or 2");
    if (r.channel != "classification" && r.channel != "green" && r.channel != "g-magnitude")
      return err("raster channel must be classification | green | g-magnitude");
    if (cfg.out_path.empty()) return err("raster requires an output path");
  }
  return std::nullopt;
}

}  // namespace skewdyn
