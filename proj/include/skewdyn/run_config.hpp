#ifndef SKEWDYN_RUN_CONFIG_HPP
#define SKEWDYN_RUN_CONFIG_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace skewdyn {

struct RasterSpec {
  // base point; the two swept components are overwritten per pixel
  std::complex<double> p0{0, 0}, p1{0, 0}, p2{0, 0};
  int axis_x_coord = 0;  // 0|1|2
  bool axis_x_imag = false;
  int axis_y_coord = 1;
  bool axis_y_imag = false;
  double center_x = 0.0, center_y = 0.0;
  double width = 4.0, height = 4.0;
  int nx = 0, ny = 0;
  std::string channel = "classification";  // classification | green | g-magnitude
};

// One serializable source of truth per invocation; command-line flags
// override individual fields after the config document is loaded.
struct RunConfig {
  std::string command;

  int q = 2;
  int d = 1;
  double alpha_re = 0.5;
  double alpha_im = 0.0;

  int threads = 1;
  unsigned long long seed = 1;

  int max_steps = 2000;
  int max_terms = 400;
  double target_error = 1e-6;

  std::string out_path;       // empty -> stdout
  std::string sidecar_path;   // raster JSON sidecar; default derived from out

  std::complex<double> p0{0, 0}, p1{0, 0}, p2{0, 0};

  int steps = 40;                  // orbit rows
  std::string green_variant = "plus";
  std::string suite = "degrees";   // verify
  int n_max = 5;
  int trials = 100;
  std::vector<double> moduli = {0.3, 0.5, 0.7, 0.9};
  int samples = 200;

  RasterSpec raster;
};

struct ConfigError {
  std::string message;
};

// Parses the JSON config document into `cfg`; unknown keys are rejected.
// Returns an error message instead of throwing so the CLI can map it to
// exit code 2.
std::optional<ConfigError> load_config_json(const std::string& json_text, RunConfig& cfg);

// Post-parse validation of the assembled config (Params invariants,
// budgets, raster window).
std::optional<ConfigError> validate_config(const RunConfig& cfg);

}  // namespace skewdyn

#endif
