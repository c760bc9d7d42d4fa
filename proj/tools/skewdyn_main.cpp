#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skewdyn/commands.hpp"

using namespace skewdyn;

namespace {

// flag overrides applied after the config document, so flags win
struct FlagOverrides {
  std::string config_path;
  std::optional<int> q, d, threads, steps, n_max, trials, samples, max_steps, max_terms;
  std::optional<double> alpha_re, alpha_im, target_error;
  std::optional<unsigned long long> seed;
  std::optional<std::string> out, sidecar, suite, variant, channel;
  std::optional<std::vector<double>> point;
  std::optional<std::vector<double>> moduli;
  // raster
  std::optional<std::vector<double>> base;
  std::optional<int> axis_x, axis_y, nx, ny;
  std::optional<bool> axis_x_imag, axis_y_imag;
  std::optional<std::vector<double>> center;
  std::optional<double> width, height;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& f) {
  cmd->add_option("--config", f.config_path, "JSON config document");
  cmd->add_option("--q", f.q, "degree parameter q (>= 2)");
  cmd->add_option("--d", f.d, "fiber exponent d (>= 1)");
  cmd->add_option("--alpha-re", f.alpha_re, "Re alpha");
  cmd->add_option("--alpha-im", f.alpha_im, "Im alpha");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--threads", f.threads, "worker threads (SKEWDYN_THREADS overrides)");
  cmd->add_option("--seed", f.seed, "RNG seed for sample generation");
  cmd->add_option("--max-steps", f.max_steps, "orbit iteration budget");
  cmd->add_option("--max-terms", f.max_terms, "series term budget");
  cmd->add_option("--target-error", f.target_error, "green estimator target error");
  cmd->add_option("--point", f.point,
                  "start point as six reals: re0 im0 re1 im1 re2 im2")
      ->expected(6);
}

int apply_and_run(const std::string& command, const FlagOverrides& f) {
  RunConfig cfg;
  cfg.command = command;

  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      std::cerr << "config error: cannot read " << f.config_path << "\n";
      return kExitConfigError;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    if (auto e = load_config_json(ss.str(), cfg)) {
      std::cerr << "config error: " << e->message << "\n";
      return kExitConfigError;
    }
  }

  if (f.q) cfg.q = *f.q;
  if (f.d) cfg.d = *f.d;
  if (f.alpha_re) cfg.alpha_re = *f.alpha_re;
  if (f.alpha_im) cfg.alpha_im = *f.alpha_im;
  if (f.out) cfg.out_path = *f.out;
  if (f.sidecar) cfg.sidecar_path = *f.sidecar;
  if (f.threads) cfg.threads = *f.threads;
  if (f.seed) cfg.seed = *f.seed;
  if (f.max_steps) cfg.max_steps = *f.max_steps;
  if (f.max_terms) cfg.max_terms = *f.max_terms;
  if (f.target_error) cfg.target_error = *f.target_error;
  if (f.point) {
    const auto& p = *f.point;
    cfg.p0 = {p[0], p[1]};
    cfg.p1 = {p[2], p[3]};
    cfg.p2 = {p[4], p[5]};
  }
  if (f.steps) cfg.steps = *f.steps;
  if (f.suite) cfg.suite = *f.suite;
  if (f.variant) cfg.green_variant = *f.variant;
  if (f.n_max) cfg.n_max = *f.n_max;
  if (f.trials) cfg.trials = *f.trials;
  if (f.moduli) cfg.moduli = *f.moduli;
  if (f.samples) cfg.samples = *f.samples;
  if (f.base) {
    const auto& b = *f.base;
    cfg.raster.p0 = {b[0], b[1]};
    cfg.raster.p1 = {b[2], b[3]};
    cfg.raster.p2 = {b[4], b[5]};
  }
  if (f.axis_x) cfg.raster.axis_x_coord = *f.axis_x;
  if (f.axis_y) cfg.raster.axis_y_coord = *f.axis_y;
  if (f.axis_x_imag) cfg.raster.axis_x_imag = *f.axis_x_imag;
  if (f.axis_y_imag) cfg.raster.axis_y_imag = *f.axis_y_imag;
  if (f.center) {
    cfg.raster.center_x = (*f.center)[0];
    cfg.raster.center_y = (*f.center)[1];
  }
  if (f.width) cfg.raster.width = *f.width;
  if (f.height) cfg.raster.height = *f.height;
  if (f.nx) cfg.raster.nx = *f.nx;
  if (f.ny) cfg.raster.ny = *f.ny;
  if (f.channel) cfg.raster.channel = *f.channel;

  return run_command(std::move(cfg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical and exact-algebra laboratory for a family of "
               "polynomial skew products of C^3"};
  app.require_subcommand(1);

  FlagOverrides f;

  CLI::App* orbit = app.add_subcommand("orbit", "CSV of one forward orbit");
  add_common_flags(orbit, f);
  orbit->add_option("--steps", f.steps, "number of orbit rows");

  CLI::App* classify = app.add_subcommand("classify", "JSON verdict for one point");
  add_common_flags(classify, f);

  CLI::App* green = app.add_subcommand("green", "JSON escape-rate estimate");
  add_common_flags(green, f);
  green->add_option("--variant", f.variant, "plus | henon | minus");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common_flags(verify, f);
  verify->add_option("--suite", f.suite,
                     "degrees | conjugacy | fibration | centralizer | "
                     "lemma-identity | green-equations");
  verify->add_option("--n-max", f.n_max, "iterate depth for degree checks");
  verify->add_option("--trials", f.trials, "random trials for sampled suites");

  CLI::App* sweep = app.add_subcommand("sweep", "CSV classification sweep over |alpha|");
  add_common_flags(sweep, f);
  sweep->add_option("--moduli", f.moduli, "alpha moduli to sweep");
  sweep->add_option("--samples", f.samples, "sample count");

  CLI::App* raster = app.add_subcommand("raster", "render a 2D slice to 16-bit PGM");
  add_common_flags(raster, f);
  raster->add_option("--base", f.base, "base point, six reals")->expected(6);
  raster->add_option("--axis-x", f.axis_x, "swept coordinate for x (0|1|2)");
  raster->add_option("--axis-y", f.axis_y, "swept coordinate for y (0|1|2)");
  raster->add_flag("--axis-x-imag", f.axis_x_imag, "sweep the imaginary part on x");
  raster->add_flag("--axis-y-imag", f.axis_y_imag, "sweep the imaginary part on y");
  raster->add_option("--center", f.center, "window center (two reals)")->expected(2);
  raster->add_option("--width", f.width, "window width");
  raster->add_option("--height", f.height, "window height");
  raster->add_option("--nx", f.nx, "horizontal resolution");
  raster->add_option("--ny", f.ny, "vertical resolution");
  raster->add_option("--channel", f.channel, "classification | green | g-magnitude");
  raster->add_option("--sidecar", f.sidecar, "sidecar JSON path (default <out>.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  for (CLI::App* sub : {orbit, classify, green, verify, sweep, raster})
    if (sub->parsed()) return apply_and_run(sub->get_name(), f);
  return kExitConfigError;
}
