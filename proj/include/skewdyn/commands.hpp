#ifndef SKEWDYN_COMMANDS_HPP
#define SKEWDYN_COMMANDS_HPP

#include <string>

#include "skewdyn/run_config.hpp"

namespace skewdyn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;

std::string render_orbit_csv(const RunConfig& cfg);
std::string render_classify_json(const RunConfig& cfg);
std::string render_green_json(const RunConfig& cfg);

struct VerifyOutcome {
  std::string report;  // one line per check
  bool ok = false;
};
VerifyOutcome render_verify(const RunConfig& cfg);

struct SweepOutcome {
  std::string csv;
  std::string summary;  // per-alpha verdict histogram
};
SweepOutcome render_sweep(const RunConfig& cfg);

struct RasterOutcome {
  std::string pgm;
  std::string sidecar_json;
};
RasterOutcome render_raster(const RunConfig& cfg);

// Validates, dispatches, writes outputs.  Returns the exit code contract:
// 0 success, 1 verification failure, 2 config error.  SKEWDYN_THREADS
// overrides cfg.threads when set.
int run_command(RunConfig cfg);

}  // namespace skewdyn

#endif
