#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdom/types.hpp"

namespace pdom {

enum class ScenarioMode { cooling, transduction, teleportation };
enum class Frame { lab, dressed };
enum class PdPolicy { none, optimal, explicit_drive };
enum class Spacing { linear, log };

struct SweepSpec {
  // "kappa1" for cooling sweeps, "omega" for spectra.
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  Spacing spacing = Spacing::linear;
};

// A fully resolved run description. Flat key=value config files parse into
// this; every field has a definite value after validation.
struct ScenarioConfig {
  ScenarioMode mode = ScenarioMode::cooling;
  Frame frame = Frame::lab;
  SystemParams lab;
  DressedParams dressed;
  PdPolicy pd_policy = PdPolicy::none;
  Complex lambda1_explicit = 0.0;
  Matching matching = Matching::modified;
  SweepSpec sweep;
  BathSpec bath2;
  bool bath2_auto_phase = true;
  double teleport_r = 0.0;
  bool teleport_auto_phase = true;
  double teleport_phi = 0.0;
  // Cooling only: when >= 0, g_tilde1 = sqrt(cooperativity*kappa1*gamma)
  // is re-derived at every sweep point.
  double cooperativity = -1.0;
  bool allow_mech_loss = false;
  std::string output;
};

struct RunOptions {
  std::string out_dir = ".";
  int jobs = 1;
  double tolerance = 1e-6;
  unsigned long seed = 0;
};

struct RunSummary {
  std::vector<std::string> lines;   // human-readable summary, one per line
  std::vector<std::string> files;   // emitted files, in creation order
  std::map<std::string, double> metrics;
};

// Parse config text. Unknown keys, missing required keys, and malformed
// values raise ConfigError naming the key (and line). Defaults are filled
// in so the result echoes back complete.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Canonical key=value echo of a resolved config, keys sorted. Written next
// to each run's output as <output>.resolved.cfg; parsing it back yields the
// same config.
std::string resolved_config_text(const ScenarioConfig& c);

// Execute a run: sweep, stability gate on every swept system, CSV with 12
// significant digits, resolved-config echo. Throws (no partial output) on
// unstable systems or quadrature failure.
RunSummary run_scenario(const ScenarioConfig& c, const RunOptions& o);

// Built-in parameter sets; name is one of "fig2", "fig3", "figS1".
RunSummary run_preset(const std::string& name, const RunOptions& o);

// Number formatting used in CSV and summaries: shortest of %.12g.
std::string format_number(double v);

}  // namespace pdom
