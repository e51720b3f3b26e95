#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdom/errors.hpp"
#include "pdom/scenario.hpp"

namespace pdom {

namespace {

const std::set<std::string> kKnownKeys = {
    "mode",          "output",        "frame",          "omega_m",
    "gamma",         "kappa1",        "delta1",         "lambda1",
    "g1",            "kappa2",        "delta2",         "lambda2",
    "g2",            "delta_tilde1",  "g_tilde1",       "delta_tilde2",
    "g_tilde2",      "pd_policy",     "matching",       "sweep_variable",
    "sweep_start",   "sweep_stop",    "sweep_count",    "sweep_spacing",
    "bath2",         "bath2_s",       "bath2_vartheta", "teleport_r",
    "teleport_phi",  "cooperativity", "allow_mech_loss"};

const char* kRequiredKeys =
    "mode, output, sweep_variable, sweep_start, sweep_stop, sweep_count";

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct RawConfig {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
};

[[noreturn]] void fail(const std::string& key, int line,
                       const std::string& what) {
  std::ostringstream msg;
  msg << "config key '" << key << "'";
  if (line > 0) msg << " (line " << line << ")";
  msg << ": " << what;
  throw ConfigError(msg.str());
}

double parse_double(const std::string& key, int line, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    fail(key, line, "expected a number, got '" + v + "'");
  }
  return x;
}

int parse_int(const std::string& key, int line, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long x = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    fail(key, line, "expected an integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

// Complex literals: "1.5", "-2", "3+4i", "1e-3-2.5e-1i", "0.7i".
Complex parse_complex(const std::string& key, int line,
                      const std::string& v) {
  if (v.empty()) fail(key, line, "expected a complex number");
  if (v.back() != 'i') {
    return Complex(parse_double(key, line, v), 0.0);
  }
  const std::string body = v.substr(0, v.size() - 1);
  // Find the sign separating real and imaginary parts; skip exponent signs
  // and a leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i) {
    if ((body[i] == '+' || body[i] == '-') &&
        body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
    }
  }
  if (split == std::string::npos) {
    if (body.empty()) fail(key, line, "expected digits before 'i'");
    return Complex(0.0, parse_double(key, line, body));
  }
  const std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  if (im == "+" || im == "-") im += "1";
  return Complex(parse_double(key, line, re), parse_double(key, line, im));
}

bool parse_bool(const std::string& key, int line, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(key, line, "expected true or false, got '" + v + "'");
}

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "line " << lineno << ": expected key = value, got '" << line
          << "'";
      throw ConfigError(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) {
      std::ostringstream msg;
      msg << "unknown config key '" << key << "' (line " << lineno << ")";
      throw ConfigError(msg.str());
    }
    if (raw.values.count(key)) {
      fail(key, lineno, "duplicate key");
    }
    if (value.empty()) {
      fail(key, lineno, "empty value");
    }
    raw.values[key] = value;
    raw.lines[key] = lineno;
  }
  return raw;
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.values.count(key); }

  std::string str(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    return raw_.values.at(key);
  }

  double num(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return parse_double(key, line(key), raw_.values.at(key));
  }

  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    return parse_int(key, line(key), raw_.values.at(key));
  }

  Complex cnum(const std::string& key, Complex fallback) {
    if (!has(key)) return fallback;
    return parse_complex(key, line(key), raw_.values.at(key));
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    return parse_bool(key, line(key), raw_.values.at(key));
  }

  int line(const std::string& key) const {
    auto it = raw_.lines.find(key);
    return it == raw_.lines.end() ? 0 : it->second;
  }

 private:
  const RawConfig& raw_;
};

std::string format_complex(Complex v) {
  if (v.imag() == 0.0) return format_number(v.real());
  std::string out = format_number(v.real());
  if (v.imag() >= 0.0) out += "+";
  out += format_number(v.imag());
  out += "i";
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  const RawConfig raw = tokenize(text);
  if (raw.values.empty()) {
    std::ostringstream msg;
    msg << "config is empty; required keys: " << kRequiredKeys;
    throw ConfigError(msg.str());
  }
  Reader r(raw);
  ScenarioConfig c;

  std::vector<std::string> missing;
  for (const char* key :
       {"mode", "output", "sweep_variable", "sweep_start", "sweep_stop",
        "sweep_count"}) {
    if (!r.has(key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "missing required config keys:";
    for (const auto& k : missing) msg << " " << k;
    throw ConfigError(msg.str());
  }

  const std::string mode = r.str("mode", "");
  if (mode == "cooling") {
    c.mode = ScenarioMode::cooling;
  } else if (mode == "transduction") {
    c.mode = ScenarioMode::transduction;
  } else if (mode == "teleportation") {
    c.mode = ScenarioMode::teleportation;
  } else {
    fail("mode", r.line("mode"),
         "expected cooling, transduction or teleportation, got '" + mode +
             "'");
  }

  const std::string frame = r.str("frame", "lab");
  if (frame == "lab") {
    c.frame = Frame::lab;
  } else if (frame == "dressed") {
    c.frame = Frame::dressed;
  } else {
    fail("frame", r.line("frame"), "expected lab or dressed");
  }

  c.output = r.str("output", "");

  const double omega_m = r.num("omega_m", 1.0);
  const double gamma = r.num("gamma", 0.0);

  if (c.frame == Frame::lab) {
    c.lab.omega_m = omega_m;
    c.lab.gamma = gamma;
    c.lab.cavity1 = {r.num("delta1", omega_m), r.cnum("lambda1", 0.0),
                     r.num("kappa1", 1.0), r.num("g1", 0.0)};
    c.lab.cavity2 = {r.num("delta2", omega_m), r.cnum("lambda2", 0.0),
                     r.num("kappa2", 1.0), r.num("g2", 0.0)};
    c.dressed = DressedParams{};
    c.dressed.omega_m = omega_m;
    c.dressed.gamma = gamma;
  } else {
    c.dressed.omega_m = omega_m;
    c.dressed.gamma = gamma;
    c.dressed.delta_tilde1 = r.num("delta_tilde1", omega_m);
    c.dressed.g_tilde1 = r.num("g_tilde1", 0.0);
    c.dressed.kappa1 = r.num("kappa1", 1.0);
    c.dressed.delta_tilde2 = r.num("delta_tilde2", omega_m);
    c.dressed.g_tilde2 = r.num("g_tilde2", 0.0);
    c.dressed.kappa2 = r.num("kappa2", 1.0);
    c.lab = SystemParams{};
    c.lab.omega_m = omega_m;
    c.lab.gamma = gamma;
  }

  const std::string policy = r.str("pd_policy", "none");
  if (policy == "none") {
    c.pd_policy = PdPolicy::none;
  } else if (policy == "optimal") {
    c.pd_policy = PdPolicy::optimal;
  } else if (policy == "explicit") {
    c.pd_policy = PdPolicy::explicit_drive;
  } else {
    fail("pd_policy", r.line("pd_policy"),
         "expected none, optimal or explicit");
  }
  c.lambda1_explicit = r.cnum("lambda1", c.lab.cavity1.lambda);
  if (c.pd_policy == PdPolicy::explicit_drive && !r.has("lambda1")) {
    fail("lambda1", 0, "pd_policy = explicit requires lambda1");
  }
  if (c.mode != ScenarioMode::cooling && c.frame == Frame::lab &&
      c.pd_policy != PdPolicy::none) {
    fail("pd_policy", r.line("pd_policy"),
         "lab-frame spectrum runs take the drive from lambda1; use "
         "pd_policy = none or frame = dressed");
  }

  const std::string matching = r.str("matching", "modified");
  if (matching == "standard") {
    c.matching = Matching::standard;
  } else if (matching == "modified") {
    c.matching = Matching::modified;
  } else {
    fail("matching", r.line("matching"), "expected standard or modified");
  }

  c.sweep.variable = r.str("sweep_variable", "");
  if (c.mode == ScenarioMode::cooling) {
    if (c.sweep.variable != "kappa1") {
      fail("sweep_variable", r.line("sweep_variable"),
           "cooling sweeps kappa1");
    }
  } else if (c.sweep.variable != "omega") {
    fail("sweep_variable", r.line("sweep_variable"),
         "spectrum runs sweep omega");
  }
  c.sweep.start = r.num("sweep_start", 0.0);
  c.sweep.stop = r.num("sweep_stop", 0.0);
  c.sweep.count = r.integer("sweep_count", 0);
  if (c.sweep.count < 1) {
    fail("sweep_count", r.line("sweep_count"), "must be at least 1");
  }
  if (!(c.sweep.stop > c.sweep.start) && c.sweep.count > 1) {
    fail("sweep_stop", r.line("sweep_stop"),
         "must exceed sweep_start for multi-point sweeps");
  }
  const std::string spacing = r.str("sweep_spacing", "linear");
  if (spacing == "linear") {
    c.sweep.spacing = Spacing::linear;
  } else if (spacing == "log") {
    c.sweep.spacing = Spacing::log;
    if (!(c.sweep.start > 0.0)) {
      fail("sweep_start", r.line("sweep_start"),
           "log spacing requires a positive start");
    }
  } else {
    fail("sweep_spacing", r.line("sweep_spacing"), "expected linear or log");
  }

  const std::string bath = r.str("bath2", "vacuum");
  if (bath == "vacuum") {
    c.bath2 = BathSpec::vacuum();
  } else if (bath == "squeezed") {
    c.bath2 = BathSpec::squeezed(r.num("bath2_s", 0.0), 0.0);
    if (c.bath2.s < 0.0) {
      fail("bath2_s", r.line("bath2_s"), "must be non-negative");
    }
  } else {
    fail("bath2", r.line("bath2"), "expected vacuum or squeezed");
  }
  const std::string vt = r.str("bath2_vartheta", "auto");
  if (vt == "auto") {
    c.bath2_auto_phase = true;
  } else {
    c.bath2_auto_phase = false;
    c.bath2.vartheta = parse_double("bath2_vartheta",
                                    r.line("bath2_vartheta"), vt);
  }

  c.teleport_r = r.num("teleport_r", 0.0);
  const std::string tp = r.str("teleport_phi", "auto");
  if (tp == "auto") {
    c.teleport_auto_phase = true;
    c.teleport_phi = 0.0;
  } else {
    c.teleport_auto_phase = false;
    c.teleport_phi = parse_double("teleport_phi", r.line("teleport_phi"), tp);
  }

  const std::string coop = r.str("cooperativity", "none");
  if (coop == "none") {
    c.cooperativity = -1.0;
  } else {
    c.cooperativity =
        parse_double("cooperativity", r.line("cooperativity"), coop);
    if (c.cooperativity < 0.0) {
      fail("cooperativity", r.line("cooperativity"),
           "must be non-negative (or none)");
    }
  }

  c.allow_mech_loss = r.boolean("allow_mech_loss", false);
  if (c.mode != ScenarioMode::cooling && gamma != 0.0 &&
      !c.allow_mech_loss) {
    fail("gamma", r.line("gamma"),
         "conversion runs assume gamma = 0; set allow_mech_loss = true to "
         "override");
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string resolved_config_text(const ScenarioConfig& c) {
  std::map<std::string, std::string> kv;

  switch (c.mode) {
    case ScenarioMode::cooling:
      kv["mode"] = "cooling";
      break;
    case ScenarioMode::transduction:
      kv["mode"] = "transduction";
      break;
    case ScenarioMode::teleportation:
      kv["mode"] = "teleportation";
      break;
  }
  kv["output"] = c.output;
  kv["frame"] = c.frame == Frame::lab ? "lab" : "dressed";

  if (c.frame == Frame::lab) {
    kv["omega_m"] = format_number(c.lab.omega_m);
    kv["gamma"] = format_number(c.lab.gamma);
    kv["delta1"] = format_number(c.lab.cavity1.delta);
    kv["lambda1"] = format_complex(c.lab.cavity1.lambda);
    kv["kappa1"] = format_number(c.lab.cavity1.kappa);
    kv["g1"] = format_number(c.lab.cavity1.g);
    kv["delta2"] = format_number(c.lab.cavity2.delta);
    kv["lambda2"] = format_complex(c.lab.cavity2.lambda);
    kv["kappa2"] = format_number(c.lab.cavity2.kappa);
    kv["g2"] = format_number(c.lab.cavity2.g);
  } else {
    kv["omega_m"] = format_number(c.dressed.omega_m);
    kv["gamma"] = format_number(c.dressed.gamma);
    kv["delta_tilde1"] = format_number(c.dressed.delta_tilde1);
    kv["g_tilde1"] = format_number(c.dressed.g_tilde1);
    kv["kappa1"] = format_number(c.dressed.kappa1);
    kv["delta_tilde2"] = format_number(c.dressed.delta_tilde2);
    kv["g_tilde2"] = format_number(c.dressed.g_tilde2);
    kv["kappa2"] = format_number(c.dressed.kappa2);
    if (c.pd_policy == PdPolicy::explicit_drive) {
      kv["lambda1"] = format_complex(c.lambda1_explicit);
    }
  }

  switch (c.pd_policy) {
    case PdPolicy::none:
      kv["pd_policy"] = "none";
      break;
    case PdPolicy::optimal:
      kv["pd_policy"] = "optimal";
      break;
    case PdPolicy::explicit_drive:
      kv["pd_policy"] = "explicit";
      break;
  }
  kv["matching"] =
      c.matching == Matching::standard ? "standard" : "modified";

  kv["sweep_variable"] = c.sweep.variable;
  kv["sweep_start"] = format_number(c.sweep.start);
  kv["sweep_stop"] = format_number(c.sweep.stop);
  kv["sweep_count"] = std::to_string(c.sweep.count);
  kv["sweep_spacing"] =
      c.sweep.spacing == Spacing::linear ? "linear" : "log";

  kv["bath2"] =
      c.bath2.kind == BathKind::vacuum ? "vacuum" : "squeezed";
  kv["bath2_s"] = format_number(c.bath2.s);
  kv["bath2_vartheta"] =
      c.bath2_auto_phase ? "auto" : format_number(c.bath2.vartheta);
  kv["teleport_r"] = format_number(c.teleport_r);
  kv["teleport_phi"] =
      c.teleport_auto_phase ? "auto" : format_number(c.teleport_phi);
  kv["cooperativity"] =
      c.cooperativity < 0.0 ? "none" : format_number(c.cooperativity);
  kv["allow_mech_loss"] = c.allow_mech_loss ? "true" : "false";

  std::string out;
  for (const auto& [key, value] : kv) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  }
  return out;
}

}  // namespace pdom
