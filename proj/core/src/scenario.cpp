#include "pdom/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include "pdom/cooling.hpp"
#include "pdom/errors.hpp"
#include "pdom/squeeze.hpp"
#include "pdom/stability.hpp"
#include "pdom/system.hpp"
#include "pdom/transduction.hpp"

namespace pdom {

namespace {

std::vector<double> make_grid(double start, double stop, int count,
                              Spacing spacing) {
  std::vector<double> xs;
  xs.reserve(count);
  if (count == 1) {
    xs.push_back(start);
    return xs;
  }
  if (spacing == Spacing::linear) {
    for (int i = 0; i < count; ++i) {
      xs.push_back(start + (stop - start) * i / (count - 1));
    }
  } else {
    const double la = std::log(start);
    const double lb = std::log(stop);
    for (int i = 0; i < count; ++i) {
      xs.push_back(std::exp(la + (lb - la) * i / (count - 1)));
    }
  }
  return xs;
}

// Run fn(i) for i in [0, n) on up to `jobs` threads. Results land in
// index-order slots, so the output is identical for any thread count; the
// lowest-index failure is rethrown.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(jobs, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write '" + path + "'");
  }
  out << text;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string text = header;
  text += "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) text += ",";
      text += format_number(row[j]);
    }
    text += "\n";
  }
  write_text_file(path, text);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void require_stable_system(const SystemParams& p) {
  const StabilityReport rep = eigenvalue_stable(build_dynamical_matrix(p));
  if (!rep.stable) {
    std::ostringstream msg;
    msg << "configured system is "
        << (rep.marginal ? "marginal" : "unstable")
        << " (max drift eigenvalue real part " << rep.max_eigen_real << ")";
    throw UnstableSystemError(msg.str());
  }
}

SystemParams cooling_lane(const ScenarioConfig& c, double kappa1,
                          bool pd_lane) {
  const double om =
      c.frame == Frame::lab ? c.lab.omega_m : c.dressed.omega_m;
  const double gamma = c.frame == Frame::lab ? c.lab.gamma : c.dressed.gamma;

  double g_dressed;
  if (c.cooperativity >= 0.0) {
    g_dressed = coupling_for_cooperativity(c.cooperativity, kappa1, gamma);
  } else {
    g_dressed =
        c.frame == Frame::lab ? c.lab.cavity1.g : c.dressed.g_tilde1;
  }

  SystemParams p;
  p.omega_m = om;
  p.gamma = gamma;
  p.cavity2 = c.lab.cavity2;
  p.cavity2.g = 0.0;

  if (!pd_lane || c.pd_policy == PdPolicy::none) {
    p.cavity1 = {om, 0.0, kappa1, g_dressed};
    return p;
  }
  if (c.pd_policy == PdPolicy::optimal) {
    const double delta1 = cooling_detuning(om, kappa1);
    const Complex lambda1 = optimal_pd_cooling(delta1, om, kappa1);
    const SqueezeParams s = bogoliubov_from_drive(delta1, lambda1);
    p.cavity1 = {delta1, lambda1, kappa1, g_dressed / std::abs(s.mu)};
    return p;
  }
  // Explicit drive, held fixed across the sweep.
  const double delta1 =
      c.frame == Frame::lab ? c.lab.cavity1.delta : c.dressed.delta_tilde1;
  const SqueezeParams s = bogoliubov_from_drive(delta1, c.lambda1_explicit);
  const double g_lab = c.cooperativity >= 0.0
                           ? g_dressed / std::abs(s.mu)
                           : (c.frame == Frame::lab ? c.lab.cavity1.g
                                                    : g_dressed);
  p.cavity1 = {delta1, c.lambda1_explicit, kappa1, g_lab};
  return p;
}

RunSummary run_cooling(const ScenarioConfig& c, const RunOptions& o) {
  const std::vector<double> kappas = make_grid(
      c.sweep.start, c.sweep.stop, c.sweep.count, c.sweep.spacing);
  const int n = static_cast<int>(kappas.size());
  const double om =
      c.frame == Frame::lab ? c.lab.omega_m : c.dressed.omega_m;

  QuadratureOptions qopts;
  qopts.rel_tol = o.tolerance;

  std::vector<std::vector<double>> rows(n);
  parallel_for(n, o.jobs, [&](int i) {
    const double kappa = kappas[i];
    const CoolingResult std_lane =
        backaction_occupancy(cooling_lane(c, kappa, false), qopts);
    const CoolingResult pd_lane =
        backaction_occupancy(cooling_lane(c, kappa, true), qopts);
    rows[i] = {kappa / om, std_lane.n_ba, pd_lane.n_ba, std_lane.qba_limit};
  });

  const std::string csv_path = join_path(o.out_dir, c.output);
  write_csv(csv_path, "kappa_over_omega_m,n_ba_standard,n_ba_pd,qba_limit",
            rows);
  const std::string resolved_path = csv_path + ".resolved.cfg";
  write_text_file(resolved_path, resolved_config_text(c));

  RunSummary sum;
  sum.files = {csv_path, resolved_path};
  const auto& last = rows.back();
  std::ostringstream line;
  line << c.output << ": " << n << " rows; at kappa1/omega_m = "
       << format_number(last[0]) << ": n_ba_standard = "
       << format_number(last[1]) << ", n_ba_pd = " << format_number(last[2])
       << ", qba_limit = " << format_number(last[3]);
  sum.lines.push_back(line.str());
  sum.metrics["n_ba_standard"] = last[1];
  sum.metrics["n_ba_pd"] = last[2];
  sum.metrics["qba_limit"] = last[3];
  return sum;
}

struct ResolvedSpectrumRun {
  SystemParams lab;
  bool has_design = false;
  TransducerDesign design;
};

ResolvedSpectrumRun resolve_spectrum_system(const ScenarioConfig& c) {
  ResolvedSpectrumRun rr;
  if (c.frame == Frame::lab) {
    rr.lab = c.lab;
    return rr;
  }
  switch (c.pd_policy) {
    case PdPolicy::none:
      rr.lab = to_system(c.dressed);
      break;
    case PdPolicy::optimal:
      rr.design = make_transducer_design(c.dressed, c.matching);
      rr.has_design = true;
      rr.lab = transducer_lab_system(c.dressed, rr.design);
      break;
    case PdPolicy::explicit_drive:
      rr.lab = lab_from_dressed(c.dressed, c.lambda1_explicit, 0.0);
      break;
  }
  return rr;
}

RunSummary run_spectrum(const ScenarioConfig& c, const RunOptions& o) {
  const ResolvedSpectrumRun rr = resolve_spectrum_system(c);
  validate(rr.lab);
  require_stable_system(rr.lab);

  const std::vector<double> omegas = make_grid(
      c.sweep.start, c.sweep.stop, c.sweep.count, c.sweep.spacing);
  const int n = static_cast<int>(omegas.size());
  const double om = rr.lab.omega_m;

  const Matrix6 h = build_dynamical_matrix(rr.lab);
  const Matrix6 k = build_coupling_matrix(rr.lab);

  std::vector<Matrix6> ts(n);
  parallel_for(n, o.jobs,
               [&](int i) { ts[i] = scattering(h, k, omegas[i]); });

  // Tuned frequency: the design value when a drive was synthesized,
  // otherwise the efficiency maximum on the grid.
  double omega0;
  if (rr.has_design) {
    omega0 = rr.design.omega0;
  } else {
    int imax = 0;
    for (int i = 1; i < n; ++i) {
      if (conversion_efficiency(ts[i]) > conversion_efficiency(ts[imax])) {
        imax = i;
      }
    }
    omega0 = omegas[imax];
  }
  const Matrix6 t0 = scattering(h, k, omega0);

  BathSpec bath2 = c.bath2;
  if (bath2.kind == BathKind::broadband_squeezed && c.bath2_auto_phase) {
    bath2.vartheta = optimal_output_squeeze_phase(t0);
  }
  double teleport_phi = c.teleport_phi;
  if (c.mode == ScenarioMode::teleportation && c.teleport_auto_phase) {
    teleport_phi = optimal_teleport_phases(t0).phi_t;
  }

  const auto noise_at = [&](const Matrix6& t) {
    if (c.mode == ScenarioMode::teleportation) {
      return teleportation_noise(t, c.teleport_r, teleport_phi, bath2);
    }
    return added_noise(t, bath2);
  };

  std::vector<std::vector<double>> rows(n);
  for (int i = 0; i < n; ++i) {
    const double eta = conversion_efficiency(ts[i]);
    const double ratio = conjugate_power_ratio(ts[i]);
    rows[i] = {omegas[i] / om, eta, ratio, noise_at(ts[i]),
               added_noise_lower_bound(eta, ratio)};
  }

  const std::string csv_path = join_path(o.out_dir, c.output);
  write_csv(csv_path, "omega_over_omega_m,eta,conj_ratio,S,S_lower_bound",
            rows);
  const std::string resolved_path = csv_path + ".resolved.cfg";
  write_text_file(resolved_path, resolved_config_text(c));

  RunSummary sum;
  sum.files = {csv_path, resolved_path};
  const double eta0 = conversion_efficiency(t0);
  const double s0 = noise_at(t0);
  std::ostringstream line;
  line << c.output << ": omega0/omega_m = " << format_number(omega0 / om)
       << ", eta(omega0) = " << format_number(eta0)
       << ", S(omega0) = " << format_number(s0);
  sum.lines.push_back(line.str());
  sum.metrics["omega0"] = omega0;
  sum.metrics["eta_omega0"] = eta0;
  sum.metrics["S_omega0"] = s0;
  if (rr.has_design) {
    sum.metrics["gamma1"] = rr.design.gamma1;
    sum.metrics["gamma2"] = rr.design.gamma2;
  }
  return sum;
}

void merge_summary(RunSummary& into, const std::string& prefix,
                   const RunSummary& part) {
  for (const auto& line : part.lines) into.lines.push_back(line);
  for (const auto& f : part.files) into.files.push_back(f);
  for (const auto& [key, value] : part.metrics) {
    into.metrics[prefix + "." + key] = value;
  }
}

RunSummary preset_fig2(const RunOptions& o) {
  ScenarioConfig c;
  c.mode = ScenarioMode::cooling;
  c.frame = Frame::dressed;
  c.dressed = DressedParams{};
  c.dressed.omega_m = 1.0;
  c.dressed.gamma = 1e-5;
  c.pd_policy = PdPolicy::optimal;
  c.cooperativity = 10.0;
  c.sweep = {"kappa1", 0.1, 10.0, 25, Spacing::log};
  c.output = "fig2.csv";
  return run_cooling(c, o);
}

ScenarioConfig fig3_base(double g_tilde1, Matching matching) {
  ScenarioConfig c;
  c.mode = ScenarioMode::transduction;
  c.frame = Frame::dressed;
  c.dressed = DressedParams{1.0, g_tilde1, 5.0, 1.0, 0.1, 5.0, 1.0, 0.0};
  c.pd_policy = PdPolicy::optimal;
  c.matching = matching;
  return c;
}

RunSummary preset_fig3(const RunOptions& o) {
  const double om = 1.0;
  const double kappa = 5.0;
  const double g2 = 0.1;
  const double rate2 = gamma_rate(g2, kappa, om);
  const ImpedanceMatch match = impedance_match_modified(rate2, kappa, om);
  const double g1_modified = coupling_for_rate(match.gamma1, kappa, om);
  const double g1_standard = coupling_for_rate(rate2, kappa, om);

  const double span_red = 10.0 * (match.gamma1 + rate2);
  const double span_green = 10.0 * (2.0 * rate2);
  const double ten_db = 0.5 * std::log(10.0);

  RunSummary sum;
  const auto lane = [&](const char* name, ScenarioConfig c,
                        double lo, double hi) {
    c.output = std::string(name) + ".csv";
    c.sweep = {"omega", lo, hi, 2001, Spacing::linear};
    merge_summary(sum, name, run_spectrum(c, o));

    c.output = std::string(name) + "_context.csv";
    c.sweep = {"omega", 0.5, 1.5, 401, Spacing::linear};
    merge_summary(sum, std::string(name) + "_context", run_spectrum(c, o));
  };

  lane("fig3_red", fig3_base(g1_modified, Matching::modified),
       om - span_red, om + span_red);
  lane("fig3_green", fig3_base(g1_standard, Matching::standard),
       om - span_green, om + span_green);

  ScenarioConfig grey = fig3_base(g2, Matching::modified);
  grey.pd_policy = PdPolicy::none;
  lane("fig3_grey", grey, om - span_red, om + span_red);

  ScenarioConfig dashed = fig3_base(g1_modified, Matching::modified);
  dashed.bath2 = BathSpec::squeezed(ten_db, 0.0);
  dashed.bath2_auto_phase = true;
  lane("fig3_red_dashed", dashed, om - span_red, om + span_red);

  ScenarioConfig dotted = fig3_base(g1_modified, Matching::modified);
  dotted.mode = ScenarioMode::teleportation;
  dotted.bath2 = BathSpec::squeezed(ten_db, 0.0);
  dotted.bath2_auto_phase = true;
  dotted.teleport_r = ten_db;
  dotted.teleport_auto_phase = true;
  lane("fig3_red_dotted", dotted, om - span_red, om + span_red);

  return sum;
}

RunSummary preset_figS1(const RunOptions& o) {
  RunSummary sum;
  const double om = 1.0;
  const double gamma = 1e-5;
  const double cooperativity = 10.0;

  for (double kappa : {0.1, 5.0}) {
    const double g = coupling_for_cooperativity(cooperativity, kappa, gamma);

    SystemParams std_lane;
    std_lane.omega_m = om;
    std_lane.gamma = gamma;
    std_lane.cavity1 = {om, 0.0, kappa, g};

    const double delta1 = cooling_detuning(om, kappa);
    const Complex lambda1 = optimal_pd_cooling(delta1, om, kappa);
    const SqueezeParams sq = bogoliubov_from_drive(delta1, lambda1);
    SystemParams pd_lane;
    pd_lane.omega_m = om;
    pd_lane.gamma = gamma;
    pd_lane.cavity1 = {delta1, lambda1, kappa, g / std::abs(sq.mu)};

    const std::vector<double> grid = make_grid(0.0, 2.0, 2001,
                                               Spacing::linear);
    const Spectrum s_std = backaction_spectrum(std_lane, grid);
    const Spectrum s_pd = backaction_spectrum(pd_lane, grid);

    std::vector<std::vector<double>> rows(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows[i] = {grid[i] / om, s_std.values[i], s_pd.values[i]};
    }

    std::ostringstream base;
    base << "figS1_kappa_" << format_number(kappa) << ".csv";
    const std::string csv_path = join_path(o.out_dir, base.str());
    write_csv(csv_path, "omega_over_omega_m,chi_sq_standard,chi_sq_pd",
              rows);

    std::ostringstream params;
    params << "cooperativity = " << format_number(cooperativity) << "\n"
           << "delta1_pd = " << format_number(delta1) << "\n"
           << "g_standard = " << format_number(g) << "\n"
           << "gamma = " << format_number(gamma) << "\n"
           << "grid = 0..2 x 2001\n"
           << "kappa1 = " << format_number(kappa) << "\n"
           << "omega_m = " << format_number(om) << "\n";
    const std::string resolved_path = csv_path + ".resolved.cfg";
    write_text_file(resolved_path, params.str());

    sum.files.push_back(csv_path);
    sum.files.push_back(resolved_path);
    std::ostringstream line;
    line << base.str() << ": chi_sq_standard(omega_m) = "
         << format_number(s_std.values[1000])
         << ", chi_sq_pd(omega_m) = " << format_number(s_pd.values[1000]);
    sum.lines.push_back(line.str());
    std::ostringstream key;
    key << "chi_sq_standard_kappa_" << format_number(kappa);
    sum.metrics[key.str()] = s_std.values[1000];
  }
  return sum;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

RunSummary run_scenario(const ScenarioConfig& c, const RunOptions& o) {
  std::filesystem::create_directories(o.out_dir);
  if (c.mode == ScenarioMode::cooling) {
    return run_cooling(c, o);
  }
  return run_spectrum(c, o);
}

RunSummary run_preset(const std::string& name, const RunOptions& o) {
  std::filesystem::create_directories(o.out_dir);
  if (name == "fig2") return preset_fig2(o);
  if (name == "fig3") return preset_fig3(o);
  if (name == "figS1") return preset_figS1(o);
  throw ConfigError("unknown preset '" + name +
                    "'; expected fig2, fig3 or figS1");
}

}  // namespace pdom
