#include "rotctl/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rotctl/errors.hpp"
#include "rotctl/io.hpp"
#include "rotctl/magnus.hpp"
#include "rotctl/observables.hpp"
#include "rotctl/optimizer.hpp"
#include "rotctl/pulse.hpp"
#include "rotctl/tdse.hpp"
#include "rotctl/units.hpp"

namespace rotctl::cli {

namespace fs = std::filesystem;
using io::format_number;
using nlohmann::json;

namespace {

constexpr int kMaxJ = 30;

// Raw command-line values. Each is applied only if the user passed the flag.
struct Flags {
  std::string config_file;
  std::string molecule;
  int j_max = 0;
  double t_sub_trot = 0.0;
  double spacing_factor = 0.0;
  double phi_1 = 0.0;
  double delta_phi = 0.0;
  double samples_per_cycle = 0.0;
  double sample_step_trot = 0.0;
  double post_revivals = 0.0;
  int j_buffer = 0;
  std::string output_dir;
  std::string method;
};

struct Options {
  CLI::Option* config_file = nullptr;
  CLI::Option* molecule = nullptr;
  CLI::Option* j_max = nullptr;
  CLI::Option* t_sub_trot = nullptr;
  CLI::Option* spacing_factor = nullptr;
  CLI::Option* phi_1 = nullptr;
  CLI::Option* delta_phi = nullptr;
  CLI::Option* samples_per_cycle = nullptr;
  CLI::Option* sample_step_trot = nullptr;
  CLI::Option* post_revivals = nullptr;
  CLI::Option* j_buffer = nullptr;
  CLI::Option* output_dir = nullptr;
  CLI::Option* method = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

RunConfig resolve_config(const Flags& f, const Options& o) {
  RunConfig c;
  if (given(o.config_file)) apply_config(c, io::read_json(f.config_file));
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    c.output_dir = env;
  }
  if (given(o.molecule)) c.molecule = f.molecule;
  if (given(o.j_max)) c.j_max = f.j_max;
  if (given(o.t_sub_trot)) c.t_sub_trot = f.t_sub_trot;
  if (given(o.spacing_factor)) c.spacing_factor = f.spacing_factor;
  if (given(o.phi_1)) c.phi_1 = f.phi_1;
  if (given(o.delta_phi)) c.delta_phi = f.delta_phi;
  if (given(o.samples_per_cycle)) c.samples_per_cycle = f.samples_per_cycle;
  if (given(o.sample_step_trot)) c.sample_step_trot = f.sample_step_trot;
  if (given(o.post_revivals)) c.post_revivals = f.post_revivals;
  if (given(o.j_buffer)) c.j_buffer = f.j_buffer;
  if (given(o.output_dir)) c.output_dir = f.output_dir;
  if (given(o.method)) c.method = f.method;
  validate(c);
  return c;
}

DesignOptions design_options(const RunConfig& c, const Molecule& molecule) {
  DesignOptions d;
  d.subpulse_duration = c.t_sub_trot * molecule.revival_period_au();
  d.spacing_factor = c.spacing_factor;
  d.phi_1 = c.phi_1;
  return d;
}

PropagatorOptions propagator_options(const RunConfig& c) {
  PropagatorOptions p;
  p.j_buffer = c.j_buffer;
  p.samples_per_cycle = c.samples_per_cycle;
  return p;
}

// Analytic route: Magnus ladder coefficients on the sampling grid, moved to
// the Schrodinger picture so that observables match the TDSE output.
Trajectory analytic_trajectory(const PulseSequence& sequence, const PropagationSchedule& schedule) {
  std::vector<double> times;
  const auto samples = static_cast<long>(
      std::floor((schedule.t_end - schedule.t_start) / schedule.sample_step + 1e-9));
  for (long k = 0; k <= samples; ++k) {
    times.push_back(schedule.t_start + static_cast<double>(k) * schedule.sample_step);
  }
  Trajectory traj;
  for (const auto& s : magnus_series(sequence, times)) {
    const AnalyticState sch = to_schrodinger_picture(s, sequence.molecule());
    traj.times.push_back(sch.time);
    traj.states.push_back(sch.coeffs);
    traj.max_norm_error = std::max(traj.max_norm_error, std::abs(sch.coeffs.norm() - 1.0));
  }
  return traj;
}

Trajectory propagate(const PulseSequence& sequence, const RunConfig& c,
                     const PropagationSchedule& schedule) {
  if (c.method == "analytic") return analytic_trajectory(sequence, schedule);
  return run_experiment(sequence, schedule, propagator_options(c));
}

std::size_t index_at(const std::vector<double>& times, double t) {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.size() - 1;
  return static_cast<std::size_t>(std::distance(times.begin(), it));
}

std::vector<int> parse_jmax_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const int a = std::stoi(item.substr(0, dash));
        const int b = std::stoi(item.substr(dash + 1));
        if (b < a) throw DomainError("descending range '" + item + "'");
        for (int j = a; j <= b; ++j) out.push_back(j);
      } else {
        out.push_back(std::stoi(item));
      }
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse j_max list entry '" + item + "'");
    }
  }
  for (int j : out) {
    if (j < 1 || j > kMaxJ) throw DomainError("j_max must lie in [1, 30], got " + std::to_string(j));
  }
  return out;
}

// ---- commands -------------------------------------------------------------

int cmd_optimize(const RunConfig& c, bool write_files, std::ostream& out) {
  const OrientationTarget target = make_orientation_target(c.j_max, c.delta_phi);
  out << "lambda=" << format_number(target.lambda) << "\n";
  out << "J,c,population,phi_rad\n";
  for (int j = 0; j <= target.j_max; ++j) {
    const auto k = static_cast<std::size_t>(j);
    out << j << ',' << format_number(target.amplitudes[k]) << ','
        << format_number(target.amplitudes[k] * target.amplitudes[k]) << ','
        << format_number(target.phases[k]) << "\n";
  }
  if (write_files) {
    const fs::path dir(c.output_dir);
    io::write_json(dir / "target.json", io::to_json(target));
    io::StateRecord state;
    state.t_au = 0.0;
    state.picture = Picture::Schrodinger;
    state.coeffs.resize(target.j_max + 1);
    for (int j = 0; j <= target.j_max; ++j) {
      const auto k = static_cast<std::size_t>(j);
      state.coeffs(j) = std::polar(target.amplitudes[k], target.phases[k]);
    }
    io::write_json(dir / "target_state.json", io::to_json(state));
  }
  return kSuccess;
}

PulseSequence build_design(const RunConfig& c, const std::vector<double>& amplitudes,
                           const Molecule& molecule) {
  if (!amplitudes.empty()) {
    return design_sequence(amplitudes, c.delta_phi, molecule, design_options(c, molecule));
  }
  const OrientationTarget target = make_orientation_target(c.j_max, c.delta_phi);
  return design_sequence(target, molecule, design_options(c, molecule));
}

int cmd_design(const RunConfig& c, const std::vector<double>& amplitudes, std::ostream& out) {
  const Molecule molecule = io::resolve_molecule(c.molecule);
  const PulseSequence seq = build_design(c, amplitudes, molecule);
  const double t_rot = molecule.revival_period_au();

  const fs::path dir(c.output_dir);
  io::write_json(dir / "pulse.json", io::to_json(seq));
  const double step = default_time_step(seq, 20.0);
  io::write_text(dir / "field.csv", io::field_csv(seq, step));

  const CrossTalkReport xt = cross_talk_report(seq);
  out << "subpulses=" << seq.size() << "\n";
  out << "n,theta_rad,E_au,omega_au,tau_Trot,T_Trot,phi_rad\n";
  for (const auto& p : seq.subpulses()) {
    out << p.n << ',' << format_number(p.area) << ',' << format_number(p.amplitude) << ','
        << format_number(p.carrier) << ',' << format_number(p.center / t_rot) << ','
        << format_number(p.duration / t_rot) << ',' << format_number(p.phase) << "\n";
  }
  out << "peak_intensity_W_cm2=" << format_number(peak_intensity_wcm2(seq)) << "\n";
  out << "span_Trot=" << format_number(seq.t_on() / t_rot) << ".." << format_number(seq.t_off() / t_rot)
      << "\n";
  out << "cross_talk_max_rad=" << format_number(xt.max_off_diagonal)
      << (xt.flagged ? " FLAGGED" : "") << "\n";
  return kSuccess;
}

int cmd_propagate(const RunConfig& c, const std::string& pulse_file, bool with_coeffs,
                  std::ostream& out) {
  const PulseSequence seq = io::sequence_from_json(io::read_json(pulse_file));
  const Molecule& molecule = seq.molecule();
  const double t_rot = molecule.revival_period_au();
  const PropagationSchedule schedule = make_schedule(seq, c.sample_step_trot, c.post_revivals);
  const Trajectory traj = propagate(seq, c, schedule);

  const ObservableSeries ori = series(traj, SeriesKind::Orientation);
  const ObservableSeries ali = series(traj, SeriesKind::Alignment);
  const ObservableSeries nrm = series(traj, SeriesKind::Norm);

  const fs::path dir(c.output_dir);
  io::write_text(dir / "trajectory.csv", io::trajectory_csv(traj, molecule, with_coeffs));
  io::write_text(dir / "orientation.csv", io::series_csv(ori, molecule));
  io::write_text(dir / "alignment.csv", io::series_csv(ali, molecule));
  io::write_text(dir / "norm.csv", io::series_csv(nrm, molecule));
  io::write_text(dir / "populations.csv", io::populations_csv(traj, molecule));

  const double post_end = traj.times.back();
  const double post_start = std::min(seq.t_off(), post_end);
  const PeakStatistics peaks = peak_statistics(ori, post_start, post_end);
  const PeakStatistics align_peaks = peak_statistics(ali, post_start, post_end);
  io::write_json(dir / "peaks.json", io::peak_report(peaks));

  io::StateRecord final_state{traj.times.back(), traj.states.back(), Picture::Schrodinger};
  io::write_json(dir / "final_state.json", io::to_json(final_state));
  const std::size_t at_peak = index_at(traj.times, peaks.t_star);
  io::StateRecord peak_state{traj.times[at_peak], traj.states[at_peak], Picture::Schrodinger};
  io::write_json(dir / "peak_state.json", io::to_json(peak_state));

  out << "method=" << c.method << "\n";
  out << "max_orientation=" << format_number(peaks.max) << "\n";
  out << "t_star_Trot=" << format_number(peaks.t_star / t_rot) << "\n";
  out << "max_alignment=" << format_number(align_peaks.max) << "\n";
  if (!peaks.spacings.empty()) {
    out << "revival_spacing_ps=" << format_number(units::au_to_ps(peaks.mean_spacing)) << " +- "
        << format_number(units::au_to_ps(peaks.spacing_spread)) << "\n";
  } else {
    out << "revival_spacing_ps=none\n";
  }
  out << "max_norm_error=" << format_number(traj.max_norm_error) << "\n";
  if (c.method == "tdse") out << "max_buffer_leakage=" << format_number(traj.max_leakage) << "\n";
  out << "final_populations=";
  const Eigen::VectorXd pops = populations(traj.states.back());
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(pops.size(), seq.size() + 1); ++j) {
    out << (j ? "," : "") << format_number(pops(j));
  }
  out << "\n";
  return kSuccess;
}

struct SweepRow {
  int j_max = 0;
  double lambda = 0.0;
  double max_orientation = 0.0;
  double max_alignment = 0.0;
  double peak_intensity = 0.0;
  double runtime_s = 0.0;
  std::string status = "pending";
};

SweepRow sweep_row(const RunConfig& base, int j_max, const Molecule& molecule) {
  SweepRow row;
  row.j_max = j_max;
  const auto start = std::chrono::steady_clock::now();
  try {
    RunConfig c = base;
    c.j_max = j_max;
    const OrientationTarget target = make_orientation_target(j_max, c.delta_phi);
    row.lambda = target.lambda;
    const PulseSequence seq = design_sequence(target, molecule, design_options(c, molecule));
    row.peak_intensity = peak_intensity_wcm2(seq);
    const PropagationSchedule schedule = make_schedule(seq, c.sample_step_trot, c.post_revivals);
    const Trajectory traj = propagate(seq, c, schedule);
    const double end = traj.times.back();
    row.max_orientation = peak_statistics(series(traj, SeriesKind::Orientation), seq.t_off(), end).max;
    row.max_alignment = peak_statistics(series(traj, SeriesKind::Alignment), seq.t_off(), end).max;
    row.status = "ok";
  } catch (const TruncationError& e) {
    row.status = std::string("truncation: ") + e.what();
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

int cmd_sweep(const RunConfig& c, const std::string& list, std::ostream& out) {
  const std::vector<int> js = parse_jmax_list(list);
  if (js.empty()) throw DomainError("sweep: empty j_max list");
  const Molecule molecule = io::resolve_molecule(c.molecule);

  std::vector<SweepRow> rows(js.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < js.size(); i = next++) rows[i] = sweep_row(c, js[i], molecule);
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(js.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::string summary = "N,lambda_theory,max_orientation_" + c.method +
                        ",max_alignment,peak_intensity_W_cm2,status\n";
  std::string timing = "N,runtime_s\n";
  bool all_ok = true;
  bool truncated = false;
  for (const auto& r : rows) {
    summary += std::to_string(r.j_max) + ',' + format_number(r.lambda) + ',' +
               format_number(r.max_orientation) + ',' + format_number(r.max_alignment) + ',' +
               format_number(r.peak_intensity) + ',' + (r.status == "ok" ? "ok" : "failed") + '\n';
    timing += std::to_string(r.j_max) + ',' + format_number(r.runtime_s) + '\n';
    if (r.status != "ok") {
      all_ok = false;
      truncated = truncated || r.status.rfind("truncation", 0) == 0;
    }
  }
  const fs::path dir(c.output_dir);
  io::write_text(dir / "summary.csv", summary);
  io::write_text(dir / "sweep_timing.csv", timing);

  out << "N,lambda_theory,max_orientation,max_alignment,peak_intensity_W_cm2,runtime_s,status\n";
  for (const auto& r : rows) {
    out << r.j_max << ',' << format_number(r.lambda) << ',' << format_number(r.max_orientation) << ','
        << format_number(r.max_alignment) << ',' << format_number(r.peak_intensity) << ','
        << std::fixed << std::setprecision(2) << r.runtime_s << std::defaultfloat << ',' << r.status
        << "\n";
  }
  if (all_ok) return kSuccess;
  return truncated ? kTruncation : 1;
}

int cmd_angular(const RunConfig& c, const std::string& state_file, int grid, std::ostream& out) {
  const io::StateRecord state = io::state_from_json(io::read_json(state_file));
  if (grid < 64) throw DomainError("angular: grid must have at least 64 points");
  const double norm = state.coeffs.norm();
  if (std::abs(norm - 1.0) > 1e-6) throw IoError("state file is not normalized (norm " + format_number(norm) + ")");
  const AngularDistribution dist = angular_distribution(state.coeffs, static_cast<std::size_t>(grid));
  io::write_text(fs::path(c.output_dir) / "angular.csv", io::angular_csv(dist));
  out << "integral=" << format_number(dist.integral()) << "\n";
  out << "forward_weight=" << format_number(dist.forward_weight()) << "\n";
  out << "orientation=" << format_number(orientation(state.coeffs)) << "\n";
  return kSuccess;
}

void add_common(CLI::App& sub, Flags& f, Options& o) {
  o.config_file = sub.add_option("--config", f.config_file, "JSON run configuration");
  o.output_dir = sub.add_option("--out-dir", f.output_dir, "Output directory");
}

void add_design_flags(CLI::App& sub, Flags& f, Options& o) {
  o.molecule = sub.add_option("--molecule", f.molecule, "Builtin name (LiH) or molecule JSON file");
  o.t_sub_trot = sub.add_option("--tsub", f.t_sub_trot, "Subpulse duration T_n in units of T_rot");
  o.spacing_factor = sub.add_option("--spacing", f.spacing_factor, "Center spacing in units of T_n");
  o.phi_1 = sub.add_option("--phi1", f.phi_1, "First subpulse phase (rad); default matches --delta-phi");
  o.delta_phi = sub.add_option("--delta-phi", f.delta_phi, "Target ladder phase step phi_1 - phi_0 (rad)");
}

void add_propagation_flags(CLI::App& sub, Flags& f, Options& o) {
  o.samples_per_cycle =
      sub.add_option("--samples-per-cycle", f.samples_per_cycle, "Steps per fastest carrier cycle");
  o.sample_step_trot = sub.add_option("--sample-step", f.sample_step_trot, "Observable sampling step (T_rot)");
  o.post_revivals = sub.add_option("--post", f.post_revivals, "Free evolution after the sequence (T_rot)");
  o.j_buffer = sub.add_option("--jbuffer", f.j_buffer, "Buffer states above J_max");
  o.method = sub.add_option("--method", f.method, "tdse or analytic");
}

}  // namespace

void apply_config(RunConfig& c, const json& j) {
  if (!j.is_object()) throw IoError("config file must hold a JSON object");
  try {
    if (j.contains("molecule")) c.molecule = j.at("molecule").get<std::string>();
    if (j.contains("j_max")) c.j_max = j.at("j_max").get<int>();
    if (j.contains("T_sub_trot")) c.t_sub_trot = j.at("T_sub_trot").get<double>();
    if (j.contains("spacing_factor")) c.spacing_factor = j.at("spacing_factor").get<double>();
    if (j.contains("phi_1")) c.phi_1 = j.at("phi_1").get<double>();
    if (j.contains("delta_phi")) c.delta_phi = j.at("delta_phi").get<double>();
    if (j.contains("samples_per_cycle")) c.samples_per_cycle = j.at("samples_per_cycle").get<double>();
    if (j.contains("sample_step_trot")) c.sample_step_trot = j.at("sample_step_trot").get<double>();
    if (j.contains("post_revivals")) c.post_revivals = j.at("post_revivals").get<double>();
    if (j.contains("j_buffer")) c.j_buffer = j.at("j_buffer").get<int>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
  } catch (const json::exception& e) {
    throw IoError(std::string("config file: ") + e.what());
  }
}

void validate(const RunConfig& c) {
  if (c.j_max < 1 || c.j_max > kMaxJ) {
    throw DomainError("j_max must lie in [1, 30], got " + std::to_string(c.j_max));
  }
  if (!(c.t_sub_trot > 0.0)) throw DomainError("T_sub must be positive");
  if (!(c.spacing_factor >= 4.0)) throw DomainError("spacing factor must be >= 4");
  if (!(c.samples_per_cycle > 0.0)) throw DomainError("samples per cycle must be positive");
  if (!(c.sample_step_trot > 0.0)) throw DomainError("sample step must be positive");
  if (c.post_revivals < 0.0) throw DomainError("post-sequence span must be >= 0");
  if (c.j_buffer < 0) throw DomainError("j_buffer must be >= 0");
  if (c.method != "tdse" && c.method != "analytic") {
    throw DomainError("method must be 'tdse' or 'analytic', got '" + c.method + "'");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and verify resonant pulse sequences for field-free molecular orientation",
               "rotctl"};
  app.require_subcommand(1);

  Flags f;
  std::vector<double> amplitudes;
  std::string pulse_file;
  std::string state_file;
  std::string jmax_list;
  bool with_coeffs = false;
  bool no_files = false;
  int grid = 512;

  Options opt_optimize;
  auto* optimize = app.add_subcommand("optimize", "Maximum orientation, amplitudes and phases for J_max");
  opt_optimize.j_max = optimize->add_option("--jmax", f.j_max, "Highest rotational state J_max");
  opt_optimize.delta_phi = optimize->add_option("--delta-phi", f.delta_phi, "Ladder phase step (rad)");
  optimize->add_flag("--no-files", no_files, "Print the table only");
  add_common(*optimize, f, opt_optimize);

  Options opt_design;
  auto* design = app.add_subcommand("design", "Build the pulse sequence; writes pulse.json and field.csv");
  opt_design.j_max = design->add_option("--jmax", f.j_max, "Highest rotational state J_max");
  design->add_option("--amplitudes", amplitudes, "Explicit target amplitudes c_0..c_N instead of the optimum")
      ->delimiter(',');
  add_design_flags(*design, f, opt_design);
  add_common(*design, f, opt_design);

  Options opt_prop;
  auto* prop = app.add_subcommand("propagate", "Propagate a pulse file; writes trajectory and series CSVs");
  prop->add_option("--pulse", pulse_file, "Pulse JSON written by 'design'")->required();
  prop->add_flag("--coeffs", with_coeffs, "Include re/im coefficient columns in trajectory.csv");
  add_propagation_flags(*prop, f, opt_prop);
  add_common(*prop, f, opt_prop);

  Options opt_sweep;
  auto* sweep = app.add_subcommand("sweep", "Design and propagate a list of J_max values");
  sweep->add_option("--jmax-list", jmax_list, "Comma list and ranges, e.g. 1-15 or 1,2,5")->required();
  add_design_flags(*sweep, f, opt_sweep);
  add_propagation_flags(*sweep, f, opt_sweep);
  add_common(*sweep, f, opt_sweep);

  Options opt_angular;
  auto* angular = app.add_subcommand("angular", "Angular probability density of a state file");
  angular->add_option("--state", state_file, "State JSON {t_au, coeffs, picture}")->required();
  angular->add_option("--grid", grid, "Number of theta grid points (>= 64)");
  add_common(*angular, f, opt_angular);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const Options& chosen = *optimize ? opt_optimize
                        : *design   ? opt_design
                        : *prop     ? opt_prop
                        : *sweep    ? opt_sweep
                                    : opt_angular;

  try {
    RunConfig config;
    try {
      config = resolve_config(f, chosen);
      if (*optimize && !given(chosen.j_max) && !given(chosen.config_file)) {
        throw DomainError("optimize: pass --jmax or a config file with j_max");
      }
      if (*design) {
        if (!amplitudes.empty()) {
          if (amplitudes.size() < 2) throw DomainError("design: need at least two amplitudes");
          config.j_max = static_cast<int>(amplitudes.size()) - 1;
        } else if (!given(chosen.j_max) && !given(chosen.config_file)) {
          throw DomainError("design: pass --jmax or --amplitudes");
        }
      }
    } catch (const DomainError& e) {
      err << "usage error: " << e.what() << "\n";
      return kUsage;
    }

    if (*optimize) return cmd_optimize(config, !no_files, out);
    if (*design) return cmd_design(config, amplitudes, out);
    if (*prop) return cmd_propagate(config, pulse_file, with_coeffs, out);
    if (*sweep) return cmd_sweep(config, jmax_list, out);
    if (*angular) return cmd_angular(config, state_file, grid, out);
  } catch (const InfeasibleTargetError& e) {
    err << "infeasible design: " << e.what() << "\n";
    return kInfeasible;
  } catch (const TruncationError& e) {
    err << "truncation: " << e.what() << "\n";
    err << "{\"event\":\"truncation_guard\",\"leakage\":" << format_number(e.leakage()) << "}\n";
    return kTruncation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}

}  // namespace rotctl::cli
