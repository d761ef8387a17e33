#include "rotctl/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rotctl/errors.hpp"
#include "rotctl/units.hpp"

namespace rotctl::io {

namespace {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw IoError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("field '") + key + "': " + e.what());
  }
}

void append_time_columns(std::string& out, double t, const Molecule& molecule) {
  out += format_number(units::au_to_ps(t));
  out += ',';
  out += format_number(t / molecule.revival_period_au());
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

json to_json(const Molecule& molecule) {
  return {{"name", molecule.name()}, {"B_cm1", molecule.b_cm1()}, {"mu0_debye", molecule.mu0_debye()}};
}

Molecule molecule_from_json(const json& j) {
  try {
    return Molecule(required<std::string>(j, "name"), required<double>(j, "B_cm1"),
                    required<double>(j, "mu0_debye"));
  } catch (const DomainError& e) {
    throw IoError(e.what());
  }
}

Molecule load_molecule(const std::filesystem::path& path) { return molecule_from_json(read_json(path)); }

Molecule resolve_molecule(const std::string& name_or_path) {
  std::string lower = name_or_path;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower.empty() || lower == "lih") return Molecule::lih();
  return load_molecule(name_or_path);
}

json to_json(const OrientationTarget& target) {
  return {{"j_max", target.j_max},
          {"lambda", target.lambda},
          {"c", target.amplitudes},
          {"phi", target.phases}};
}

json to_json(const PulseSequence& sequence) {
  json pulses = json::array();
  for (const auto& p : sequence.subpulses()) {
    pulses.push_back({{"n", p.n},
                      {"theta_rad", p.area},
                      {"E_au", p.amplitude},
                      {"omega_au", p.carrier},
                      {"tau_au", p.center},
                      {"T_au", p.duration},
                      {"phi_rad", p.phase}});
  }
  return {{"molecule", to_json(sequence.molecule())},
          {"subpulses", pulses},
          {"t_on_au", sequence.t_on()},
          {"t_off_au", sequence.t_off()}};
}

PulseSequence sequence_from_json(const json& j) {
  const Molecule molecule = molecule_from_json(required<json>(j, "molecule"));
  const json pulses = required<json>(j, "subpulses");
  if (!pulses.is_array()) throw IoError("'subpulses' must be an array");
  std::vector<Subpulse> subpulses;
  for (const auto& item : pulses) {
    Subpulse p;
    p.n = required<int>(item, "n");
    if (p.n < 1) throw IoError("subpulse index must be >= 1");
    p.area = required<double>(item, "theta_rad");
    p.amplitude = required<double>(item, "E_au");
    p.carrier = required<double>(item, "omega_au");
    p.center = required<double>(item, "tau_au");
    p.duration = required<double>(item, "T_au");
    p.phase = required<double>(item, "phi_rad");
    p.dipole = transition_dipole(molecule, p.n - 1);
    subpulses.push_back(p);
  }
  try {
    return PulseSequence(molecule, std::move(subpulses), required<double>(j, "t_on_au"),
                         required<double>(j, "t_off_au"));
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid pulse file: ") + e.what());
  }
}

json to_json(const StateRecord& state) {
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < state.coeffs.size(); ++i) {
    coeffs.push_back({state.coeffs(i).real(), state.coeffs(i).imag()});
  }
  return {{"t_au", state.t_au},
          {"coeffs", coeffs},
          {"picture", state.picture == Picture::Interaction ? "interaction" : "schrodinger"}};
}

StateRecord state_from_json(const json& j) {
  StateRecord s;
  s.t_au = required<double>(j, "t_au");
  const json coeffs = required<json>(j, "coeffs");
  if (!coeffs.is_array() || coeffs.empty()) throw IoError("'coeffs' must be a non-empty array");
  s.coeffs.resize(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& c = coeffs[i];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw IoError("each coefficient must be [re, im]");
    }
    s.coeffs(static_cast<Eigen::Index>(i)) = {c[0].get<double>(), c[1].get<double>()};
  }
  const std::string picture = j.value("picture", std::string("schrodinger"));
  if (picture == "interaction") {
    s.picture = Picture::Interaction;
  } else if (picture == "schrodinger") {
    s.picture = Picture::Schrodinger;
  } else {
    throw IoError("unknown picture '" + picture + "'");
  }
  return s;
}

json peak_report(const PeakStatistics& stats) {
  std::vector<double> spacings_ps;
  for (double d : stats.spacings) spacings_ps.push_back(units::au_to_ps(d));
  return {{"t_star_ps", units::au_to_ps(stats.t_star)}, {"max", stats.max}, {"spacings_ps", spacings_ps}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("cannot parse '" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string field_csv(const PulseSequence& sequence, double step_au) {
  if (!(step_au > 0.0)) throw DomainError("field_csv: step must be positive");
  std::string out = "t_ps,E_au,E_kV_per_cm\n";
  const auto count = static_cast<long>(std::floor((sequence.t_off() - sequence.t_on()) / step_au + 1e-9));
  for (long k = 0; k <= count; ++k) {
    const double t = sequence.t_on() + static_cast<double>(k) * step_au;
    const double e = field_amplitude(sequence, t);
    out += format_number(units::au_to_ps(t));
    out += ',';
    out += format_number(e);
    out += ',';
    out += format_number(units::field_kv_per_cm(e));
    out += '\n';
  }
  return out;
}

std::string series_csv(const ObservableSeries& series, const Molecule& molecule) {
  std::string out = "t_ps,t_over_Trot,value\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    append_time_columns(out, series.times[i], molecule);
    out += ',';
    out += format_number(series.values[i]);
    out += '\n';
  }
  return out;
}

std::string populations_csv(const Trajectory& trajectory, const Molecule& molecule) {
  std::string out = "t_ps,t_over_Trot";
  const auto n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  for (Eigen::Index j = 0; j < n; ++j) out += ",P" + std::to_string(j);
  out += '\n';
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    append_time_columns(out, trajectory.times[i], molecule);
    for (Eigen::Index j = 0; j < n; ++j) {
      out += ',';
      out += format_number(std::norm(trajectory.states[i](j)));
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory, const Molecule& molecule, bool with_coeffs) {
  std::string out = "t_ps,t_over_Trot";
  const auto n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  if (with_coeffs) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out += ",re" + std::to_string(j) + ",im" + std::to_string(j);
    }
  }
  out += ",norm\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    append_time_columns(out, trajectory.times[i], molecule);
    const auto& psi = trajectory.states[i];
    if (with_coeffs) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out += ',';
        out += format_number(psi(j).real());
        out += ',';
        out += format_number(psi(j).imag());
      }
    }
    out += ',';
    out += format_number(psi.norm());
    out += '\n';
  }
  return out;
}

std::string angular_csv(const AngularDistribution& distribution) {
  std::string out = "theta_rad,density\n";
  for (std::size_t i = 0; i < distribution.theta.size(); ++i) {
    out += format_number(distribution.theta[i]);
    out += ',';
    out += format_number(distribution.density[i]);
    out += '\n';
  }
  return out;
}

}  // namespace rotctl::io
