#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rotctl/magnus.hpp"
#include "rotctl/molecule.hpp"
#include "rotctl/observables.hpp"
#include "rotctl/optimizer.hpp"
#include "rotctl/pulse.hpp"
#include "rotctl/tdse.hpp"

// File formats. JSON via nlohmann::json; CSV floats are written with 12
// significant digits so that identical inputs give byte-identical files.

namespace rotctl::io {

using nlohmann::json;

std::string format_number(double value);

json to_json(const Molecule& molecule);
Molecule molecule_from_json(const json& j);
Molecule load_molecule(const std::filesystem::path& path);
/// "LiH" (case-insensitive) or a path to a molecule file.
Molecule resolve_molecule(const std::string& name_or_path);

json to_json(const OrientationTarget& target);

json to_json(const PulseSequence& sequence);
PulseSequence sequence_from_json(const json& j);

struct StateRecord {
  double t_au = 0.0;
  Eigen::VectorXcd coeffs;
  Picture picture = Picture::Schrodinger;
};

json to_json(const StateRecord& state);
StateRecord state_from_json(const json& j);

json peak_report(const PeakStatistics& stats);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Columns t_ps, E_au, E_kV_per_cm on a uniform grid over [t_on, t_off].
std::string field_csv(const PulseSequence& sequence, double step_au);

/// Columns t_ps, t_over_Trot, value.
std::string series_csv(const ObservableSeries& series, const Molecule& molecule);

/// Columns t_ps, t_over_Trot, then P0..Pn.
std::string populations_csv(const Trajectory& trajectory, const Molecule& molecule);

/// Columns t_ps, t_over_Trot, optional reJ/imJ per basis state, norm.
std::string trajectory_csv(const Trajectory& trajectory, const Molecule& molecule, bool with_coeffs);

/// Columns theta_rad, density.
std::string angular_csv(const AngularDistribution& distribution);

}  // namespace rotctl::io
