#pragma once

// Conversions between laboratory units and atomic units (hbar = 1).
// Every computation inside the library runs in atomic units; these helpers
// are only used at the I/O boundary.

namespace rotctl::units {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kWavenumberToAu = 4.5563352529e-6;     // 1 cm^-1 in au angular frequency
inline constexpr double kDebyeToAu = 0.3934302014;             // 1 D in e*a0
inline constexpr double kAuTimeFs = 2.4188843266e-2;           // 1 au of time in fs
inline constexpr double kAuIntensityWcm2 = 3.50944506e16;      // I = k * E_au^2
inline constexpr double kAuFieldKvPerCm = 5.14220674763e6;     // 1 au of field in kV/cm

constexpr double wavenumber_to_au(double cm1) { return cm1 * kWavenumberToAu; }
constexpr double au_to_wavenumber(double au) { return au / kWavenumberToAu; }

constexpr double debye_to_au(double debye) { return debye * kDebyeToAu; }
constexpr double au_to_debye(double au) { return au / kDebyeToAu; }

constexpr double fs_to_au(double fs) { return fs / kAuTimeFs; }
constexpr double au_to_fs(double au) { return au * kAuTimeFs; }
constexpr double ps_to_au(double ps) { return fs_to_au(ps * 1e3); }
constexpr double au_to_ps(double au) { return au_to_fs(au) * 1e-3; }

constexpr double intensity_wcm2(double field_au) { return kAuIntensityWcm2 * field_au * field_au; }
constexpr double field_kv_per_cm(double field_au) { return field_au * kAuFieldKvPerCm; }

}  // namespace rotctl::units
