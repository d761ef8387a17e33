#pragma once

#include <string>

namespace rotctl {

/// Linear polar rigid rotor described by its rotational constant and
/// permanent dipole moment. Input values are spectroscopic units; the
/// accessors with an `_au` suffix return atomic units.
class Molecule {
 public:
  Molecule(std::string name, double b_cm1, double mu0_debye);

  /// LiH: B = 7.513 cm^-1, mu0 = 5.88 D.
  static Molecule lih();

  const std::string& name() const noexcept { return name_; }
  double b_cm1() const noexcept { return b_cm1_; }
  double mu0_debye() const noexcept { return mu0_debye_; }

  double b_au() const noexcept { return b_au_; }
  double mu0_au() const noexcept { return mu0_au_; }

  /// Full revival period pi / B.
  double revival_period_au() const noexcept;

  bool operator==(const Molecule&) const = default;

 private:
  std::string name_;
  double b_cm1_;
  double mu0_debye_;
  double b_au_;
  double mu0_au_;
};

/// omega_J = B J (J + 1).
double rotational_energy(const Molecule& molecule, int j);

/// omega_{J+1,J} = 2 B (J + 1).
double transition_frequency(const Molecule& molecule, int j);

/// <J+1|cos(theta)|J> for m = 0: (J+1) / sqrt((2J+3)(2J+1)).
double cos_matrix_element(int j);

/// mu_{J+1,J} = mu0 * M_{J+1,J} (atomic units).
double transition_dipole(const Molecule& molecule, int j);
double transition_dipole(double mu0_au, int j);

}  // namespace rotctl
