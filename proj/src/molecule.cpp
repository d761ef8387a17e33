#include "rotctl/molecule.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rotctl/errors.hpp"
#include "rotctl/units.hpp"

namespace rotctl {

namespace {

void require_nonnegative(int j, const char* op) {
  if (j < 0) {
    throw DomainError(std::string(op) + ": rotational quantum number must be >= 0, got " +
                      std::to_string(j));
  }
}

}  // namespace

Molecule::Molecule(std::string name, double b_cm1, double mu0_debye)
    : name_(std::move(name)),
      b_cm1_(b_cm1),
      mu0_debye_(mu0_debye),
      b_au_(units::wavenumber_to_au(b_cm1)),
      mu0_au_(units::debye_to_au(mu0_debye)) {
  if (!(b_cm1 > 0.0) || !std::isfinite(b_cm1)) {
    throw DomainError("molecule '" + name_ + "': rotational constant must be positive");
  }
  if (!(mu0_debye > 0.0) || !std::isfinite(mu0_debye)) {
    throw DomainError("molecule '" + name_ + "': dipole moment must be positive");
  }
}

Molecule Molecule::lih() { return Molecule("LiH", 7.513, 5.88); }

double Molecule::revival_period_au() const noexcept { return units::kPi / b_au_; }

double rotational_energy(const Molecule& molecule, int j) {
  require_nonnegative(j, "rotational_energy");
  return molecule.b_au() * j * (j + 1.0);
}

double transition_frequency(const Molecule& molecule, int j) {
  require_nonnegative(j, "transition_frequency");
  return 2.0 * molecule.b_au() * (j + 1.0);
}

double cos_matrix_element(int j) {
  require_nonnegative(j, "cos_matrix_element");
  const double jd = j;
  return (jd + 1.0) / std::sqrt((2.0 * jd + 3.0) * (2.0 * jd + 1.0));
}

double transition_dipole(double mu0_au, int j) { return mu0_au * cos_matrix_element(j); }

double transition_dipole(const Molecule& molecule, int j) {
  return transition_dipole(molecule.mu0_au(), j);
}

}  // namespace rotctl
