#pragma once

// Spectrum and Gibbs statistics of the two-qubit XYZ working medium with
// DM and KSEA couplings. Units: k_B = hbar = 1, energies and temperatures
// dimensionless.

#include <array>

namespace otto {

using Levels = std::array<double, 4>;

// The seven raw Hamiltonian couplings.
struct SpinParams {
  double b1 = 0.0;  // z-field on qubit 1
  double b2 = 0.0;  // z-field on qubit 2
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double dz = 0.0;  // Dzyaloshinsky-Moriya, z component
  double gz = 0.0;  // KSEA strength

  bool finite() const;
};

// Reduced three-parameter description of the spectrum. r1 and r2 are the
// level shifts of the two pairs and are never negative.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(double jz, double r1, double r2);

  double jz() const { return jz_; }
  double r1() const { return r1_; }
  double r2() const { return r2_; }

  // Fixed order (jz + r1, jz - r1, -jz + r2, -jz - r2). Stroke sums pair
  // level n of one endpoint with level n of the other, so the order is
  // part of the contract.
  Levels energies() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  double jz_ = 0.0;
  double r1_ = 0.0;
  double r2_ = 0.0;
};

Spectrum reduce(const SpinParams& params);

inline Levels energies(const Spectrum& spec) { return spec.energies(); }

// Spectrum at temperature t in equilibrium with a bath.
class ThermalState {
 public:
  const Spectrum& spectrum() const { return spectrum_; }
  double temperature() const { return t_; }
  double beta() const { return 1.0 / t_; }
  double log_z() const { return log_z_; }
  double z() const;
  const Levels& p() const { return p_; }
  double u() const { return u_; }
  double s() const { return s_; }
  double free_energy() const { return -t_ * log_z_; }

 private:
  friend ThermalState thermal_state(const Spectrum& spec, double t);

  Spectrum spectrum_;
  double t_ = 1.0;
  double log_z_ = 0.0;
  Levels p_{};
  double u_ = 0.0;
  double s_ = 0.0;
};

// Throws NonPositiveTemperature for t <= 0 (or non-finite t).
ThermalState thermal_state(const Spectrum& spec, double t);

// Partition function from 2[e^{-jz/t} cosh(r1/t) + e^{jz/t} cosh(r2/t)],
// as a logarithm so large couplings do not overflow.
double log_partition_closed_form(const Spectrum& spec, double t);

// Closed-form Gibbs entropy S(T; jz, r1, r2).
double entropy_gibbs(const Spectrum& spec, double t);

// Three-level reduction (jz = r2 = 0): the entropy depends only on r1/t.
double entropy_three_level(double r1_over_t);

// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x);

void require_positive_temperature(double t, const char* what);

}  // namespace otto
