#pragma once

// Quasistatic quantum Otto cycle between two spectra. Node A is in
// equilibrium with the cold bath under spec_i, node C with the hot bath
// under spec_f; strokes run A -> B -> C -> D -> A.
//
// Sign convention: positive heat/work flows into the working medium.

#include <optional>
#include <span>
#include <string_view>

#include "otto/thermo.hpp"

namespace otto {

inline constexpr double kDefaultZeroTol = 1e-9;

struct CycleSpec {
  Spectrum spec_i;  // Hamiltonian in contact with the cold bath
  Spectrum spec_f;  // Hamiltonian in contact with the hot bath
  double tc = 1.0;
  double th = 1.0;
};

// Throws NonPositiveTemperature / BadTemperatures unless 0 < tc <= th.
void validate(const CycleSpec& cycle);

enum class OperatingMode { Engine, Refrigerator, Heater, Accelerator, Idle };

std::string_view to_string(OperatingMode mode);
std::optional<OperatingMode> parse_mode(std::string_view name);

struct CycleResult {
  double w_in = 0.0;   // A -> B
  double w_out = 0.0;  // C -> D
  double w = 0.0;
  double q_h = 0.0;    // B -> C
  double q_c = 0.0;    // D -> A
  OperatingMode mode = OperatingMode::Idle;
  std::optional<double> efficiency;  // Engine only
  std::optional<double> cop;         // Refrigerator only
};

// General probability-weighted stroke sums. These do not know about the
// spin model and serve as the reference for the closed forms below.
double stroke_work_general(std::span<const double> probs, std::span<const double> e_from,
                           std::span<const double> e_to);
double stroke_heat_general(std::span<const double> levels, std::span<const double> p_from,
                           std::span<const double> p_to);

// Closed forms for the XYZ + DM + KSEA medium.
double w_in(const CycleSpec& cycle);
double w_out(const CycleSpec& cycle);
double q_h(const CycleSpec& cycle);
double q_c(const CycleSpec& cycle);

// Sign-pattern classification on (q_c, w, q_h). Any entry with |x| <= zero_tol
// gives Idle. The four sign patterns excluded by the first and second laws
// throw ForbiddenModePattern.
OperatingMode classify(double q_c, double w, double q_h, double zero_tol = kDefaultZeroTol);

CycleResult analyze(const CycleSpec& cycle, double zero_tol = kDefaultZeroTol);

// The same cycle traversed backwards (A -> D -> C -> B -> A): every stroke
// changes sign, the first adiabat is the old C -> D one.
CycleResult reversed(const CycleResult& forward, double zero_tol = kDefaultZeroTol);
CycleResult analyze_reversed(const CycleSpec& cycle, double zero_tol = kDefaultZeroTol);

double carnot_efficiency(double tc, double th);
double novikov_efficiency(double tc, double th);

}  // namespace otto
