#pragma once

// Local extrema of the total work over a control plane and the efficiency
// of the engine at maximum work output.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "otto/regimes.hpp"

namespace otto {

enum class Objective {
  MinimizeWork,  // engine side: most negative W
  MaximizeWork,  // refrigerator side: search -W, report CoP
};

inline constexpr double kDefaultRefineTol = 1e-7;

struct OptimizationProblem {
  ControlPlane plane;
  Window window;
  std::size_t grid = kDefaultResolution;
  double refine_tol = kDefaultRefineTol;
  double zero_tol = kDefaultZeroTol;
  Objective objective = Objective::MinimizeWork;
};

void validate(const OptimizationProblem& problem);

struct Extremum {
  Point location;
  double w = 0.0;
  double q_h = 0.0;
  double q_c = 0.0;
  OperatingMode mode = OperatingMode::Idle;
  std::optional<double> efficiency;
  std::optional<double> cop;
  int basin_id = 0;  // 1-based rank after sorting by w
};

// Compass search: try +-step along each axis, move to the best strict
// improvement, halve the step when none exists. Stops when both steps are
// below tol. Points outside `window` are never evaluated. Every accepted
// value is appended to `trace` when given.
Point pattern_search(const std::function<double(double, double)>& f, Point start, double step_x,
                     double step_y, double tol, const Window& window,
                     std::vector<double>* trace = nullptr);

// Newton iterations with a central-difference gradient and Hessian, run
// after pattern_search. A step is taken only when it stays in the window,
// is shorter than max_step and does not increase f; otherwise the point
// is returned unchanged.
Point newton_polish(const std::function<double(double, double)>& f, Point start, double h,
                    double max_step, const Window& window, std::vector<double>* trace = nullptr);

// Objective values on the coarse grid, row-major (iy * grid + ix). The
// OpenMP kernel and the serial reference return identical vectors.
std::vector<double> coarse_scan(const OptimizationProblem& problem);
std::vector<double> coarse_scan_serial(const OptimizationProblem& problem);

// Interior local minima of the objective, refined and deduplicated, sorted
// by w (then location). For MaximizeWork the list holds maxima of W, most
// positive first. EmptyResult if no cell has the wanted sign of W, or if every
// candidate runs onto the window edge.
std::vector<Extremum> find_minima(const OptimizationProblem& problem);
std::vector<Extremum> find_minima_serial(const OptimizationProblem& problem);

struct MaxPowerReport {
  Extremum optimum;
  double eta_mp = 0.0;
  double eta_c = 0.0;
  double eta_n = 0.0;
};

// Global minimum of W and its efficiency next to Carnot and Novikov.
MaxPowerReport efficiency_at_max_power(const OptimizationProblem& problem);

struct Table1Row {
  double th = 0.0;
  double r1_i = 0.0;
  double r1_f = 0.0;
  double w = 0.0;
  double eta_mp = 0.0;
  double eta_c = 0.0;
  double eta_n = 0.0;
};

// Three-level engine optimum for each hot-bath temperature.
std::vector<Table1Row> table1(double tc, const std::vector<double>& th_list,
                              std::size_t grid = kDefaultResolution,
                              double refine_tol = kDefaultRefineTol);

}  // namespace otto
