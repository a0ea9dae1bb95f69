#pragma once

// Closed-form special cases of the cycle, analytic mode boundaries and the
// 2D control planes they live in.

#include <cstddef>
#include <string>
#include <vector>

#include "otto/cycle.hpp"

namespace otto {

// jz = r2 = 0 at both endpoints: levels +-r1 and a doubly degenerate zero.
struct ThreeLevelCase {
  double r1_i = 0.0;
  double r1_f = 0.0;
  double tc = 1.0;
  double th = 1.0;
};

// jz = 0, r2 held fixed, r1 varied.
struct R2ConstCase {
  double r1_i = 0.0;
  double r1_f = 0.0;
  double r2 = 0.0;
  double tc = 1.0;
  double th = 1.0;
};

// r1 and r2 held fixed, jz varied.
struct JzCase {
  double jz_i = 0.0;
  double jz_f = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double tc = 1.0;
  double th = 1.0;
};

CycleSpec to_cycle(const ThreeLevelCase& c);
CycleSpec to_cycle(const R2ConstCase& c);
CycleSpec to_cycle(const JzCase& c);

// ---- three-level system --------------------------------------------------

double w_three_level(const ThreeLevelCase& c);
double q_h_three_level(const ThreeLevelCase& c);
double q_c_three_level(const ThreeLevelCase& c);

// Efficiency inside an engine window: 1 - r1_i/r1_f for
// r1_i <= r1_f < (th/tc) r1_i, and 1 - r1_f/r1_i on the mirrored window
// r1_f < (tc/th) r1_i (reversed swapped cycle). OutsideEngineWindow otherwise.
double eta_three_level(const ThreeLevelCase& c);

struct NodeTemperatures {
  double t_b;
  double t_d;
};

// Temperatures reached at B and D along the adiabats (R1/T is conserved).
NodeTemperatures node_temperatures(const ThreeLevelCase& c);

// Boundaries r1_f = slope * r1_i through the origin.
struct ThreeLevelBoundaries {
  double diagonal = 1.0;  // curve 1
  double upper = 1.0;     // curve 2, th/tc
  double lower = 1.0;     // curve 3, tc/th
};

ThreeLevelBoundaries three_level_boundaries(double tc, double th);

// ---- constant r2 ----------------------------------------------------------

double w_r2const(const R2ConstCase& c);
double q_h_r2const(const R2ConstCase& c);
double q_c_r2const(const R2ConstCase& c);

// r1_f on the non-diagonal W = 0 curve as a function of r1_i.
double boundary_r2const(double r1_i, double r2, double tc, double th);

// Small-r1_i slope of boundary_r2const.
double kappa(double r2, double tc, double th);

// r2 at which kappa(r2, tc, th) = 1, by bisection to 1e-10.
double critical_r2(double tc, double th);

// Closed form of critical_r2 for the bath pair tc = 1, th = 2.
double critical_r2_closed_form_1_2();

// Positive r1_i at which the W = 0 curve crosses the diagonal again (the
// loop of the curve). Sign changes of boundary(r1_i) - r1_i are located on
// `grid` points over (0, upper] and refined by bisection.
std::vector<double> r2const_diagonal_crossings(double r2, double tc, double th,
                                               double upper = 20.0, std::size_t grid = 4096);

// ---- varying jz -------------------------------------------------------------

double w_jz(const JzCase& c);

// jz_f = slope * jz_i + intercept
struct Line {
  double slope = 1.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct JzLines {
  Line diagonal;   // curve 1
  Line zero_work;  // curve 2
};

JzLines jz_lines(double r1, double r2, double tc, double th);

// Crossing of the two W = 0 lines. NoRoot when they are parallel (tc == th).
Point intersection(const Line& a, const Line& b);

// Q_h = 0 curve: jz_i as a function of jz_f. Returns false outside the
// logarithm's domain.
bool jz_zero_qh(double jz_f, double r1, double r2, double tc, double th, double& jz_i);
// Q_c = 0 curve: jz_f as a function of jz_i.
bool jz_zero_qc(double jz_i, double r1, double r2, double tc, double th, double& jz_f);

// ---- boundaries as polylines -----------------------------------------------

struct Window {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  bool contains(const Point& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

void validate(const Window& w);

// A boundary curve sampled on a uniform grid of its independent variable.
// Samples outside the curve's domain or the window are dropped; the
// remaining runs of consecutive samples form the segments.
struct Polyline {
  int id = 0;  // 1-4, fixed per family
  std::string label;
  std::vector<std::vector<Point>> segments;
  std::size_t dropped = 0;

  std::size_t size() const;
};

inline constexpr std::size_t kDefaultBoundarySamples = 512;

// Four labelled curves for the jz plane. EmptyDomain if a curve has no
// point inside the window.
std::vector<Polyline> jz_boundaries(double r1, double r2, double tc, double th,
                                    const Window& window,
                                    std::size_t samples = kDefaultBoundarySamples);

// ---- control planes ---------------------------------------------------------

enum class CaseFamily { ThreeLevel, R2Const, Jz };

std::string_view to_string(CaseFamily family);

// A 2D plane of cycles: x is the control value at the cold contact, y the
// value at the hot contact. The fixed parameters not used by the family are
// ignored.
struct ControlPlane {
  CaseFamily family = CaseFamily::ThreeLevel;
  double r1 = 0.0;  // Jz family
  double r2 = 0.0;  // R2Const and Jz families
  double tc = 1.0;
  double th = 2.0;
  // ThreeLevel only: below the diagonal report the reversed traversal of
  // the cycle with swapped endpoints, the convention under which the
  // lower half splits into refrigerator and engine wedges.
  bool mirror_lower_half = true;

  CycleSpec cycle_at(double x, double y) const;
  bool mirrored_at(double x, double y) const;
  CycleResult evaluate(double x, double y, double zero_tol = kDefaultZeroTol) const;
  double work(double x, double y) const;
};

void validate(const ControlPlane& plane);

std::vector<Polyline> boundaries(const ControlPlane& plane, const Window& window,
                                 std::size_t samples = kDefaultBoundarySamples);

// ---- region maps ------------------------------------------------------------

struct Cell {
  double x = 0.0;
  double y = 0.0;
  OperatingMode mode = OperatingMode::Idle;
  double w = 0.0;
};

struct RegionMap {
  ControlPlane plane;
  Window window;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<Cell> cells;  // row-major: index = iy * nx + ix
  std::vector<Polyline> boundaries;

  const Cell& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
};

inline constexpr std::size_t kDefaultResolution = 256;

// Grid node k of n on [lo, hi], endpoints included.
double grid_coordinate(double lo, double hi, std::size_t k, std::size_t n);

// OpenMP-parallel cell evaluation; output does not depend on the number of
// threads.
RegionMap region_map(const ControlPlane& plane, const Window& window,
                     std::size_t nx = kDefaultResolution, std::size_t ny = kDefaultResolution,
                     double zero_tol = kDefaultZeroTol,
                     std::size_t boundary_samples = kDefaultBoundarySamples);

// Single-threaded reference for region_map.
RegionMap region_map_serial(const ControlPlane& plane, const Window& window,
                            std::size_t nx = kDefaultResolution,
                            std::size_t ny = kDefaultResolution,
                            double zero_tol = kDefaultZeroTol,
                            std::size_t boundary_samples = kDefaultBoundarySamples);

}  // namespace otto
