#include "otto/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "otto/error.hpp"

namespace otto {

namespace {

void require_temperatures(double tc, double th) {
  require_positive_temperature(tc, "tc");
  require_positive_temperature(th, "th");
}

void require_ordered(double tc, double th) {
  require_temperatures(tc, th);
  if (tc > th) {
    std::ostringstream msg;
    msg << "require tc <= th, got tc=" << tc << " th=" << th;
    throw Error(ErrorCode::BadTemperatures, msg.str());
  }
}

// sinh(x/T) / (cosh(x/T) + cosh(r/T))
double sinh_fraction(double x, double r, double t) {
  const double a = x / t;
  const double b = r / t;
  return std::tanh(a) / (1.0 + std::exp(log_cosh(b) - log_cosh(a)));
}

// (r1 sinh(x/T) + r2 sinh(r2/T)) / (cosh(x/T) + cosh(r2/T))
double heat_fraction(double r1, double x, double r2, double t) {
  return r1 * sinh_fraction(x, r2, t) + r2 * sinh_fraction(r2, x, t);
}

}  // namespace

CycleSpec to_cycle(const ThreeLevelCase& c) {
  return {Spectrum(0.0, c.r1_i, 0.0), Spectrum(0.0, c.r1_f, 0.0), c.tc, c.th};
}

CycleSpec to_cycle(const R2ConstCase& c) {
  return {Spectrum(0.0, c.r1_i, c.r2), Spectrum(0.0, c.r1_f, c.r2), c.tc, c.th};
}

CycleSpec to_cycle(const JzCase& c) {
  return {Spectrum(c.jz_i, c.r1, c.r2), Spectrum(c.jz_f, c.r1, c.r2), c.tc, c.th};
}

// ---- three-level -----------------------------------------------------------

double w_three_level(const ThreeLevelCase& c) {
  require_temperatures(c.tc, c.th);
  return (c.r1_f - c.r1_i) * (std::tanh(c.r1_f / (2.0 * c.th)) - std::tanh(c.r1_i / (2.0 * c.tc)));
}

double q_h_three_level(const ThreeLevelCase& c) {
  require_temperatures(c.tc, c.th);
  return c.r1_f * (std::tanh(c.r1_i / (2.0 * c.tc)) - std::tanh(c.r1_f / (2.0 * c.th)));
}

double q_c_three_level(const ThreeLevelCase& c) {
  require_temperatures(c.tc, c.th);
  return c.r1_i * (std::tanh(c.r1_f / (2.0 * c.th)) - std::tanh(c.r1_i / (2.0 * c.tc)));
}

double eta_three_level(const ThreeLevelCase& c) {
  require_ordered(c.tc, c.th);
  const double ratio = c.th / c.tc;
  if (c.r1_i > 0.0 && c.r1_f >= c.r1_i && c.r1_f < ratio * c.r1_i) {
    return 1.0 - c.r1_i / c.r1_f;
  }
  if (c.r1_i > 0.0 && c.r1_f > 0.0 && c.r1_f < c.r1_i / ratio) {
    return 1.0 - c.r1_f / c.r1_i;
  }
  std::ostringstream msg;
  msg << "(r1_i, r1_f) = (" << c.r1_i << ", " << c.r1_f << ") is not in an engine window";
  throw Error(ErrorCode::OutsideEngineWindow, msg.str());
}

NodeTemperatures node_temperatures(const ThreeLevelCase& c) {
  require_temperatures(c.tc, c.th);
  if (c.r1_i == 0.0 || c.r1_f == 0.0) {
    throw Error(ErrorCode::ZeroShift, "node temperatures need nonzero r1_i and r1_f");
  }
  return {c.tc * c.r1_f / c.r1_i, c.th * c.r1_i / c.r1_f};
}

ThreeLevelBoundaries three_level_boundaries(double tc, double th) {
  require_ordered(tc, th);
  return {1.0, th / tc, tc / th};
}

// ---- constant r2 -------------------------------------------------------------

double w_r2const(const R2ConstCase& c) {
  require_temperatures(c.tc, c.th);
  return (c.r1_f - c.r1_i) *
         (sinh_fraction(c.r1_f, c.r2, c.th) - sinh_fraction(c.r1_i, c.r2, c.tc));
}

double q_h_r2const(const R2ConstCase& c) {
  require_temperatures(c.tc, c.th);
  return heat_fraction(c.r1_f, c.r1_i, c.r2, c.tc) - heat_fraction(c.r1_f, c.r1_f, c.r2, c.th);
}

double q_c_r2const(const R2ConstCase& c) {
  require_temperatures(c.tc, c.th);
  return heat_fraction(c.r1_i, c.r1_f, c.r2, c.th) - heat_fraction(c.r1_i, c.r1_i, c.r2, c.tc);
}

double boundary_r2const(double r1_i, double r2, double tc, double th) {
  require_temperatures(tc, th);
  const double a = r1_i / tc;
  const double b = r2 / tc;
  const double gamma = sinh_fraction(r1_i, r2, tc);
  // 1 - gamma = (e^{-a} + cosh b) / (cosh a + cosh b), kept in log form for large a
  const double lcb = log_cosh(b);
  const double lca = log_cosh(a);
  const double hi_num = std::max(-a, lcb);
  const double log_num = hi_num + std::log(std::exp(-a - hi_num) + std::exp(lcb - hi_num));
  const double hi_den = std::max(lca, lcb);
  const double log_den = hi_den + std::log(std::exp(lca - hi_den) + std::exp(lcb - hi_den));
  const double log_one_minus_gamma = log_num - log_den;

  const double c = r2 / th;
  const double sh = std::sinh(c);
  const double arg = gamma * std::cosh(c) + std::sqrt(1.0 + gamma * gamma * sh * sh);
  return th * (std::log(arg) - log_one_minus_gamma);
}

double kappa(double r2, double tc, double th) {
  require_temperatures(tc, th);
  return th / tc * std::exp(2.0 * (log_cosh(r2 / (2.0 * th)) - log_cosh(r2 / (2.0 * tc))));
}

double critical_r2(double tc, double th) {
  require_ordered(tc, th);
  if (tc == th) throw Error(ErrorCode::NoRoot, "kappa is identically 1 when tc == th");
  double lo = 0.0;
  double hi = 1.0;
  const double cap = 1e4 * th;
  while (kappa(hi, tc, th) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) throw Error(ErrorCode::NoRoot, "kappa does not cross 1 on the bracket");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (kappa(mid, tc, th) >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double critical_r2_closed_form_1_2() {
  const double s5 = std::sqrt(5.0);
  return 4.0 * std::log(0.5 * ((1.0 + s5) / std::sqrt(2.0) + std::sqrt(s5 - 1.0)));
}

std::vector<double> r2const_diagonal_crossings(double r2, double tc, double th, double upper,
                                               std::size_t grid) {
  require_temperatures(tc, th);
  if (!(upper > 0.0) || grid < 2) {
    throw Error(ErrorCode::InvalidArgument, "crossing scan needs upper > 0 and grid >= 2");
  }
  auto gap = [&](double x) { return boundary_r2const(x, r2, tc, th) - x; };
  std::vector<double> roots;
  double x_prev = upper / static_cast<double>(grid);
  double g_prev = gap(x_prev);
  if (g_prev == 0.0) roots.push_back(x_prev);
  for (std::size_t k = 2; k <= grid; ++k) {
    const double x = upper * static_cast<double>(k) / static_cast<double>(grid);
    const double g = gap(x);
    if (g == 0.0) {
      roots.push_back(x);
    } else if (g_prev != 0.0 && (g < 0.0) != (g_prev < 0.0)) {
      double lo = x_prev, hi = x, glo = g_prev;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    g_prev = g;
  }
  return roots;
}

// ---- varying jz --------------------------------------------------------------

namespace {

// (cosh(R1/T) e^{-Jz/T} - cosh(R2/T) e^{Jz/T}) / (cosh(R1/T) e^{-Jz/T} + cosh(R2/T) e^{Jz/T})
double population_imbalance(double jz, double r1, double r2, double t) {
  const double a = log_cosh(r1 / t) - jz / t;
  const double b = log_cosh(r2 / t) + jz / t;
  const double m = std::max(a, b);
  const double ea = std::exp(a - m);
  const double eb = std::exp(b - m);
  return (ea - eb) / (ea + eb);
}

}  // namespace

double w_jz(const JzCase& c) {
  require_temperatures(c.tc, c.th);
  return (c.jz_f - c.jz_i) * (population_imbalance(c.jz_i, c.r1, c.r2, c.tc) -
                              population_imbalance(c.jz_f, c.r1, c.r2, c.th));
}

JzLines jz_lines(double r1, double r2, double tc, double th) {
  require_temperatures(tc, th);
  JzLines lines;
  lines.diagonal = {1.0, 0.0};
  lines.zero_work.slope = th / tc;
  lines.zero_work.intercept =
      0.5 * th * (log_cosh(r1 / th) + log_cosh(r2 / tc) - log_cosh(r1 / tc) - log_cosh(r2 / th));
  return lines;
}

Point intersection(const Line& a, const Line& b) {
  if (a.slope == b.slope) throw Error(ErrorCode::NoRoot, "lines are parallel");
  const double x = (b.intercept - a.intercept) / (a.slope - b.slope);
  return {x, a(x)};
}

bool jz_zero_qh(double jz_f, double r1, double r2, double tc, double th, double& jz_i) {
  const double a1 = thermal_state(Spectrum(jz_f, r1, r2), th).u();
  const double num = jz_f - r1 * std::tanh(r1 / tc) - a1;
  const double den = jz_f + r2 * std::tanh(r2 / tc) + a1;
  if (den == 0.0) return false;
  const double ratio = num / den;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) return false;
  jz_i = 0.5 * tc * (log_cosh(r1 / tc) - log_cosh(r2 / tc) + std::log(ratio));
  return std::isfinite(jz_i);
}

bool jz_zero_qc(double jz_i, double r1, double r2, double tc, double th, double& jz_f) {
  const double a2 = thermal_state(Spectrum(jz_i, r1, r2), tc).u();
  const double num = jz_i - r1 * std::tanh(r1 / th) - a2;
  const double den = jz_i + r2 * std::tanh(r2 / th) + a2;
  if (den == 0.0) return false;
  const double ratio = num / den;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) return false;
  jz_f = 0.5 * th * (log_cosh(r1 / th) - log_cosh(r2 / th) + std::log(ratio));
  return std::isfinite(jz_f);
}

// ---- polylines ---------------------------------------------------------------

void validate(const Window& w) {
  for (double v : {w.x_min, w.x_max, w.y_min, w.y_max}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "window bounds must be finite");
  }
  if (!(w.x_max > w.x_min) || !(w.y_max > w.y_min)) {
    throw Error(ErrorCode::InvalidArgument, "window must have x_max > x_min and y_max > y_min");
  }
}

std::size_t Polyline::size() const {
  std::size_t n = 0;
  for (const auto& s : segments) n += s.size();
  return n;
}

double grid_coordinate(double lo, double hi, std::size_t k, std::size_t n) {
  if (k + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

namespace {

// Samples `point_at` on a uniform grid of the independent variable over
// [lo, hi]; invalid and out-of-window points split the polyline.
template <typename PointAt>
Polyline sample_curve(int id, std::string label, double lo, double hi, std::size_t samples,
                      const Window& window, PointAt point_at) {
  Polyline line;
  line.id = id;
  line.label = std::move(label);
  std::vector<Point> run;
  for (std::size_t k = 0; k < samples; ++k) {
    const double v = grid_coordinate(lo, hi, k, samples);
    Point p;
    if (point_at(v, p) && window.contains(p)) {
      run.push_back(p);
    } else {
      ++line.dropped;
      if (!run.empty()) line.segments.push_back(std::move(run));
      run.clear();
    }
  }
  if (!run.empty()) line.segments.push_back(std::move(run));
  return line;
}

Polyline line_through(int id, std::string label, const Line& l, const Window& w,
                      std::size_t samples) {
  return sample_curve(id, std::move(label), w.x_min, w.x_max, samples, w,
                      [&](double x, Point& p) {
                        p = {x, l(x)};
                        return true;
                      });
}

std::vector<Polyline> jz_curves(double r1, double r2, double tc, double th, const Window& w,
                                std::size_t samples) {
  const JzLines lines = jz_lines(r1, r2, tc, th);
  std::vector<Polyline> out;
  out.push_back(line_through(1, "W=0 diagonal", lines.diagonal, w, samples));
  out.push_back(line_through(2, "W=0 line", lines.zero_work, w, samples));
  out.push_back(sample_curve(3, "Q_h=0", w.y_min, w.y_max, samples, w, [&](double jz_f, Point& p) {
    double jz_i = 0.0;
    if (!jz_zero_qh(jz_f, r1, r2, tc, th, jz_i)) return false;
    p = {jz_i, jz_f};
    return true;
  }));
  out.push_back(sample_curve(4, "Q_c=0", w.x_min, w.x_max, samples, w, [&](double jz_i, Point& p) {
    double jz_f = 0.0;
    if (!jz_zero_qc(jz_i, r1, r2, tc, th, jz_f)) return false;
    p = {jz_i, jz_f};
    return true;
  }));
  return out;
}

void require_samples(std::size_t samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "boundary sampling needs >= 2 samples");
}

}  // namespace

std::vector<Polyline> jz_boundaries(double r1, double r2, double tc, double th,
                                    const Window& window, std::size_t samples) {
  require_temperatures(tc, th);
  validate(window);
  require_samples(samples);
  auto curves = jz_curves(r1, r2, tc, th, window, samples);
  for (const auto& c : curves) {
    if (c.size() == 0) {
      throw Error(ErrorCode::EmptyDomain,
                  "boundary " + std::to_string(c.id) + " (" + c.label + ") misses the window");
    }
  }
  return curves;
}

// ---- control planes ----------------------------------------------------------

std::string_view to_string(CaseFamily family) {
  switch (family) {
    case CaseFamily::ThreeLevel: return "three-level";
    case CaseFamily::R2Const: return "r2const";
    case CaseFamily::Jz: return "jz";
  }
  return "three-level";
}

void validate(const ControlPlane& plane) {
  require_ordered(plane.tc, plane.th);
  if (!std::isfinite(plane.r1) || !std::isfinite(plane.r2) || plane.r1 < 0.0 || plane.r2 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "fixed shifts r1, r2 must be finite and >= 0");
  }
}

CycleSpec ControlPlane::cycle_at(double x, double y) const {
  switch (family) {
    case CaseFamily::ThreeLevel: return to_cycle(ThreeLevelCase{x, y, tc, th});
    case CaseFamily::R2Const: return to_cycle(R2ConstCase{x, y, r2, tc, th});
    case CaseFamily::Jz: return to_cycle(JzCase{x, y, r1, r2, tc, th});
  }
  return {};
}

bool ControlPlane::mirrored_at(double x, double y) const {
  return family == CaseFamily::ThreeLevel && mirror_lower_half && y < x;
}

CycleResult ControlPlane::evaluate(double x, double y, double zero_tol) const {
  if (mirrored_at(x, y)) return analyze_reversed(cycle_at(y, x), zero_tol);
  return analyze(cycle_at(x, y), zero_tol);
}

double ControlPlane::work(double x, double y) const {
  switch (family) {
    case CaseFamily::ThreeLevel:
      if (mirrored_at(x, y)) return -w_three_level({y, x, tc, th});
      return w_three_level({x, y, tc, th});
    case CaseFamily::R2Const: return w_r2const({x, y, r2, tc, th});
    case CaseFamily::Jz: return w_jz({x, y, r1, r2, tc, th});
  }
  return 0.0;
}

std::vector<Polyline> boundaries(const ControlPlane& plane, const Window& window,
                                 std::size_t samples) {
  validate(plane);
  validate(window);
  require_samples(samples);
  std::vector<Polyline> out;
  switch (plane.family) {
    case CaseFamily::ThreeLevel: {
      const auto b = three_level_boundaries(plane.tc, plane.th);
      out.push_back(line_through(1, "W=0 diagonal", {b.diagonal, 0.0}, window, samples));
      out.push_back(line_through(2, "r1_f=(th/tc)r1_i", {b.upper, 0.0}, window, samples));
      if (plane.mirror_lower_half) {
        out.push_back(line_through(3, "r1_f=(tc/th)r1_i", {b.lower, 0.0}, window, samples));
      }
      break;
    }
    case CaseFamily::R2Const: {
      out.push_back(line_through(1, "W=0 diagonal", {1.0, 0.0}, window, samples));
      out.push_back(sample_curve(2, "W=0 curve", std::max(0.0, window.x_min), window.x_max,
                                 samples, window, [&](double x, Point& p) {
                                   p = {x, boundary_r2const(x, plane.r2, plane.tc, plane.th)};
                                   return std::isfinite(p.y);
                                 }));
      break;
    }
    case CaseFamily::Jz:
      out = jz_curves(plane.r1, plane.r2, plane.tc, plane.th, window, samples);
      break;
  }
  std::erase_if(out, [](const Polyline& p) { return p.size() == 0; });
  return out;
}

}  // namespace otto
