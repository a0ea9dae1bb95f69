#include "otto/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>

#include "otto/error.hpp"

namespace otto {

namespace {

double sense(const OptimizationProblem& p) {
  return p.objective == Objective::MinimizeWork ? 1.0 : -1.0;
}

double cell_x(const OptimizationProblem& p, std::size_t ix) {
  return grid_coordinate(p.window.x_min, p.window.x_max, ix, p.grid);
}

double cell_y(const OptimizationProblem& p, std::size_t iy) {
  return grid_coordinate(p.window.y_min, p.window.y_max, iy, p.grid);
}

// Seeds are interior cells not above any of their 8 neighbours and with
// an objective value below -zero_tol.
std::vector<std::size_t> seeds_from(const OptimizationProblem& p, const std::vector<double>& v,
                                    bool& any_signed) {
  const std::size_t n = p.grid;
  any_signed = false;
  for (double x : v) {
    if (x < -p.zero_tol) {
      any_signed = true;
      break;
    }
  }
  std::vector<std::size_t> seeds;
  for (std::size_t iy = 1; iy + 1 < n; ++iy) {
    for (std::size_t ix = 1; ix + 1 < n; ++ix) {
      const double c = v[iy * n + ix];
      if (!(c < -p.zero_tol)) continue;
      bool is_min = true;
      for (int dy = -1; dy <= 1 && is_min; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (v[(iy + dy) * n + (ix + dx)] < c) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) seeds.push_back(iy * n + ix);
    }
  }
  return seeds;
}

struct Refined {
  Point location;
  double value = 0.0;
  bool keep = false;
};

Refined refine_seed(const OptimizationProblem& p, std::size_t seed) {
  const double s = sense(p);
  auto f = [&](double x, double y) { return s * p.plane.work(x, y); };
  const double dx = (p.window.x_max - p.window.x_min) / static_cast<double>(p.grid - 1);
  const double dy = (p.window.y_max - p.window.y_min) / static_cast<double>(p.grid - 1);
  const Point start{cell_x(p, seed % p.grid), cell_y(p, seed / p.grid)};
  Refined r;
  r.location = pattern_search(f, start, dx, dy, p.refine_tol, p.window);
  const double h = 1e-5 * std::max(1.0, std::max(std::abs(r.location.x), std::abs(r.location.y)));
  r.location = newton_polish(f, r.location, h, std::max(dx, dy), p.window);
  r.value = f(r.location.x, r.location.y);
  const double edge = 10.0 * p.refine_tol;
  r.keep = r.value < -p.zero_tol && r.location.x > p.window.x_min + edge &&
           r.location.x < p.window.x_max - edge && r.location.y > p.window.y_min + edge &&
           r.location.y < p.window.y_max - edge;
  return r;
}

std::vector<Extremum> assemble(const OptimizationProblem& p, std::vector<Refined> refined) {
  std::erase_if(refined, [](const Refined& r) { return !r.keep; });
  std::sort(refined.begin(), refined.end(), [](const Refined& a, const Refined& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.location.x != b.location.x) return a.location.x < b.location.x;
    return a.location.y < b.location.y;
  });

  const double radius = 10.0 * p.refine_tol;
  std::vector<Refined> unique;
  for (const auto& r : refined) {
    const bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const Refined& u) {
      return std::abs(u.location.x - r.location.x) <= radius &&
             std::abs(u.location.y - r.location.y) <= radius;
    });
    if (!duplicate) unique.push_back(r);
  }
  if (unique.empty()) {
    throw Error(ErrorCode::EmptyResult, "no interior local extremum in the window");
  }

  std::vector<Extremum> out;
  out.reserve(unique.size());
  int basin = 1;
  for (const auto& u : unique) {
    const CycleResult cr = p.plane.evaluate(u.location.x, u.location.y, p.zero_tol);
    Extremum e;
    e.location = u.location;
    e.w = cr.w;
    e.q_h = cr.q_h;
    e.q_c = cr.q_c;
    e.mode = cr.mode;
    e.efficiency = cr.efficiency;
    e.cop = cr.cop;
    e.basin_id = basin++;
    out.push_back(e);
  }
  return out;
}

void require_some(bool any_signed, const OptimizationProblem& p) {
  if (!any_signed) {
    throw Error(ErrorCode::EmptyResult, p.objective == Objective::MinimizeWork
                                            ? "no cell with W < 0 in the window"
                                            : "no cell with W > 0 in the window");
  }
}

}  // namespace

void validate(const OptimizationProblem& p) {
  validate(p.plane);
  validate(p.window);
  if (p.grid < 3) throw Error(ErrorCode::InvalidArgument, "coarse grid must be >= 3 per axis");
  if (!(p.refine_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "refine_tol must be > 0");
  if (!(p.zero_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_tol must be >= 0");
  if (p.plane.family != CaseFamily::Jz && (p.window.x_min < 0.0 || p.window.y_min < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "r1 windows must lie in the quadrant r1 >= 0");
  }
}

Point pattern_search(const std::function<double(double, double)>& f, Point start, double step_x,
                     double step_y, double tol, const Window& window, std::vector<double>* trace) {
  Point at = start;
  double best = f(at.x, at.y);
  if (trace) trace->push_back(best);
  while (step_x >= tol || step_y >= tol) {
    const std::array<Point, 4> moves{{{at.x + step_x, at.y},
                                      {at.x - step_x, at.y},
                                      {at.x, at.y + step_y},
                                      {at.x, at.y - step_y}}};
    double candidate = best;
    Point next = at;
    for (const Point& m : moves) {
      if (!window.contains(m)) continue;
      const double v = f(m.x, m.y);
      if (v < candidate) {
        candidate = v;
        next = m;
      }
    }
    if (candidate < best) {
      best = candidate;
      at = next;
      if (trace) trace->push_back(best);
    } else {
      step_x *= 0.5;
      step_y *= 0.5;
    }
  }
  return at;
}

Point newton_polish(const std::function<double(double, double)>& f, Point start, double h,
                    double max_step, const Window& window, std::vector<double>* trace) {
  Point at = start;
  double value = f(at.x, at.y);
  for (int it = 0; it < 8; ++it) {
    const double fxp = f(at.x + h, at.y), fxm = f(at.x - h, at.y);
    const double fyp = f(at.x, at.y + h), fym = f(at.x, at.y - h);
    const double fpp = f(at.x + h, at.y + h), fpm = f(at.x + h, at.y - h);
    const double fmp = f(at.x - h, at.y + h), fmm = f(at.x - h, at.y - h);
    const double gx = (fxp - fxm) / (2.0 * h);
    const double gy = (fyp - fym) / (2.0 * h);
    const double hxx = (fxp - 2.0 * value + fxm) / (h * h);
    const double hyy = (fyp - 2.0 * value + fym) / (h * h);
    const double hxy = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    const double det = hxx * hyy - hxy * hxy;
    if (!(hxx > 0.0) || !(det > 0.0)) break;  // not locally convex
    const Point step{-(hyy * gx - hxy * gy) / det, -(hxx * gy - hxy * gx) / det};
    if (!(std::hypot(step.x, step.y) <= max_step)) break;
    const Point next{at.x + step.x, at.y + step.y};
    if (!window.contains(next)) break;
    const double v = f(next.x, next.y);
    if (!(v <= value)) break;
    at = next;
    value = v;
    if (trace) trace->push_back(value);
    if (std::hypot(step.x, step.y) < 1e-13) break;
  }
  return at;
}

std::vector<double> coarse_scan_serial(const OptimizationProblem& p) {
  validate(p);
  const double s = sense(p);
  std::vector<double> v(p.grid * p.grid);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = s * p.plane.work(cell_x(p, i % p.grid), cell_y(p, i / p.grid));
  }
  return v;
}

std::vector<double> coarse_scan(const OptimizationProblem& p) {
  validate(p);
  const double s = sense(p);
  std::vector<double> v(p.grid * p.grid);
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    v[k] = s * p.plane.work(cell_x(p, k % p.grid), cell_y(p, k / p.grid));
  }
  return v;
}

std::vector<Extremum> find_minima_serial(const OptimizationProblem& p) {
  const std::vector<double> values = coarse_scan_serial(p);
  bool any_signed = false;
  const auto seeds = seeds_from(p, values, any_signed);
  require_some(any_signed, p);
  std::vector<Refined> refined;
  refined.reserve(seeds.size());
  for (std::size_t seed : seeds) refined.push_back(refine_seed(p, seed));
  return assemble(p, std::move(refined));
}

std::vector<Extremum> find_minima(const OptimizationProblem& p) {
  const std::vector<double> values = coarse_scan(p);
  bool any_signed = false;
  const auto seeds = seeds_from(p, values, any_signed);
  require_some(any_signed, p);

  std::vector<Refined> refined(seeds.size());
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      refined[static_cast<std::size_t>(i)] = refine_seed(p, seeds[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(otto_refine_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(p, std::move(refined));
}

MaxPowerReport efficiency_at_max_power(const OptimizationProblem& problem) {
  OptimizationProblem p = problem;
  p.objective = Objective::MinimizeWork;
  const auto minima = find_minima(p);
  const auto engine = std::find_if(minima.begin(), minima.end(),
                                   [](const Extremum& e) { return e.efficiency.has_value(); });
  if (engine == minima.end()) throw Error(ErrorCode::EmptyResult, "no engine-mode minimum found");
  MaxPowerReport report;
  report.optimum = *engine;
  report.eta_mp = std::abs(engine->w) / engine->q_h;
  report.eta_c = carnot_efficiency(p.plane.tc, p.plane.th);
  report.eta_n = novikov_efficiency(p.plane.tc, p.plane.th);
  return report;
}

std::vector<Table1Row> table1(double tc, const std::vector<double>& th_list, std::size_t grid,
                              double refine_tol) {
  require_positive_temperature(tc, "tc");
  std::vector<Table1Row> rows;
  for (double th : th_list) {
    require_positive_temperature(th, "th");
    if (!(th > tc)) {
      throw Error(ErrorCode::BadTemperatures, "every th must exceed tc for an engine window");
    }
    OptimizationProblem p;
    p.plane.family = CaseFamily::ThreeLevel;
    p.plane.mirror_lower_half = false;
    p.plane.tc = tc;
    p.plane.th = th;
    p.window = {0.0, 4.0 * th, 0.0, 4.0 * th};
    p.grid = grid;
    p.refine_tol = refine_tol;
    const MaxPowerReport r = efficiency_at_max_power(p);
    rows.push_back({th, r.optimum.location.x, r.optimum.location.y, r.optimum.w, r.eta_mp,
                    r.eta_c, r.eta_n});
  }
  return rows;
}

}  // namespace otto
