#include <cstddef>
#include <exception>
#include <limits>

#include "otto/error.hpp"
#include "otto/regimes.hpp"

namespace otto {

namespace {

RegionMap prepare(const ControlPlane& plane, const Window& window, std::size_t nx,
                  std::size_t ny, double zero_tol) {
  validate(plane);
  validate(window);
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 2 per axis");
  if (!(zero_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_tol must be >= 0");
  if (plane.family != CaseFamily::Jz && (window.x_min < 0.0 || window.y_min < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "r1 windows must lie in the quadrant r1 >= 0");
  }
  RegionMap map;
  map.plane = plane;
  map.window = window;
  map.nx = nx;
  map.ny = ny;
  map.cells.resize(nx * ny);
  return map;
}

void fill_cell(RegionMap& map, std::size_t index, double zero_tol) {
  const std::size_t ix = index % map.nx;
  const std::size_t iy = index / map.nx;
  Cell& cell = map.cells[index];
  cell.x = grid_coordinate(map.window.x_min, map.window.x_max, ix, map.nx);
  cell.y = grid_coordinate(map.window.y_min, map.window.y_max, iy, map.ny);
  const CycleResult r = map.plane.evaluate(cell.x, cell.y, zero_tol);
  cell.mode = r.mode;
  cell.w = r.w;
}

}  // namespace

RegionMap region_map_serial(const ControlPlane& plane, const Window& window, std::size_t nx,
                            std::size_t ny, double zero_tol, std::size_t boundary_samples) {
  RegionMap map = prepare(plane, window, nx, ny, zero_tol);
  for (std::size_t i = 0; i < map.cells.size(); ++i) fill_cell(map, i, zero_tol);
  map.boundaries = boundaries(plane, window, boundary_samples);
  return map;
}

RegionMap region_map(const ControlPlane& plane, const Window& window, std::size_t nx,
                     std::size_t ny, double zero_tol, std::size_t boundary_samples) {
  RegionMap map = prepare(plane, window, nx, ny, zero_tol);
  const auto n = static_cast<std::ptrdiff_t>(map.cells.size());

  // Exceptions cannot leave an OpenMP region; keep the one from the lowest
  // cell index so the reported error does not depend on scheduling.
  std::ptrdiff_t failed_at = std::numeric_limits<std::ptrdiff_t>::max();
  std::exception_ptr failure;

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fill_cell(map, static_cast<std::size_t>(i), zero_tol);
    } catch (...) {
#pragma omp critical(otto_region_map_failure)
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  map.boundaries = boundaries(plane, window, boundary_samples);
  return map;
}

}  // namespace otto
