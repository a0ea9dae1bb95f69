#pragma once

// Probes both sides of every boundary sample along the local normal and
// checks that the operating mode differs.

#include <cmath>
#include <cstddef>

#include "otto/error.hpp"
#include "otto/regimes.hpp"

namespace otto::testing {

struct FlipTally {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // probe off the window, or Idle on one side
  std::size_t failed = 0;
};

inline FlipTally boundary_flips(const ControlPlane& plane, const Window& window,
                                const std::vector<Polyline>& lines, double delta) {
  FlipTally tally;
  for (const Polyline& line : lines) {
    for (const auto& seg : line.segments) {
      if (seg.size() < 2) continue;
      for (std::size_t k = 0; k < seg.size(); ++k) {
        const Point& a = seg[k == 0 ? 0 : k - 1];
        const Point& b = seg[k + 1 == seg.size() ? k : k + 1];
        const double tx = b.x - a.x, ty = b.y - a.y;
        const double norm = std::hypot(tx, ty);
        if (norm == 0.0) {
          ++tally.skipped;
          continue;
        }
        const Point p = seg[k];
        const Point plus{p.x - delta * ty / norm, p.y + delta * tx / norm};
        const Point minus{p.x + delta * ty / norm, p.y - delta * tx / norm};
        if (!window.contains(plus) || !window.contains(minus)) {
          ++tally.skipped;
          continue;
        }
        try {
          const OperatingMode m1 = plane.evaluate(plus.x, plus.y).mode;
          const OperatingMode m2 = plane.evaluate(minus.x, minus.y).mode;
          if (m1 == OperatingMode::Idle || m2 == OperatingMode::Idle) {
            ++tally.skipped;
            continue;
          }
          ++tally.checked;
          if (m1 == m2) ++tally.failed;
        } catch (const Error&) {
          ++tally.checked;
          ++tally.failed;
        }
      }
    }
  }
  return tally;
}

}  // namespace otto::testing
