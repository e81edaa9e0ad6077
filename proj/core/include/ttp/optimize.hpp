#pragma once

#include <functional>
#include <span>

namespace ttp {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

inline constexpr int kPhiGridPoints = 4096;
inline constexpr double kPhiTolerance = 1e-12;

/// Dense grid of `grid` intervals over [lo, hi] (endpoints included), then
/// golden-section refinement inside the bracket around the best grid point.
/// Non-finite values of fn are treated as missing. Returns value = -inf if fn
/// is never finite.
Maximum maximize_grid_golden(const std::function<double(double)>& fn, double lo, double hi,
                             int grid = kPhiGridPoints, double tol = kPhiTolerance);

/// As above, plus a geometric scan on both sides of each seed (offsets from the
/// grid spacing down to 1e-13) with golden refinement of the best offset. For
/// peaks narrower than the grid whose location is known in advance, such as
/// conditional fidelities next to a zero of the success rate.
Maximum maximize_grid_golden(const std::function<double(double)>& fn, double lo, double hi,
                             std::span<const double> seeds, int grid = kPhiGridPoints,
                             double tol = kPhiTolerance);

}  // namespace ttp
