#include "ttp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ttp/densmat.hpp"

namespace ttp {
namespace {

constexpr double kMissing = -std::numeric_limits<double>::infinity();
constexpr double kSmallestOffset = 1e-13;
constexpr int kOffsetsPerDecade = 4;

struct Evaluator {
  const std::function<double(double)>& fn;
  double operator()(double x) const {
    const double v = fn(x);
    return std::isfinite(v) ? v : kMissing;
  }
};

Maximum golden(const Evaluator& eval, double a, double b, double tol, Maximum best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  for (const Maximum cand : {Maximum{c, fc}, Maximum{d, fd}})
    if (cand.value > best.value) best = cand;
  return best;
}

}  // namespace

Maximum maximize_grid_golden(const std::function<double(double)>& fn, double lo, double hi,
                             int grid, double tol) {
  if (!(hi > lo) || grid < 2) throw Error("invalid optimization interval");
  const Evaluator eval{fn};

  const double step = (hi - lo) / grid;
  Maximum best{lo, kMissing};
  int best_i = 0;
  for (int i = 0; i <= grid; ++i) {
    const double x = i == grid ? hi : lo + i * step;
    const double v = eval(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  if (best.value == kMissing) return best;

  const double a = lo + std::max(0, best_i - 1) * step;
  const double b = best_i + 1 >= grid ? hi : lo + (best_i + 1) * step;
  return golden(eval, a, b, tol, best);
}

Maximum maximize_grid_golden(const std::function<double(double)>& fn, double lo, double hi,
                             std::span<const double> seeds, int grid, double tol) {
  Maximum best = maximize_grid_golden(fn, lo, hi, grid, tol);
  const Evaluator eval{fn};
  const double step = (hi - lo) / grid;
  const double ratio = std::pow(10.0, -1.0 / kOffsetsPerDecade);

  std::vector<double> offsets;
  for (double d = 2.0 * step; d >= kSmallestOffset; d *= ratio) offsets.push_back(d);
  offsets.push_back(0.0);

  for (double seed : seeds) {
    if (!(seed >= lo && seed <= hi)) continue;
    for (int side : {-1, 1}) {
      Maximum local{seed, kMissing};
      std::size_t at = 0;
      for (std::size_t k = 0; k < offsets.size(); ++k) {
        const double x = std::clamp(seed + side * offsets[k], lo, hi);
        const double v = eval(x);
        if (v > local.value) {
          local = {x, v};
          at = k;
        }
      }
      if (local.value == kMissing) continue;
      const double outer = offsets[at == 0 ? 0 : at - 1];
      const double inner = at + 1 < offsets.size() ? offsets[at + 1] : 0.0;
      const double a = std::clamp(seed + side * outer, lo, hi);
      const double b = std::clamp(seed + side * inner, lo, hi);
      local = golden(eval, std::min(a, b), std::max(a, b), tol, local);
      if (local.value > best.value) best = local;
    }
  }
  return best;
}

}  // namespace ttp
