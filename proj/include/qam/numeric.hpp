#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qam/errors.hpp"

namespace qam {

// Pairwise (tree) summation. Order-fixed, so results are reproducible and
// independent of how the caller assembled the terms.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = a;
    return xs;
  }
  const double step = (b - a) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = a + step * i;
  xs.back() = b;
  return xs;
}

struct OneSidedEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

// Richardson-extrapolated one-sided difference quotient with steps
// h_k = h0 * 2^-k. `quotient` maps a step to the raw first- or second-order
// one-sided difference; the tableau cancels the h, h^2, ... error terms that
// one-sided stencils carry. Throws Unstable when the extrapolation deltas
// never settle, which is the numerical signature of a missing derivative.
inline OneSidedEstimate richardson_extrapolate(
    const std::function<double(double)>& quotient, double h0, int max_rounds = 24) {
  constexpr int kMax = 32;
  if (max_rounds > kMax) max_rounds = kMax;
  static_assert(kMax <= 32);
  double tab[kMax][kMax];

  double h = h0;
  tab[0][0] = quotient(h);
  double best = tab[0][0];
  double best_err = std::abs(best) + 1.0;  // sentinel: anything improves it
  bool improved = false;

  for (int k = 1; k < max_rounds; ++k) {
    h *= 0.5;
    tab[k][0] = quotient(h);
    double factor = 2.0;
    for (int j = 1; j <= k; ++j) {
      tab[k][j] = (factor * tab[k][j - 1] - tab[k - 1][j - 1]) / (factor - 1.0);
      factor *= 2.0;
      const double err = std::max(std::abs(tab[k][j] - tab[k][j - 1]),
                                  std::abs(tab[k][j] - tab[k - 1][j - 1]));
      if (err < best_err) {
        best_err = err;
        best = tab[k][j];
        improved = true;
      }
    }
    if (best_err <= 1e-14 * std::max(1.0, std::abs(best))) break;
    // Roundoff has taken over once the diagonal deteriorates.
    if (k >= 2 && std::abs(tab[k][k] - tab[k - 1][k - 1]) >= 4.0 * best_err &&
        improved)
      break;
  }

  if (!improved || best_err > 1e-2 * std::max(1.0, std::abs(best)))
    throw Unstable("one-sided difference quotients did not converge");
  return {best, best_err};
}

}  // namespace qam
