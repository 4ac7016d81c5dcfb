#pragma once

#include <cstdint>

#include "qam/errors.hpp"

namespace qam {

// Tolerances are relative unless noted; every comparison scales them by
// max(1, |values involved|).
struct Tolerances {
  double invert = 1e-12;       // |f(x) - y| <= invert * max(1, |y|)
  double deriv = 1e-6;         // analytic vs central-difference agreement
  double mean = 1e-10;         // mean-level identities
  double compare = 1e-9;       // criterion inequalities
  double affine = 1e-9;        // affine-fit residual
  double domain = 1e-12;       // open-endpoint clipping floor
  double denominator = 1e-12;  // degenerate-triple cutoff (times f-span)
};

struct Config {
  Tolerances tol{};
  int grid_n = 257;  // validation / criterion grid, >= 17
  std::uint64_t seed = 0x51414D00ull;

  // Sampling-plan knobs.
  int pales_grid_n = 33;         // 33-point grid -> all ordered triples
  int pales_random_triples = 2000;
  int mean_samples = 1000;       // random weighted samples per direction probe
  int max_sample_len = 6;        // random sample lengths 2..max_sample_len
  int xi_count = 9;              // two-point weight grid xi = k/(xi_count+1)
  int two_point_grid_n = 17;     // two-point abscissa grid
  int pin_pairs = 5;             // (x0,x1) pin pairs in verify_sandwich
  int lambda_candidates = 64;    // hull bracketing grid size
  int envelope_samples = 513;

  void validate() const {
    if (grid_n < 17) throw InvalidParameter("grid_n must be >= 17");
    const double tols[] = {tol.invert, tol.deriv,  tol.mean,  tol.compare,
                           tol.affine, tol.domain, tol.denominator};
    for (double t : tols)
      if (!(t > 0)) throw InvalidParameter("tolerances must be positive");
  }
};

// Hysteresis band: a direction counts as refuted only when the violation
// exceeds refute_factor * tol.compare, preventing tolerance-boundary flapping.
inline constexpr double kRefuteFactor = 10.0;

}  // namespace qam
