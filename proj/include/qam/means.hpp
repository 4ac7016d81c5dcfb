#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qam/generator.hpp"
#include "qam/sample.hpp"

namespace qam {

// Quasi-arithmetic mean: invert(g, sum w_i * g(a_i)). The result is clamped
// into [min a_i, max a_i], so internality holds exactly.
inline double quasi_mean(const Generator& g, const WeightedSample& s) {
  if (!s.inside(g.domain(), g.tol_domain()))
    throw DomainError("quasi_mean: sample point outside the generator domain");
  if (s.size() == 1) return s.points()[0];

  std::vector<double> terms(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    terms[i] = s.weights()[i] * g.eval_unchecked(s.points()[i]);
  const double avg = pairwise_sum(terms);
  const double m = g.invert(avg);
  return std::clamp(m, s.min_point(), s.max_point());
}

// p-th power mean of positive points; p = 0 gives the geometric mean.
// Evaluated in a factored form (max point out for p > 0, min point for
// p < 0) so large |p| cannot overflow.
inline double power_mean(double p, const WeightedSample& s) {
  if (!(s.min_point() > 0))
    throw DomainError("power_mean: points must be positive");
  if (s.size() == 1) return s.points()[0];

  std::vector<double> terms(s.size());
  if (p == 0.0) {
    for (std::size_t i = 0; i < s.size(); ++i)
      terms[i] = s.weights()[i] * std::log(s.points()[i]);
    return std::exp(pairwise_sum(terms));
  }
  const double ref = p > 0 ? s.max_point() : s.min_point();
  for (std::size_t i = 0; i < s.size(); ++i)
    terms[i] = s.weights()[i] * std::pow(s.points()[i] / ref, p);
  const double m = ref * std::pow(pairwise_sum(terms), 1.0 / p);
  return std::clamp(m, s.min_point(), s.max_point());
}

// Mean generated by exp(lambda * x), evaluated in log-shifted form. The
// lambda -> 0 limit is the arithmetic mean; callers wanting it should use
// power_mean(1, s) rather than a tiny lambda.
inline double exponential_mean(double lambda, const WeightedSample& s) {
  if (lambda == 0.0)
    throw InvalidParameter("exponential_mean: lambda must be nonzero");
  if (s.size() == 1) return s.points()[0];

  const double shift = lambda > 0 ? s.max_point() : s.min_point();
  std::vector<double> terms(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    terms[i] = s.weights()[i] * std::exp(lambda * (s.points()[i] - shift));
  const double m = shift + std::log(pairwise_sum(terms)) / lambda;
  return std::clamp(m, s.min_point(), s.max_point());
}

}  // namespace qam
