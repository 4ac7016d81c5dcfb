#pragma once

// The equivalent comparability criteria for quasi-arithmetic means. Each test
// probes one characterization of A^[f] <= A^[g] and reports a verdict plus
// the concrete probes behind it. All analytic tests work on the canonical
// increasing forms; sampled tests evaluate the means directly.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qam/config.hpp"
#include "qam/generator.hpp"
#include "qam/means.hpp"
#include "qam/rng.hpp"
#include "qam/sample.hpp"

namespace qam {

enum class Criterion {
  CompositionConvexity,
  PalesRatio,
  DerivativeRatio,
  MikusinskiIndex,
  SampledMeans,
  WeightedTwoPoint,
};

enum class CriterionVerdict {
  SupportsLE,
  SupportsGE,
  SupportsEqual,
  Refutes,
  NotApplicable,
};

inline const char* to_cstring(Criterion c) {
  switch (c) {
    case Criterion::CompositionConvexity: return "CompositionConvexity";
    case Criterion::PalesRatio: return "PalesRatio";
    case Criterion::DerivativeRatio: return "DerivativeRatio";
    case Criterion::MikusinskiIndex: return "MikusinskiIndex";
    case Criterion::SampledMeans: return "SampledMeans";
    case Criterion::WeightedTwoPoint: return "WeightedTwoPoint";
  }
  return "?";
}

inline const char* to_cstring(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::SupportsLE: return "SupportsLE";
    case CriterionVerdict::SupportsGE: return "SupportsGE";
    case CriterionVerdict::SupportsEqual: return "SupportsEqual";
    case CriterionVerdict::Refutes: return "Refutes";
    case CriterionVerdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

// One concrete probe: the inputs it touched, the two quantities it compared,
// and the normalized amount by which it violates the named direction.
struct ProbeRecord {
  std::vector<double> inputs;
  std::vector<double> weights;  // nonempty only for mean samples
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
  std::string direction;  // "le" or "ge"
};

struct CriterionReport {
  Criterion criterion{};
  CriterionVerdict verdict = CriterionVerdict::NotApplicable;
  double worst_le_violation = 0.0;  // normalized violation of "f <= g"
  double worst_ge_violation = 0.0;
  std::vector<ProbeRecord> evidence;
  std::string note;
};

namespace detail_criteria {

// Violations below tol support the direction; a refutation must exceed the
// hysteresis band. The in-between dead zone maps to NotApplicable.
inline CriterionVerdict classify(double viol_le, double viol_ge, double tol) {
  const bool sup_le = viol_le <= tol;
  const bool sup_ge = viol_ge <= tol;
  if (sup_le && sup_ge) return CriterionVerdict::SupportsEqual;
  if (sup_le) return CriterionVerdict::SupportsLE;
  if (sup_ge) return CriterionVerdict::SupportsGE;
  if (viol_le > kRefuteFactor * tol && viol_ge > kRefuteFactor * tol)
    return CriterionVerdict::Refutes;
  return CriterionVerdict::NotApplicable;
}

struct WorstTracker {
  double worst = 0.0;
  ProbeRecord probe;
  bool present = false;

  void offer(double violation, ProbeRecord p) {
    if (violation > worst) {
      worst = violation;
      probe = std::move(p);
      present = true;
    }
  }
};

inline void finish_report(CriterionReport& r, const WorstTracker& le,
                          const WorstTracker& ge, double tol) {
  r.worst_le_violation = le.worst;
  r.worst_ge_violation = ge.worst;
  r.verdict = classify(le.worst, ge.worst, tol);
  if (le.present) r.evidence.push_back(le.probe);
  if (ge.present) r.evidence.push_back(ge.probe);
}

inline void require_common_domain(const Generator& f, const Generator& g) {
  if (!(f.domain() == g.domain()))
    throw DomainError("criteria require generators on a common domain");
}

}  // namespace detail_criteria

// Condition: A^[f] <= A^[g] iff g∘f⁻¹ is convex (canonical increasing forms).
// Continuity makes midpoint convexity on a uniform value grid sufficient.
inline CriterionReport composition_convexity_test(const Generator& f,
                                                  const Generator& g,
                                                  const Config& cfg = {}) {
  using namespace detail_criteria;
  require_common_domain(f, g);
  const Generator fc = f.canonical();
  const Generator gc = g.canonical();

  CriterionReport rep;
  rep.criterion = Criterion::CompositionConvexity;

  const double a = fc.domain().clipped_lo(cfg.tol.domain);
  const double b = fc.domain().clipped_hi(cfg.tol.domain);
  const int n = cfg.grid_n;
  const auto ys = linspace(fc.eval_unchecked(a), fc.eval_unchecked(b), n);
  std::vector<double> phi(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i)
    phi[i] = gc.eval_unchecked(fc.invert(ys[i]));

  WorstTracker le, ge;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; j += 2) {
      const int m = (i + j) / 2;
      const double mid = phi[static_cast<std::size_t>(m)];
      const double avg = 0.5 * (phi[static_cast<std::size_t>(i)] +
                                phi[static_cast<std::size_t>(j)]);
      const double scale =
          std::max({1.0, std::abs(mid), std::abs(avg)});
      const double gap = (mid - avg) / scale;  // > 0 violates convexity
      if (gap > 0)
        le.offer(gap, {{ys[static_cast<std::size_t>(i)],
                        ys[static_cast<std::size_t>(j)]},
                       {},
                       mid,
                       avg,
                       gap,
                       "le"});
      else
        ge.offer(-gap, {{ys[static_cast<std::size_t>(i)],
                         ys[static_cast<std::size_t>(j)]},
                        {},
                        mid,
                        avg,
                        -gap,
                        "ge"});
    }
  }
  finish_report(rep, le, ge, cfg.tol.compare);
  return rep;
}

namespace detail_criteria {

inline void pales_probe(const std::array<double, 3>& x, double fx, double fy,
                        double fz, double gx, double gy, double gz,
                        double floor_f, double floor_g, WorstTracker& le,
                        WorstTracker& ge, long& skipped) {
  const double dfxz = fx - fz;
  const double dgxz = gx - gz;
  if (std::abs(dfxz) < floor_f || std::abs(dgxz) < floor_g) {
    ++skipped;  // degenerate triple
    return;
  }
  const double rf = (fx - fy) / dfxz;
  const double rg = (gx - gy) / dgxz;
  // A^[f] <= A^[g] requires rf >= rg; ratios are O(1) by construction.
  const double diff = rg - rf;
  if (diff > 0)
    le.offer(diff, {{x[0], x[1], x[2]}, {}, rf, rg, diff, "le"});
  else
    ge.offer(-diff, {{x[0], x[1], x[2]}, {}, rf, rg, -diff, "ge"});
}

}  // namespace detail_criteria

// Three-point divided-ratio condition: for x < y < z,
// (f(x)-f(y))/(f(x)-f(z)) >= (g(x)-g(y))/(g(x)-g(z)) iff A^[f] <= A^[g].
// Probes every ordered triple of a coarse grid plus seeded random triples.
inline CriterionReport pales_ratio_test(const Generator& f, const Generator& g,
                                        const Config& cfg = {}) {
  using namespace detail_criteria;
  require_common_domain(f, g);
  const Generator fc = f.canonical();
  const Generator gc = g.canonical();

  CriterionReport rep;
  rep.criterion = Criterion::PalesRatio;

  const auto xs = fc.domain().grid(cfg.pales_grid_n, cfg.tol.domain);
  std::vector<double> vf(xs.size()), vg(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vf[i] = fc.eval_unchecked(xs[i]);
    vg[i] = gc.eval_unchecked(xs[i]);
  }
  const double floor_f = cfg.tol.denominator * std::abs(vf.back() - vf.front());
  const double floor_g = cfg.tol.denominator * std::abs(vg.back() - vg.front());

  WorstTracker le, ge;
  long skipped = 0;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        pales_probe({xs[i], xs[j], xs[k]}, vf[i], vf[j], vf[k], vg[i], vg[j],
                    vg[k], floor_f, floor_g, le, ge, skipped);

  Rng rng(cfg.seed);
  const double a = fc.domain().clipped_lo(cfg.tol.domain);
  const double b = fc.domain().clipped_hi(cfg.tol.domain);
  for (int t = 0; t < cfg.pales_random_triples; ++t) {
    std::array<double, 3> x = {rng.uniform(a, b), rng.uniform(a, b),
                               rng.uniform(a, b)};
    std::sort(x.begin(), x.end());
    if (!(x[0] < x[1] && x[1] < x[2])) continue;
    pales_probe(x, fc.eval_unchecked(x[0]), fc.eval_unchecked(x[1]),
                fc.eval_unchecked(x[2]), gc.eval_unchecked(x[0]),
                gc.eval_unchecked(x[1]), gc.eval_unchecked(x[2]), floor_f,
                floor_g, le, ge, skipped);
  }

  finish_report(rep, le, ge, cfg.tol.compare);
  if (skipped > 0)
    rep.note = std::to_string(skipped) + " degenerate triples skipped";
  return rep;
}

// Derivative-ratio condition: with both generators increasing and first
// derivatives nonvanishing, A^[f] <= A^[g] iff f'(x)/g'(x) is non-increasing.
// Degenerate cases map to NotApplicable.
inline CriterionReport derivative_ratio_test(const Generator& f,
                                             const Generator& g,
                                             const Config& cfg = {}) {
  using namespace detail_criteria;
  require_common_domain(f, g);
  const Generator fc = f.canonical();
  const Generator gc = g.canonical();

  CriterionReport rep;
  rep.criterion = Criterion::DerivativeRatio;

  if (!fc.d1_available() || !gc.d1_available()) {
    rep.note = "first derivative unavailable";
    return rep;
  }
  const auto xs = fc.domain().grid(cfg.grid_n, cfg.tol.domain);
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!fc.has_derivative_at(xs[i], 1) || !gc.has_derivative_at(xs[i], 1)) {
      rep.note = "derivative missing at a grid point";
      return rep;
    }
    const double fp = fc.derivative(xs[i], 1);
    const double gp = gc.derivative(xs[i], 1);
    if (fp == 0.0 || gp == 0.0) {
      rep.note = "vanishing first derivative at x = " + expr::fmt_num(xs[i]);
      return rep;
    }
    r[i] = fp / gp;
  }

  WorstTracker le, ge;
  double run_min = r[0], run_max = r[0];
  double run_min_x = xs[0], run_max_x = xs[0];
  for (std::size_t j = 1; j < xs.size(); ++j) {
    const double scale = std::max({1.0, std::abs(r[j]), std::abs(run_min)});
    const double rise = (r[j] - run_min) / scale;  // violates non-increasing
    if (rise > 0)
      le.offer(rise, {{run_min_x, xs[j]}, {}, run_min, r[j], rise, "le"});
    const double scale2 = std::max({1.0, std::abs(r[j]), std::abs(run_max)});
    const double fall = (run_max - r[j]) / scale2;  // violates non-decreasing
    if (fall > 0)
      ge.offer(fall, {{run_max_x, xs[j]}, {}, run_max, r[j], fall, "ge"});
    if (r[j] < run_min) {
      run_min = r[j];
      run_min_x = xs[j];
    }
    if (r[j] > run_max) {
      run_max = r[j];
      run_max_x = xs[j];
    }
  }
  finish_report(rep, le, ge, cfg.tol.compare);
  return rep;
}

// The index f''(x)/f'(x) (negative of the Arrow-Pratt index).
inline double mikusinski_index(const Generator& f, double x) {
  if (!f.contains(x)) throw DomainError("mikusinski_index: x outside domain");
  if (!f.has_derivative_at(x, 1) || !f.has_derivative_at(x, 2))
    throw NotDifferentiable("mikusinski_index needs two derivatives at x");
  const double df = f.derivative(x, 1);
  if (df == 0.0) throw ZeroDerivative("mikusinski_index: f'(x) = 0");
  return f.derivative(x, 2) / df;
}

// Index condition: for C² generators with nonvanishing first derivative,
// A^[f] <= A^[g] iff f''/f' <= g''/g' everywhere. Prerequisite failures map
// to NotApplicable.
inline CriterionReport mikusinski_test(const Generator& f, const Generator& g,
                                       const Config& cfg = {}) {
  using namespace detail_criteria;
  require_common_domain(f, g);

  CriterionReport rep;
  rep.criterion = Criterion::MikusinskiIndex;
  if (!f.d2_available() || !g.d2_available()) {
    rep.note = "a generator is not C2 on the domain";
    return rep;
  }
  const auto xs = f.domain().grid(cfg.grid_n, cfg.tol.domain);

  WorstTracker le, ge;
  for (double x : xs) {
    const double f1 = f.derivative(x, 1);
    const double g1 = g.derivative(x, 1);
    if (f1 == 0.0 || g1 == 0.0) {
      rep = CriterionReport{};
      rep.criterion = Criterion::MikusinskiIndex;
      rep.note = "vanishing first derivative at x = " + expr::fmt_num(x);
      return rep;
    }
    const double idx_f = f.derivative(x, 2) / f1;
    const double idx_g = g.derivative(x, 2) / g1;
    const double scale = std::max({1.0, std::abs(idx_f), std::abs(idx_g)});
    const double diff = (idx_f - idx_g) / scale;
    if (diff > 0)
      le.offer(diff, {{x}, {}, idx_f, idx_g, diff, "le"});
    else
      ge.offer(-diff, {{x}, {}, idx_f, idx_g, -diff, "ge"});
  }
  finish_report(rep, le, ge, cfg.tol.compare);
  return rep;
}

namespace detail_criteria {

inline void mean_probe(const Generator& f, const Generator& g,
                       const WeightedSample& s, WorstTracker& le,
                       WorstTracker& ge) {
  const double mf = quasi_mean(f, s);
  const double mg = quasi_mean(g, s);
  const double scale = std::max({1.0, std::abs(mf), std::abs(mg)});
  const double diff = (mf - mg) / scale;
  if (diff > 0)
    le.offer(diff, {s.points(), s.weights(), mf, mg, diff, "le"});
  else
    ge.offer(-diff, {s.points(), s.weights(), mf, mg, -diff, "ge"});
}

}  // namespace detail_criteria

// Falsification by direct mean evaluation on seeded random weighted samples
// of lengths 2..max_sample_len. Evidence, not proof: supports are one-sided
// patterns, refutations carry replayable witnesses.
inline CriterionReport sampled_means_test(const Generator& f,
                                          const Generator& g,
                                          const Config& cfg = {}) {
  using namespace detail_criteria;
  require_common_domain(f, g);

  CriterionReport rep;
  rep.criterion = Criterion::SampledMeans;

  Rng rng(cfg.seed);
  const double a = f.domain().clipped_lo(cfg.tol.domain);
  const double b = f.domain().clipped_hi(cfg.tol.domain);

  WorstTracker le, ge;
  for (int t = 0; t < cfg.mean_samples; ++t) {
    const int n = rng.uniform_int(2, cfg.max_sample_len);
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (double& p : pts) p = rng.uniform(a, b);
    WeightedSample s = [&] {
      if (t % 2 == 0) return WeightedSample::equal_weights(std::move(pts));
      std::vector<double> w(pts.size());
      double total = 0;
      for (double& wi : w) {
        wi = 0.05 + rng.next_double();
        total += wi;
      }
      for (double& wi : w) wi /= total;
      return WeightedSample(std::move(pts), std::move(w));
    }();
    mean_probe(f, g, s, le, ge);
  }
  finish_report(rep, le, ge, cfg.tol.compare);
  return rep;
}

// The two-point weighted form: means f⁻¹(ξf(x) + (1-ξ)f(y)) over a ξ-grid
// and an abscissa grid.
inline CriterionReport weighted_two_point_test(const Generator& f,
                                               const Generator& g,
                                               const Config& cfg = {}) {
  using namespace detail_criteria;
  require_common_domain(f, g);

  CriterionReport rep;
  rep.criterion = Criterion::WeightedTwoPoint;

  const auto xs = f.domain().grid(cfg.two_point_grid_n, cfg.tol.domain);
  WorstTracker le, ge;
  for (int k = 1; k <= cfg.xi_count; ++k) {
    const double xi = static_cast<double>(k) / (cfg.xi_count + 1);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        mean_probe(f, g, WeightedSample::two_point(xs[i], xs[j], xi), le, ge);
  }
  finish_report(rep, le, ge, cfg.tol.compare);
  return rep;
}

}  // namespace qam
