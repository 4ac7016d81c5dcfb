#pragma once

// Interval-type-set machinery: index windows, hull membership through an
// exponential bracketing family, and the normalized two-point-pinned
// envelopes a sandwiched generator must respect.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qam/compare.hpp"

namespace qam {

enum class Membership { Member, NotMember, NotApplicable };

inline const char* to_cstring(Membership m) {
  switch (m) {
    case Membership::Member: return "Member";
    case Membership::NotMember: return "NotMember";
    case Membership::NotApplicable: return "NotApplicable";
  }
  return "?";
}

// Base point x0 plus an interval U constraining f''(x0)/f'(x0).
struct MikusinskiWindow {
  double x0;
  Interval U;
};

// Member iff f is C²-capable near x0 with f'(x0) != 0 and its index lies in
// U (open/closed endpoints respected). Smoothness failures are
// NotApplicable, not NotMember: the grid cannot prove a derivative missing.
inline Membership window_membership(const Generator& f,
                                    const MikusinskiWindow& w,
                                    const Config& cfg = {}) {
  (void)cfg;
  if (!f.domain().interior(w.x0))
    throw DomainError("window_membership: x0 must be interior to the domain");
  if (!f.has_derivative_at(w.x0, 1) || !f.has_derivative_at(w.x0, 2))
    return Membership::NotApplicable;
  const double d = f.derivative(w.x0, 1);
  if (d == 0.0) return Membership::NotMember;
  const double idx = f.derivative(w.x0, 2) / d;
  const bool above = w.U.lo_open ? idx > w.U.lo : idx >= w.U.lo;
  const bool below = w.U.hi_open ? idx < w.U.hi : idx <= w.U.hi;
  return above && below ? Membership::Member : Membership::NotMember;
}

struct HullResult {
  bool member = false;
  double lambda_lo = 0.0;  // certificate, valid iff member
  double lambda_hi = 0.0;
  std::string note;
};

namespace detail_intervals {

// exp(lambda*x) has constant index lambda; lambda = 0 degenerates to the
// identity (arithmetic mean), which carries index 0.
inline Generator exponential_generator(double lambda, const Domain& d,
                                       const Config& cfg) {
  if (std::abs(lambda) < 1e-12)
    return make_generator(expr::make({expr::Identity{}}), d, cfg);
  return make_generator(expr::make({expr::Exp{lambda}}), d, cfg);
}

// Geometric/arithmetic hybrid grid of candidates inside U.
inline std::vector<double> lambda_candidates(const Interval& U, int n) {
  const double span = U.hi - U.lo;
  const double eps = std::max(1e-12, span * 1e-9);
  const double lo = U.lo_open ? U.lo + eps : U.lo;
  const double hi = U.hi_open ? U.hi - eps : U.hi;
  if (lo > hi) return {};
  if (lo == hi) return {lo};
  std::vector<double> cs = linspace(lo, hi, std::max(2, n - 16));
  double step = 0.5 * (hi - lo);
  for (int k = 0; k < 8; ++k) {
    step *= 0.5;
    cs.push_back(lo + step);
    cs.push_back(hi - step);
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

enum class Feasibility { Yes, No, Indeterminate };

}  // namespace detail_intervals

// Membership in the upward hull of the index window, certified by an
// exponential sandwich: lambda_lo <= lambda_hi in U with
// A^[exp(lambda_lo)] <= A^[h] <= A^[exp(lambda_hi)]. The exponential family
// is sufficient, not necessary, so the negative answer is Unknown
// (member == false), never a disproof.
inline HullResult hull_membership_exponential(const Generator& h,
                                              const MikusinskiWindow& w,
                                              const Config& cfg = {}) {
  using detail_intervals::Feasibility;
  const auto cands = detail_intervals::lambda_candidates(w.U, cfg.lambda_candidates);
  HullResult out;
  if (cands.empty()) {
    out.note = "empty candidate set (degenerate open window)";
    return out;
  }

  const auto feasible = [&](double lambda, bool lower_side) -> Feasibility {
    try {
      const Generator e =
          detail_intervals::exponential_generator(lambda, h.domain(), cfg);
      const ComparisonVerdict v =
          lower_side ? compare(e, h, cfg) : compare(h, e, cfg);
      if (v.relation == Relation::Less || v.relation == Relation::Equal)
        return Feasibility::Yes;
      return Feasibility::No;
    } catch (const CriteriaConflict&) {
      return Feasibility::Indeterminate;
    } catch (const NotMonotone&) {
      return Feasibility::Indeterminate;
    }
  };

  // Exponential means grow with lambda, so the feasible lower brackets form
  // a prefix of the candidate list and the upper brackets a suffix. A
  // definitive refusal ends the sweep; one bisection step refines the
  // boundary when earlier candidates were indeterminate.
  std::optional<double> lam_lo;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Feasibility fz = feasible(cands[i], /*lower_side=*/true);
    if (fz == Feasibility::Yes) {
      lam_lo = cands[i];
      if (i > 0) {
        const double mid = 0.5 * (cands[i - 1] + cands[i]);
        if (feasible(mid, true) == Feasibility::Yes) lam_lo = mid;
      }
      break;
    }
    if (fz == Feasibility::No) break;
  }
  if (!lam_lo) {
    out.note = "no feasible lower exponential bracket in U";
    return out;
  }

  std::optional<double> lam_hi;
  for (std::size_t i = cands.size(); i-- > 0;) {
    const Feasibility fz = feasible(cands[i], /*lower_side=*/false);
    if (fz == Feasibility::Yes) {
      lam_hi = cands[i];
      if (i + 1 < cands.size()) {
        const double mid = 0.5 * (cands[i] + cands[i + 1]);
        if (feasible(mid, false) == Feasibility::Yes) lam_hi = mid;
      }
      break;
    }
    if (fz == Feasibility::No) break;
  }
  if (!lam_hi) {
    out.note = "no feasible upper exponential bracket in U";
    return out;
  }
  if (!(*lam_lo <= *lam_hi)) {
    out.note = "bracket collapsed";
    return out;
  }
  out.member = true;
  out.lambda_lo = *lam_lo;
  out.lambda_hi = *lam_hi;
  return out;
}

// Pointwise bounds on a two-point-normalized middle generator, sampled on
// [x0, x1] with linear interpolation for queries.
struct Envelope {
  double x0 = 0.0;
  double x1 = 0.0;
  std::vector<double> xs;
  std::vector<double> lower;
  std::vector<double> upper;

  double lower_at(double x) const { return interp(lower, x); }
  double upper_at(double x) const { return interp(upper, x); }

 private:
  double interp(const std::vector<double>& ys, double x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + t * (ys[j] - ys[j - 1]);
  }
};

// Normalized value (v(x) - v(x0)) / (v(x1) - v(x0)); pins v to 0 (at x0)
// and 1 (at x1) exactly.
inline double pinned_normalize(const Generator& v, double x, double x0,
                               double x1) {
  const double v0 = v.eval_unchecked(x0);
  return (v.eval_unchecked(x) - v0) / (v.eval_unchecked(x1) - v0);
}

namespace detail_intervals {

inline Envelope make_envelope(const Generator& f, const Generator& g,
                              double x0, double x1, const Config& cfg) {
  Envelope env;
  env.x0 = x0;
  env.x1 = x1;
  env.xs = linspace(x0, x1, cfg.envelope_samples);
  env.lower.resize(env.xs.size());
  env.upper.resize(env.xs.size());
  for (std::size_t i = 0; i < env.xs.size(); ++i) {
    env.lower[i] = pinned_normalize(g, env.xs[i], x0, x1);
    env.upper[i] = pinned_normalize(f, env.xs[i], x0, x1);
  }
  return env;
}

}  // namespace detail_intervals

// Envelope every h with A^[f] <= A^[h] <= A^[g] must satisfy on (x0, x1)
// after the normalization h(x0) = 0, h(x1) = 1: the normalized g bounds from
// below, the normalized f from above (roles exchange beyond x1).
// Precondition: compare(f, g) is Less (or Equal, giving the degenerate
// envelope).
inline Envelope sandwich_envelope(const Generator& f, const Generator& g,
                                  double x0, double x1, const Config& cfg = {}) {
  if (!(f.domain() == g.domain()))
    throw DomainError("sandwich_envelope requires a common domain");
  if (!(x0 < x1) || !f.contains(x0) || !f.contains(x1))
    throw DomainError("sandwich_envelope requires x0 < x1 inside the domain");
  const ComparisonVerdict v = compare(f, g, cfg);
  if (v.relation != Relation::Less && v.relation != Relation::Equal)
    throw NotComparable("sandwich_envelope requires compare(f,g) = Less");
  return detail_intervals::make_envelope(f, g, x0, x1, cfg);
}

struct PinCheck {
  double x0 = 0.0;
  double x1 = 0.0;
  double worst_slack = 0.0;      // min over grid of distance inside the envelope
  double worst_tail_slack = 0.0; // same for the exchanged bound beyond x1
  bool pass = false;
};

struct SandwichReport {
  bool pass = false;
  bool order_ok = false;
  std::string relation_fh;
  std::string relation_hg;
  long samples_checked = 0;
  long sample_violations = 0;
  double worst_sample_violation = 0.0;
  std::vector<PinCheck> pins;
  std::string note;
};

// Checks A^[f] <= A^[h] <= A^[g]: by compare() on both flanks, by direct
// mean evaluation on seeded random samples, and by envelope containment on
// pinned pairs. Violations are data, not errors.
inline SandwichReport verify_sandwich(const Generator& f, const Generator& h,
                                      const Generator& g,
                                      const Config& cfg = {}) {
  SandwichReport rep;
  if (!(f.domain() == g.domain()) || !(f.domain() == h.domain()))
    throw DomainError("verify_sandwich requires a common domain");

  const auto relation_of = [&](const Generator& a, const Generator& b,
                               std::string& out_text) {
    try {
      const ComparisonVerdict v = compare(a, b, cfg);
      out_text = to_cstring(v.relation);
      return v.relation == Relation::Less || v.relation == Relation::Equal;
    } catch (const CriteriaConflict& e) {
      out_text = std::string("CriteriaConflict: ") + e.what();
      return false;
    }
  };
  const bool fh = relation_of(f, h, rep.relation_fh);
  const bool hg = relation_of(h, g, rep.relation_hg);
  rep.order_ok = fh && hg;

  Rng rng(cfg.seed);
  const double a = f.domain().clipped_lo(cfg.tol.domain);
  const double b = f.domain().clipped_hi(cfg.tol.domain);
  for (int t = 0; t < cfg.mean_samples; ++t) {
    const int n = rng.uniform_int(2, cfg.max_sample_len);
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (double& p : pts) p = rng.uniform(a, b);
    const WeightedSample s = WeightedSample::equal_weights(std::move(pts));
    const double mf = quasi_mean(f, s);
    const double mh = quasi_mean(h, s);
    const double mg = quasi_mean(g, s);
    const double scale = std::max({1.0, std::abs(mf), std::abs(mh), std::abs(mg)});
    const double viol =
        std::max(mf - mh, mh - mg) / scale;  // > 0 breaks the sandwich
    ++rep.samples_checked;
    if (viol > cfg.tol.mean) {
      ++rep.sample_violations;
      rep.worst_sample_violation = std::max(rep.worst_sample_violation, viol);
    }
  }

  // Envelope containment at seeded pin pairs.
  for (int p = 0; p < cfg.pin_pairs; ++p) {
    const double span = b - a;
    const double x0 = a + rng.next_double() * 0.6 * span;
    const double x1 = x0 + (0.15 + 0.8 * rng.next_double()) * (b - x0);
    const Envelope env = detail_intervals::make_envelope(f, g, x0, x1, cfg);
    PinCheck pc;
    pc.x0 = x0;
    pc.x1 = x1;
    pc.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < env.xs.size(); ++i) {
      const double hn = pinned_normalize(h, env.xs[i], x0, x1);
      const double slack = std::min(hn - env.lower[i], env.upper[i] - hn);
      pc.worst_slack = std::min(pc.worst_slack, slack);
    }
    // Beyond x1 the roles exchange: normalized f below, normalized g above.
    pc.worst_tail_slack = std::numeric_limits<double>::infinity();
    if (x1 < b) {
      for (double x : linspace(x1, b, 65)) {
        const double hn = pinned_normalize(h, x, x0, x1);
        const double fn = pinned_normalize(f, x, x0, x1);
        const double gn = pinned_normalize(g, x, x0, x1);
        const double scale = std::max({1.0, std::abs(hn), std::abs(fn), std::abs(gn)});
        const double slack = std::min(hn - fn, gn - hn) / scale;
        pc.worst_tail_slack = std::min(pc.worst_tail_slack, slack);
      }
    }
    pc.pass = pc.worst_slack >= -cfg.tol.compare &&
              pc.worst_tail_slack >= -cfg.tol.compare;
    rep.pins.push_back(pc);
  }

  rep.pass = rep.order_ok && rep.sample_violations == 0 &&
             std::all_of(rep.pins.begin(), rep.pins.end(),
                         [](const PinCheck& pc) { return pc.pass; });
  return rep;
}

struct SmoothnessProbeReport {
  enum class Prediction { EqualNonzero, BothVanish, None };

  double x0 = 0.0;
  Prediction prediction = Prediction::None;
  std::optional<OneSidedDerivative> left;
  std::optional<OneSidedDerivative> right;
  std::string left_note;   // set when the estimate failed
  std::string right_note;
  bool consistent = true;  // measurement vs prediction; never an assertion
};

inline const char* to_cstring(SmoothnessProbeReport::Prediction p) {
  switch (p) {
    case SmoothnessProbeReport::Prediction::EqualNonzero: return "EqualNonzero";
    case SmoothnessProbeReport::Prediction::BothVanish: return "BothVanish";
    case SmoothnessProbeReport::Prediction::None: return "None";
  }
  return "?";
}

// Numerical probe of the smoothness a sandwich transfers to the middle
// generator: when f and g are differentiable at x0 with nonzero derivative
// the one-sided slopes of h should agree; when both derivatives vanish the
// one-sided slopes of h should vanish too. Reports prediction vs
// measurement; numerical estimates cannot prove differentiability.
inline SmoothnessProbeReport smoothness_probe(const Generator& f,
                                              const Generator& h,
                                              const Generator& g, double x0,
                                              const Config& cfg = {}) {
  if (!(f.domain() == g.domain()) || !(f.domain() == h.domain()))
    throw DomainError("smoothness_probe requires a common domain");

  SmoothnessProbeReport rep;
  rep.x0 = x0;

  if (f.has_derivative_at(x0, 1) && g.has_derivative_at(x0, 1)) {
    const double fp = f.derivative(x0, 1);
    const double gp = g.derivative(x0, 1);
    if (fp != 0.0 && gp != 0.0)
      rep.prediction = SmoothnessProbeReport::Prediction::EqualNonzero;
    else if (fp == 0.0 && gp == 0.0)
      rep.prediction = SmoothnessProbeReport::Prediction::BothVanish;
  }

  const auto measure = [&](Side side, std::optional<OneSidedDerivative>& slot,
                           std::string& note) {
    try {
      slot = one_sided_derivative_estimate(h, x0, side, 1, cfg);
    } catch (const DomainError&) {
      note = "side unavailable";
    } catch (const Unstable& e) {
      note = e.what();
    }
  };
  measure(Side::Left, rep.left, rep.left_note);
  measure(Side::Right, rep.right, rep.right_note);

  using P = SmoothnessProbeReport::Prediction;
  if (rep.prediction == P::EqualNonzero) {
    if (rep.left && rep.right) {
      const double l = rep.left->value, r = rep.right->value;
      const double tol = std::max(50.0 * (rep.left->uncertainty +
                                          rep.right->uncertainty),
                                  1e-6 * std::max({1.0, std::abs(l), std::abs(r)}));
      rep.consistent = std::abs(l - r) <= tol && l != 0.0 && r != 0.0;
    } else {
      rep.consistent = (rep.left || rep.right);  // endpoint x0: one side only
    }
  } else if (rep.prediction == P::BothVanish) {
    const auto vanishes = [](const OneSidedDerivative& d) {
      return std::abs(d.value) <= std::max(50.0 * d.uncertainty, 1e-6);
    };
    rep.consistent = (!rep.left || vanishes(*rep.left)) &&
                     (!rep.right || vanishes(*rep.right)) &&
                     (rep.left || rep.right);
  }
  return rep;
}

}  // namespace qam
