#pragma once

// Decides the partial order between two quasi-arithmetic means, detects
// affine equality of generators, and constructs incomparability witnesses.

#include <optional>
#include <string>
#include <vector>

#include "qam/criteria.hpp"

namespace qam {

enum class Relation { Less, Greater, Equal, Incomparable };

inline const char* to_cstring(Relation r) {
  switch (r) {
    case Relation::Less: return "Less";
    case Relation::Greater: return "Greater";
    case Relation::Equal: return "Equal";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

struct AffineParams {
  double alpha = 1.0;
  double beta = 0.0;
};

struct ComparisonVerdict {
  Relation relation = Relation::Equal;
  std::vector<CriterionReport> reports;
  std::optional<AffineParams> affine;  // present iff relation == Equal
  std::optional<WeightedSample> witness_le_violated;  // mean_f > mean_g
  std::optional<WeightedSample> witness_ge_violated;  // mean_f < mean_g
};

// Fits g ≈ alpha*f + beta from two well-separated grid points and verifies
// the residual on the whole grid. Works on the raw (pre-canonical)
// generators, so negative alpha is recovered as given.
inline std::optional<AffineParams> affine_equivalence(const Generator& f,
                                                      const Generator& g,
                                                      const Config& cfg = {}) {
  if (!(f.domain() == g.domain()))
    throw DomainError("affine_equivalence requires a common domain");
  const auto xs = f.domain().grid(cfg.grid_n, cfg.tol.domain);
  const std::size_t i1 = xs.size() / 4;
  const std::size_t i2 = (3 * xs.size()) / 4;
  const double f1 = f.eval_unchecked(xs[i1]);
  const double f2 = f.eval_unchecked(xs[i2]);
  const double g1 = g.eval_unchecked(xs[i1]);
  const double g2 = g.eval_unchecked(xs[i2]);
  if (f1 == f2) return std::nullopt;  // cannot happen for monotone f
  const double alpha = (g2 - g1) / (f2 - f1);
  if (alpha == 0.0 || !std::isfinite(alpha)) return std::nullopt;
  const double beta = g1 - alpha * f1;

  double scale = 1.0;
  for (double x : xs) scale = std::max(scale, std::abs(g.eval_unchecked(x)));
  for (double x : xs) {
    const double resid = std::abs(g.eval_unchecked(x) -
                                  (alpha * f.eval_unchecked(x) + beta));
    if (resid > cfg.tol.affine * scale) return std::nullopt;
  }
  return AffineParams{alpha, beta};
}

namespace detail_compare {

inline bool supports_le(CriterionVerdict v) {
  return v == CriterionVerdict::SupportsLE;
}
inline bool supports_ge(CriterionVerdict v) {
  return v == CriterionVerdict::SupportsGE;
}

inline std::string verdict_table(const std::vector<CriterionReport>& reports) {
  std::string s;
  for (const auto& r : reports) {
    s += "\n  ";
    s += to_cstring(r.criterion);
    s += ": ";
    s += to_cstring(r.verdict);
    if (!r.note.empty()) {
      s += " (";
      s += r.note;
      s += ")";
    }
  }
  return s;
}

}  // namespace detail_compare

// Runs affine equality first (Equal short-circuits), then every applicable
// criterion. Less/Greater require the applicable criteria to agree;
// Incomparable requires replayable witnesses in both directions from the
// sampled criteria. Anything else is a CriteriaConflict: a tolerance problem,
// not a mathematical state.
inline ComparisonVerdict compare(const Generator& f, const Generator& g,
                                 const Config& cfg = {}) {
  if (!(f.domain() == g.domain()))
    throw DomainError("compare requires a common domain");

  ComparisonVerdict out;
  if (auto ab = affine_equivalence(f, g, cfg)) {
    out.relation = Relation::Equal;
    out.affine = ab;
    return out;
  }

  out.reports.push_back(composition_convexity_test(f, g, cfg));
  out.reports.push_back(pales_ratio_test(f, g, cfg));
  out.reports.push_back(derivative_ratio_test(f, g, cfg));
  out.reports.push_back(mikusinski_test(f, g, cfg));
  out.reports.push_back(sampled_means_test(f, g, cfg));
  out.reports.push_back(weighted_two_point_test(f, g, cfg));

  bool any_le = false, any_ge = false, any_refute = false, any_equal = false;
  for (const auto& r : out.reports) {
    any_le = any_le || detail_compare::supports_le(r.verdict);
    any_ge = any_ge || detail_compare::supports_ge(r.verdict);
    any_refute = any_refute || r.verdict == CriterionVerdict::Refutes;
    any_equal = any_equal || r.verdict == CriterionVerdict::SupportsEqual;
  }

  if (any_refute && (any_le || any_ge))
    throw CriteriaConflict("criteria disagree (refutation vs one-sided support):" +
                           detail_compare::verdict_table(out.reports));
  if (any_le && any_ge)
    throw CriteriaConflict("criteria disagree (LE vs GE support):" +
                           detail_compare::verdict_table(out.reports));

  if (any_refute) {
    // Attach the worst verified sampled witness per direction.
    for (const auto& r : out.reports) {
      if (r.criterion != Criterion::SampledMeans &&
          r.criterion != Criterion::WeightedTwoPoint)
        continue;
      for (const auto& p : r.evidence) {
        if (p.violation <= kRefuteFactor * cfg.tol.compare) continue;
        auto& slot = p.direction == "le" ? out.witness_le_violated
                                         : out.witness_ge_violated;
        if (!slot) slot = WeightedSample(p.inputs, p.weights);
      }
    }
    if (out.witness_le_violated && out.witness_ge_violated) {
      out.relation = Relation::Incomparable;
      return out;
    }
    throw CriteriaConflict(
        "criteria refute comparability but sampling found no reproducible "
        "witness pair:" +
        detail_compare::verdict_table(out.reports));
  }

  if (any_le) {
    out.relation = Relation::Less;
    return out;
  }
  if (any_ge) {
    out.relation = Relation::Greater;
    return out;
  }
  if (any_equal)
    throw CriteriaConflict(
        "generators indistinguishable within tolerance but not affinely "
        "equal; undecided by budget:" +
        detail_compare::verdict_table(out.reports));
  throw CriteriaConflict("no applicable criterion:" +
                         detail_compare::verdict_table(out.reports));
}

struct WitnessPair {
  WeightedSample violates_le;  // quasi_mean(f,·) > quasi_mean(g,·)
  WeightedSample violates_ge;  // quasi_mean(f,·) < quasi_mean(g,·)
  double le_margin = 0.0;      // observed strict violations
  double ge_margin = 0.0;
};

namespace detail_compare {

struct SideWitness {
  WeightedSample sample;
  bool f_above;  // mean_f > mean_g on the sample
  double margin;
};

// One side of the crossing construction: rescale both generators to vanish
// at x0, pin the "slow" one to 1 and the "fast" one to 2 at x0 + eps, locate
// the first crossing xi of the rescaled graphs, and test the half-weight
// sample {x0, xi}. Every candidate is verified by direct mean evaluation;
// only strict violations are returned.
inline std::optional<SideWitness> witness_on_side(const Generator& f,
                                                  const Generator& g,
                                                  double x0, double sgn,
                                                  const Config& cfg) {
  const double lo = f.domain().clipped_lo(cfg.tol.domain);
  const double hi = f.domain().clipped_hi(cfg.tol.domain);
  const double room = sgn > 0 ? hi - x0 : x0 - lo;
  if (!(room > 0)) return std::nullopt;
  const double T = 0.5 * room;

  for (int ordering = 0; ordering < 2; ++ordering) {
    const Generator& A = ordering == 0 ? f : g;  // plays the "2" role
    const Generator& B = ordering == 0 ? g : f;  // plays the "1" role
    const double xe = x0 + sgn * T;
    const double na = A.eval_unchecked(xe) - A.eval_unchecked(x0);
    const double nb = B.eval_unchecked(xe) - B.eval_unchecked(x0);
    if (na == 0.0 || nb == 0.0) continue;
    const double a0 = A.eval_unchecked(x0);
    const double b0 = B.eval_unchecked(x0);
    const auto u = [&](double t) {
      return 2.0 * (A.eval_unchecked(x0 + sgn * t) - a0) / na;
    };
    const auto v = [&](double t) {
      return (B.eval_unchecked(x0 + sgn * t) - b0) / nb;
    };

    // The construction needs u below v just past x0.
    bool starts_below = false;
    for (double frac : {1e-4, 4e-4, 2e-3, 1e-2}) {
      const double t = T * frac;
      const double du = u(t), dv = v(t);
      if (std::abs(dv - du) <= 1e-12 * std::max({1.0, du, dv})) continue;
      starts_below = du < dv;
      break;
    }
    if (!starts_below) continue;

    // First sign change of u - v on a fine scan, then bisection.
    constexpr int kScan = 1024;
    double t_lo = 0.0, t_hi = 0.0;
    for (int k = 1; k <= kScan; ++k) {
      const double t = T * k / kScan;
      if (u(t) - v(t) >= 0.0) {
        t_lo = T * (k - 1) / kScan;
        t_hi = t;
        break;
      }
    }
    if (t_hi == 0.0) continue;  // no crossing located within the budget
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (t_lo + t_hi);
      if (!(mid > t_lo && mid < t_hi)) break;
      if (u(mid) - v(mid) >= 0.0)
        t_hi = mid;
      else
        t_lo = mid;
    }
    const double xi = x0 + sgn * t_hi;
    if (xi == x0) continue;

    const WeightedSample s({std::min(x0, xi), std::max(x0, xi)}, {0.5, 0.5});
    const double mf = quasi_mean(f, s);
    const double mg = quasi_mean(g, s);
    const double scale = std::max({1.0, std::abs(mf), std::abs(mg)});
    const double margin = std::abs(mf - mg) / scale;
    if (margin > kRefuteFactor * cfg.tol.compare)
      return SideWitness{s, mf > mg, margin};
  }
  return std::nullopt;
}

}  // namespace detail_compare

// Constructive incomparability proof: returns two half-weight two-point
// samples on which the mean order is strict in opposite directions. x0 is
// the anchor (typically a point where one generator's one-sided derivative
// vanishes and the other's does not).
inline WitnessPair find_incomparability_witness(const Generator& f,
                                                const Generator& g, double x0,
                                                const Config& cfg = {}) {
  if (!(f.domain() == g.domain()))
    throw DomainError("witness search requires a common domain");
  if (!f.contains(x0))
    throw DomainError("witness search: x0 outside the domain");

  std::optional<detail_compare::SideWitness> le, ge;
  for (double sgn : {+1.0, -1.0}) {
    auto w = detail_compare::witness_on_side(f, g, x0, sgn, cfg);
    if (!w) continue;
    auto& slot = w->f_above ? le : ge;
    if (!slot || w->margin > slot->margin) slot = std::move(w);
  }
  if (!le || !ge)
    throw NoWitnessFound(
        "no opposite-direction strict violations located within the search "
        "budget around x0 = " +
        expr::fmt_num(x0));
  return WitnessPair{le->sample, ge->sample, le->margin, ge->margin};
}

}  // namespace qam
