#pragma once

// Stable JSON / CSV serialization: everything needed to replay a verdict
// (inputs, tolerances, seed) is included, keys are sorted, doubles are
// emitted with round-trip precision.

#include <ostream>
#include <string>

#include <json.hpp>

#include "qam/compare.hpp"
#include "qam/intervals.hpp"

namespace qam {

using json = nlohmann::json;

inline json to_json(const Tolerances& t) {
  return json{{"invert", t.invert},   {"deriv", t.deriv},
              {"mean", t.mean},       {"compare", t.compare},
              {"affine", t.affine},   {"domain", t.domain},
              {"denominator", t.denominator}};
}

inline json to_json(const ProbeRecord& p) {
  json j{{"inputs", p.inputs},
         {"lhs", p.lhs},
         {"rhs", p.rhs},
         {"violation", p.violation},
         {"direction", p.direction}};
  if (!p.weights.empty()) j["weights"] = p.weights;
  return j;
}

inline json to_json(const CriterionReport& r) {
  json j{{"criterion", to_cstring(r.criterion)},
         {"verdict", to_cstring(r.verdict)},
         {"worst_le_violation", r.worst_le_violation},
         {"worst_ge_violation", r.worst_ge_violation}};
  json ev = json::array();
  for (const auto& p : r.evidence) ev.push_back(to_json(p));
  j["evidence"] = ev;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const WeightedSample& s) {
  return json{{"points", s.points()}, {"weights", s.weights()}};
}

inline json to_json(const ComparisonVerdict& v, const Generator& f,
                    const Generator& g, const Config& cfg) {
  json j{{"relation", to_cstring(v.relation)},
         {"f", f.text()},
         {"g", g.text()},
         {"domain", f.domain().str()},
         {"seed", cfg.seed},
         {"grid_n", cfg.grid_n},
         {"tolerances", to_json(cfg.tol)}};
  if (v.affine)
    j["affine"] = json{{"alpha", v.affine->alpha}, {"beta", v.affine->beta}};
  json reps = json::array();
  for (const auto& r : v.reports) reps.push_back(to_json(r));
  j["criteria"] = reps;
  if (v.witness_le_violated)
    j["witness_le_violated"] = to_json(*v.witness_le_violated);
  if (v.witness_ge_violated)
    j["witness_ge_violated"] = to_json(*v.witness_ge_violated);
  return j;
}

inline json to_json(const HullResult& h) {
  json j{{"member", h.member}};
  if (h.member) {
    j["lambda_lo"] = h.lambda_lo;
    j["lambda_hi"] = h.lambda_hi;
  } else {
    j["result"] = "Unknown";
    if (!h.note.empty()) j["note"] = h.note;
  }
  return j;
}

inline json to_json(const PinCheck& p) {
  return json{{"x0", p.x0},
              {"x1", p.x1},
              {"worst_slack", p.worst_slack},
              {"worst_tail_slack", p.worst_tail_slack},
              {"pass", p.pass}};
}

inline json to_json(const SandwichReport& r) {
  json pins = json::array();
  for (const auto& p : r.pins) pins.push_back(to_json(p));
  return json{{"pass", r.pass},
              {"order_ok", r.order_ok},
              {"relation_fh", r.relation_fh},
              {"relation_hg", r.relation_hg},
              {"samples_checked", r.samples_checked},
              {"sample_violations", r.sample_violations},
              {"worst_sample_violation", r.worst_sample_violation},
              {"pins", pins}};
}

inline json to_json(const SmoothnessProbeReport& r) {
  json j{{"x0", r.x0},
         {"prediction", to_cstring(r.prediction)},
         {"consistent", r.consistent}};
  if (r.left)
    j["left"] = json{{"value", r.left->value},
                     {"uncertainty", r.left->uncertainty}};
  else if (!r.left_note.empty())
    j["left_note"] = r.left_note;
  if (r.right)
    j["right"] = json{{"value", r.right->value},
                      {"uncertainty", r.right->uncertainty}};
  else if (!r.right_note.empty())
    j["right_note"] = r.right_note;
  return j;
}

// CSV columns: x, lower, upper, h_normalized. h_normalized is emitted only
// when a middle generator is supplied.
inline void envelope_csv(std::ostream& os, const Envelope& env,
                         const Generator* h = nullptr) {
  os << "x,lower,upper";
  if (h) os << ",h_normalized";
  os << "\n";
  char buf[160];
  for (std::size_t i = 0; i < env.xs.size(); ++i) {
    if (h) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", env.xs[i],
                    env.lower[i], env.upper[i],
                    pinned_normalize(*h, env.xs[i], env.x0, env.x1));
    } else {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", env.xs[i],
                    env.lower[i], env.upper[i]);
    }
    os << buf;
  }
}

}  // namespace qam
