// Command-line front end for quasi-arithmetic mean evaluation, comparability
// decisions, witness search, index-window and hull queries, and the bundled
// conformance report.
//
// Exit codes:
//   0  success (including NotMember / Unknown answers)
//   2  input error: bad expression, sample, interval, or domain mismatch
//   3  Incomparable verdict from `compare`
//   4  CriteriaConflict (criteria disagree beyond tolerance)
//   5  NoWitnessFound
//   6  derivative failure: NotDifferentiable, ZeroDerivative, or Unstable
//   1  anything else

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qam/qam.hpp"

namespace {

struct CommonOpts {
  int grid_n = 257;
  std::uint64_t seed = 0x51414D00ull;
  std::string format = "text";
  qam::Tolerances tol{};
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--grid", c.grid_n, "validation/criterion grid size (>= 17)");
  cmd->add_option("--seed", c.seed, "64-bit seed for randomized probe plans")
      ->envname("QAM_SEED");
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--tol.invert", c.tol.invert, "inversion tolerance (relative)");
  cmd->add_option("--tol.deriv", c.tol.deriv, "derivative check tolerance");
  cmd->add_option("--tol.mean", c.tol.mean, "mean identity tolerance");
  cmd->add_option("--tol.compare", c.tol.compare, "criterion tolerance");
  cmd->add_option("--tol.affine", c.tol.affine, "affine-fit tolerance");
  cmd->add_option("--tol.domain", c.tol.domain, "open-endpoint clipping floor");
}

qam::Config to_config(const CommonOpts& c) {
  qam::Config cfg;
  cfg.grid_n = c.grid_n;
  cfg.seed = c.seed;
  cfg.tol = c.tol;
  cfg.validate();
  return cfg;
}

void print_real(double v) { std::printf("%.17g\n", v); }

qam::Domain domain_or_default(const std::string& text, double center) {
  if (!text.empty()) return qam::Domain::parse(text);
  return qam::Domain(center - 1.0, center + 1.0);
}

void print_verdict_text(const qam::ComparisonVerdict& v, std::uint64_t seed) {
  std::printf("relation: %s\n", qam::to_cstring(v.relation));
  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  if (v.affine)
    std::printf("affine: alpha=%.17g beta=%.17g\n", v.affine->alpha,
                v.affine->beta);
  if (!v.reports.empty()) {
    std::printf("criteria:\n");
    for (const auto& r : v.reports) {
      std::printf("  %-22s %-14s le_viol=%.3g ge_viol=%.3g%s%s\n",
                  qam::to_cstring(r.criterion), qam::to_cstring(r.verdict),
                  r.worst_le_violation, r.worst_ge_violation,
                  r.note.empty() ? "" : "  ", r.note.c_str());
    }
  }
  if (v.witness_le_violated)
    std::printf("witness_le_violated: %s\n", v.witness_le_violated->str().c_str());
  if (v.witness_ge_violated)
    std::printf("witness_ge_violated: %s\n", v.witness_ge_violated->str().c_str());
}

int run(int argc, char** argv) {
  CLI::App app{
      "qam: quasi-arithmetic means, comparability criteria, interval-type "
      "sets"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a quasi-arithmetic mean");
  std::string ev_gen, ev_domain, ev_sample;
  CommonOpts ev_c;
  eval_cmd->add_option("--gen", ev_gen, "generator expression")->required();
  eval_cmd->add_option("--domain", ev_domain, "domain, e.g. \"(0,10]\"")->required();
  eval_cmd->add_option("--sample", ev_sample, "\"p1:w1,p2:w2,...\" or \"p1,p2,...\"")
      ->required();
  add_common(eval_cmd, ev_c);

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "decide the mean order of two generators");
  std::string cmp_a, cmp_b, cmp_domain;
  CommonOpts cmp_c;
  cmp_cmd->add_option("--a", cmp_a, "first generator")->required();
  cmp_cmd->add_option("--b", cmp_b, "second generator")->required();
  cmp_cmd->add_option("--domain", cmp_domain, "common domain")->required();
  add_common(cmp_cmd, cmp_c);

  // witness
  auto* wit_cmd = app.add_subcommand(
      "witness", "construct incomparability witnesses around a base point");
  std::string wit_a, wit_b, wit_domain;
  double wit_x0 = 0.0;
  CommonOpts wit_c;
  wit_cmd->add_option("--a", wit_a)->required();
  wit_cmd->add_option("--b", wit_b)->required();
  wit_cmd->add_option("--domain", wit_domain)->required();
  wit_cmd->add_option("--x0", wit_x0, "anchor point")->required();
  add_common(wit_cmd, wit_c);

  // index
  auto* idx_cmd = app.add_subcommand("index", "second-to-first derivative ratio f''/f'");
  std::string idx_gen, idx_domain;
  double idx_at = 0.0;
  CommonOpts idx_c;
  idx_cmd->add_option("--gen", idx_gen)->required();
  idx_cmd->add_option("--at", idx_at, "evaluation point")->required();
  idx_cmd->add_option("--domain", idx_domain, "domain (default: unit ball around --at)");
  add_common(idx_cmd, idx_c);

  // window
  auto* win_cmd = app.add_subcommand("window", "index-window membership at x0");
  std::string win_gen, win_domain, win_u;
  double win_x0 = 0.0;
  CommonOpts win_c;
  win_cmd->add_option("--gen", win_gen)->required();
  win_cmd->add_option("--x0", win_x0)->required();
  win_cmd->add_option("--U", win_u, "index interval, e.g. \"[0,2]\"")->required();
  win_cmd->add_option("--domain", win_domain, "domain (default: unit ball around --x0)");
  add_common(win_cmd, win_c);

  // hull
  auto* hull_cmd = app.add_subcommand(
      "hull", "hull membership via an exponential sandwich certificate");
  std::string hull_gen, hull_domain, hull_u;
  double hull_x0 = 0.0;
  CommonOpts hull_c;
  hull_cmd->add_option("--gen", hull_gen)->required();
  hull_cmd->add_option("--x0", hull_x0)->required();
  hull_cmd->add_option("--U", hull_u)->required();
  hull_cmd->add_option("--domain", hull_domain, "domain (default: unit ball around --x0)");
  add_common(hull_cmd, hull_c);

  // sandwich
  auto* sw_cmd = app.add_subcommand(
      "sandwich", "verify A^[f] <= A^[h] <= A^[g]; csv format emits the envelope");
  sw_cmd->set_help_flag("--help", "print help");  // frees -h for the --h flag
  std::string sw_f, sw_h, sw_g, sw_domain;
  std::optional<double> sw_x0, sw_x1;
  CommonOpts sw_c;
  sw_cmd->add_option("--f", sw_f)->required();
  sw_cmd->add_option("--h", sw_h)->required();
  sw_cmd->add_option("--g", sw_g)->required();
  sw_cmd->add_option("--domain", sw_domain)->required();
  sw_cmd->add_option("--x0", sw_x0, "smoothness-probe / envelope pin point");
  sw_cmd->add_option("--x1", sw_x1, "second envelope pin (csv format)");
  add_common(sw_cmd, sw_c);

  // report
  auto* rep_cmd = app.add_subcommand(
      "report", "run the bundled corpus and emit one conformance document");
  CommonOpts rep_c;
  rep_c.format = "json";
  add_common(rep_cmd, rep_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }

  if (eval_cmd->parsed()) {
    const qam::Config cfg = to_config(ev_c);
    const qam::Generator g =
        qam::parse_generator(ev_gen, qam::Domain::parse(ev_domain), cfg);
    print_real(qam::quasi_mean(g, qam::WeightedSample::parse(ev_sample)));
    return 0;
  }

  if (cmp_cmd->parsed()) {
    const qam::Config cfg = to_config(cmp_c);
    const qam::Domain d = qam::Domain::parse(cmp_domain);
    const qam::Generator f = qam::parse_generator(cmp_a, d, cfg);
    const qam::Generator g = qam::parse_generator(cmp_b, d, cfg);
    const qam::ComparisonVerdict v = qam::compare(f, g, cfg);
    if (cmp_c.format == "json")
      std::cout << qam::to_json(v, f, g, cfg).dump(2) << "\n";
    else
      print_verdict_text(v, cfg.seed);
    return v.relation == qam::Relation::Incomparable ? 3 : 0;
  }

  if (wit_cmd->parsed()) {
    const qam::Config cfg = to_config(wit_c);
    const qam::Domain d = qam::Domain::parse(wit_domain);
    const qam::Generator f = qam::parse_generator(wit_a, d, cfg);
    const qam::Generator g = qam::parse_generator(wit_b, d, cfg);
    const qam::WitnessPair w =
        qam::find_incomparability_witness(f, g, wit_x0, cfg);
    if (wit_c.format == "json") {
      qam::json j{{"seed", cfg.seed},
                  {"violates_le", qam::to_json(w.violates_le)},
                  {"violates_ge", qam::to_json(w.violates_ge)},
                  {"le_margin", w.le_margin},
                  {"ge_margin", w.ge_margin}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("seed: %llu\n", static_cast<unsigned long long>(cfg.seed));
      std::printf("violates_le: %s  (margin %.6g)\n", w.violates_le.str().c_str(),
                  w.le_margin);
      std::printf("violates_ge: %s  (margin %.6g)\n", w.violates_ge.str().c_str(),
                  w.ge_margin);
    }
    return 0;
  }

  if (idx_cmd->parsed()) {
    const qam::Config cfg = to_config(idx_c);
    const qam::Generator g =
        qam::parse_generator(idx_gen, domain_or_default(idx_domain, idx_at), cfg);
    print_real(qam::mikusinski_index(g, idx_at));
    return 0;
  }

  if (win_cmd->parsed()) {
    const qam::Config cfg = to_config(win_c);
    const qam::Generator g =
        qam::parse_generator(win_gen, domain_or_default(win_domain, win_x0), cfg);
    const qam::MikusinskiWindow w{win_x0, qam::Interval::parse(win_u)};
    const qam::Membership m = qam::window_membership(g, w, cfg);
    if (win_c.format == "json")
      std::cout << qam::json{{"result", qam::to_cstring(m)}}.dump(2) << "\n";
    else
      std::printf("%s\n", qam::to_cstring(m));
    return 0;
  }

  if (hull_cmd->parsed()) {
    const qam::Config cfg = to_config(hull_c);
    const qam::Generator g = qam::parse_generator(
        hull_gen, domain_or_default(hull_domain, hull_x0), cfg);
    const qam::MikusinskiWindow w{hull_x0, qam::Interval::parse(hull_u)};
    const qam::HullResult r = qam::hull_membership_exponential(g, w, cfg);
    if (hull_c.format == "json") {
      qam::json j = qam::to_json(r);
      j["seed"] = cfg.seed;
      std::cout << j.dump(2) << "\n";
    } else if (r.member) {
      std::printf("Member  lambda_lo=%.17g lambda_hi=%.17g  (seed %llu)\n",
                  r.lambda_lo, r.lambda_hi,
                  static_cast<unsigned long long>(cfg.seed));
    } else {
      std::printf("Unknown  %s\n", r.note.c_str());
    }
    return 0;
  }

  if (sw_cmd->parsed()) {
    const qam::Config cfg = to_config(sw_c);
    const qam::Domain d = qam::Domain::parse(sw_domain);
    const qam::Generator f = qam::parse_generator(sw_f, d, cfg);
    const qam::Generator h = qam::parse_generator(sw_h, d, cfg);
    const qam::Generator g = qam::parse_generator(sw_g, d, cfg);
    if (sw_c.format == "csv") {
      const double a = d.clipped_lo(cfg.tol.domain);
      const double b = d.clipped_hi(cfg.tol.domain);
      const double x0 = sw_x0.value_or(a + 0.25 * (b - a));
      const double x1 = sw_x1.value_or(a + 0.75 * (b - a));
      const qam::Envelope env = qam::sandwich_envelope(f, g, x0, x1, cfg);
      qam::envelope_csv(std::cout, env, &h);
      return 0;
    }
    const qam::SandwichReport rep = qam::verify_sandwich(f, h, g, cfg);
    qam::json j = qam::to_json(rep);
    j["seed"] = cfg.seed;
    if (sw_x0) j["smoothness_probe"] = qam::to_json(
        qam::smoothness_probe(f, h, g, *sw_x0, cfg));
    if (sw_c.format == "json") {
      std::cout << j.dump(2) << "\n";
    } else {
      std::printf("sandwich: %s  (f vs h: %s, h vs g: %s)\n",
                  rep.pass ? "pass" : "fail", rep.relation_fh.c_str(),
                  rep.relation_hg.c_str());
      std::printf("samples: %ld checked, %ld violations\n", rep.samples_checked,
                  rep.sample_violations);
      for (const auto& pc : rep.pins)
        std::printf("pin (%.6g, %.6g): slack=%.3g tail=%.3g %s\n", pc.x0, pc.x1,
                    pc.worst_slack, pc.worst_tail_slack,
                    pc.pass ? "pass" : "fail");
      if (sw_x0) std::printf("smoothness_probe: %s\n",
                             j["smoothness_probe"].dump().c_str());
    }
    return rep.pass ? 0 : 1;
  }

  if (rep_cmd->parsed()) {
    const qam::Config cfg = to_config(rep_c);
    std::cout << qam::run_conformance(cfg).dump(2) << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qam::CriteriaConflict& e) {
    std::fprintf(stderr, "criteria conflict: %s\n", e.what());
    return 4;
  } catch (const qam::NoWitnessFound& e) {
    std::fprintf(stderr, "no witness: %s\n", e.what());
    return 5;
  } catch (const qam::NotDifferentiable& e) {
    std::fprintf(stderr, "not differentiable: %s\n", e.what());
    return 6;
  } catch (const qam::ZeroDerivative& e) {
    std::fprintf(stderr, "zero derivative: %s\n", e.what());
    return 6;
  } catch (const qam::Unstable& e) {
    std::fprintf(stderr, "unstable estimate: %s\n", e.what());
    return 6;
  } catch (const qam::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
