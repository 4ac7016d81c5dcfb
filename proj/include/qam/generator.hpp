#pragma once

// Generator-function DSL for quasi-arithmetic means.
//
// Grammar (ASCII, whitespace-insensitive):
//   expr  := "id" | "log" | "pow(" num ")" | "exp(" num ")"
//          | "affine(" num "," num "," expr ")" | "neg(" expr ")"
//          | "piecewise(" num ";" expr ";" expr ")"
//   num   := decimal literal, optional sign/exponent
//
// "pow(0)" aliases to "log", keeping the power family closed under one
// constructor. Piecewise continuity at the cut is enforced by solving for the
// right branch's additive constant at compile time; both branches must share
// a monotonicity direction.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qam/config.hpp"
#include "qam/domain.hpp"
#include "qam/errors.hpp"
#include "qam/numeric.hpp"

namespace qam {

enum class Direction { Increasing, Decreasing };
enum class Side { Left, Right };

namespace expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Identity {};
struct Power {
  double p;  // nonzero; p = 0 is aliased to Log at parse time
};
struct Log {};
struct Exp {
  double lambda;  // nonzero
};
struct Affine {
  double alpha;  // nonzero
  double beta;
  NodePtr inner;
};
struct Negate {
  NodePtr inner;
};
struct Piecewise {
  double cut;
  NodePtr left;       // used for x <= cut
  NodePtr right;      // used for x > cut, shifted by `offset`
  double offset;      // left(cut) - right(cut), resolved at compile time
  bool d1_matches;    // analytic one-sided slopes agree at the cut
};

struct Node {
  std::variant<Identity, Power, Log, Exp, Affine, Negate, Piecewise> v;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

inline double eval(const Node& n, double x) {
  return std::visit(
      Overloaded{
          [&](const Identity&) { return x; },
          [&](const Power& p) { return std::pow(x, p.p); },
          [&](const Log&) { return std::log(x); },
          [&](const Exp& e) { return std::exp(e.lambda * x); },
          [&](const Affine& a) { return a.alpha * eval(*a.inner, x) + a.beta; },
          [&](const Negate& m) { return -eval(*m.inner, x); },
          [&](const Piecewise& pw) {
            return x <= pw.cut ? eval(*pw.left, x) : eval(*pw.right, x) + pw.offset;
          },
      },
      n.v);
}

// Analytic first derivative. Callers must gate on has_d1_at for piecewise cuts.
inline double d1(const Node& n, double x) {
  return std::visit(
      Overloaded{
          [&](const Identity&) { return 1.0; },
          [&](const Power& p) { return p.p * std::pow(x, p.p - 1.0); },
          [&](const Log&) { return 1.0 / x; },
          [&](const Exp& e) { return e.lambda * std::exp(e.lambda * x); },
          [&](const Affine& a) { return a.alpha * d1(*a.inner, x); },
          [&](const Negate& m) { return -d1(*m.inner, x); },
          [&](const Piecewise& pw) {
            return x <= pw.cut ? d1(*pw.left, x) : d1(*pw.right, x);
          },
      },
      n.v);
}

inline double d2(const Node& n, double x) {
  return std::visit(
      Overloaded{
          [&](const Identity&) { return 0.0; },
          [&](const Power& p) {
            return p.p * (p.p - 1.0) * std::pow(x, p.p - 2.0);
          },
          [&](const Log&) { return -1.0 / (x * x); },
          [&](const Exp& e) {
            return e.lambda * e.lambda * std::exp(e.lambda * x);
          },
          [&](const Affine& a) { return a.alpha * d2(*a.inner, x); },
          [&](const Negate& m) { return -d2(*m.inner, x); },
          [&](const Piecewise& pw) {
            return x <= pw.cut ? d2(*pw.left, x) : d2(*pw.right, x);
          },
      },
      n.v);
}

inline bool has_d1_at(const Node& n, double x) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) { return has_d1_at(*a.inner, x); },
          [&](const Negate& m) { return has_d1_at(*m.inner, x); },
          [&](const Piecewise& pw) {
            if (x == pw.cut)
              return pw.d1_matches && has_d1_at(*pw.left, x) &&
                     has_d1_at(*pw.right, x);
            return x < pw.cut ? has_d1_at(*pw.left, x) : has_d1_at(*pw.right, x);
          },
          [&](const auto&) { return true; },
      },
      n.v);
}

// Whether the node is twice differentiable at x (and in a neighborhood, for
// the nodes of this DSL the two coincide away from piecewise cuts).
inline bool has_d2_at(const Node& n, double x) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) { return has_d2_at(*a.inner, x); },
          [&](const Negate& m) { return has_d2_at(*m.inner, x); },
          [&](const Piecewise& pw) {
            if (x == pw.cut) return false;
            return x < pw.cut ? has_d2_at(*pw.left, x) : has_d2_at(*pw.right, x);
          },
          [&](const auto&) { return true; },
      },
      n.v);
}

inline bool d1_everywhere(const Node& n) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) { return d1_everywhere(*a.inner); },
          [&](const Negate& m) { return d1_everywhere(*m.inner); },
          [&](const Piecewise& pw) {
            return pw.d1_matches && d1_everywhere(*pw.left) &&
                   d1_everywhere(*pw.right);
          },
          [&](const auto&) { return true; },
      },
      n.v);
}

inline bool d2_everywhere(const Node& n) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) { return d2_everywhere(*a.inner); },
          [&](const Negate& m) { return d2_everywhere(*m.inner); },
          [&](const Piecewise&) { return false; },
          [&](const auto&) { return true; },
      },
      n.v);
}

inline Direction flip(Direction d) {
  return d == Direction::Increasing ? Direction::Decreasing
                                    : Direction::Increasing;
}

inline Direction direction(const Node& n) {
  return std::visit(
      Overloaded{
          [&](const Identity&) { return Direction::Increasing; },
          [&](const Power& p) {
            return p.p > 0 ? Direction::Increasing : Direction::Decreasing;
          },
          [&](const Log&) { return Direction::Increasing; },
          [&](const Exp& e) {
            return e.lambda > 0 ? Direction::Increasing : Direction::Decreasing;
          },
          [&](const Affine& a) {
            const Direction d = direction(*a.inner);
            return a.alpha > 0 ? d : flip(d);
          },
          [&](const Negate& m) { return flip(direction(*m.inner)); },
          [&](const Piecewise& pw) {
            const Direction dl = direction(*pw.left);
            if (dl != direction(*pw.right))
              throw NotMonotone(
                  "piecewise branches have opposite monotonicity directions");
            return dl;
          },
      },
      n.v);
}

inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string to_string(const Node& n) {
  return std::visit(
      Overloaded{
          [&](const Identity&) -> std::string { return "id"; },
          [&](const Power& p) { return "pow(" + fmt_num(p.p) + ")"; },
          [&](const Log&) -> std::string { return "log"; },
          [&](const Exp& e) { return "exp(" + fmt_num(e.lambda) + ")"; },
          [&](const Affine& a) {
            return "affine(" + fmt_num(a.alpha) + "," + fmt_num(a.beta) + "," +
                   to_string(*a.inner) + ")";
          },
          [&](const Negate& m) { return "neg(" + to_string(*m.inner) + ")"; },
          [&](const Piecewise& pw) {
            return "piecewise(" + fmt_num(pw.cut) + "; " +
                   to_string(*pw.left) + "; " + to_string(*pw.right) + ")";
          },
      },
      n.v);
}

// --- parsing -----------------------------------------------------------

namespace parse_detail {

inline void expect(std::string_view s, std::size_t& i, char c) {
  detail::skip_ws(s, i);
  if (i >= s.size() || s[i] != c)
    throw ParseError(std::string("expected '") + c + "' at position " +
                     std::to_string(i));
  ++i;
}

inline std::string ident(std::string_view s, std::size_t& i) {
  detail::skip_ws(s, i);
  std::string out;
  while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])))
    out += s[i++];
  if (out.empty())
    throw ParseError("expected a generator keyword at position " +
                     std::to_string(i));
  return out;
}

inline NodePtr expr(std::string_view s, std::size_t& i) {
  const std::string kw = ident(s, i);
  if (kw == "id") return make({Identity{}});
  if (kw == "log") return make({Log{}});
  if (kw == "pow") {
    expect(s, i, '(');
    const double p = detail::parse_number(s, i, "pow");
    expect(s, i, ')');
    if (p == 0.0) return make({Log{}});  // pi_0 alias
    return make({Power{p}});
  }
  if (kw == "exp") {
    expect(s, i, '(');
    const double lambda = detail::parse_number(s, i, "exp");
    expect(s, i, ')');
    if (lambda == 0.0) throw ParseError("exp rate must be nonzero");
    return make({Exp{lambda}});
  }
  if (kw == "neg") {
    expect(s, i, '(');
    NodePtr inner = expr(s, i);
    expect(s, i, ')');
    return make({Negate{std::move(inner)}});
  }
  if (kw == "affine") {
    expect(s, i, '(');
    const double alpha = detail::parse_number(s, i, "affine");
    expect(s, i, ',');
    const double beta = detail::parse_number(s, i, "affine");
    expect(s, i, ',');
    NodePtr inner = expr(s, i);
    expect(s, i, ')');
    if (alpha == 0.0) throw ParseError("affine scale must be nonzero");
    return make({Affine{alpha, beta, std::move(inner)}});
  }
  if (kw == "piecewise") {
    expect(s, i, '(');
    const double cut = detail::parse_number(s, i, "piecewise");
    expect(s, i, ';');
    NodePtr left = expr(s, i);
    expect(s, i, ';');
    NodePtr right = expr(s, i);
    expect(s, i, ')');
    return make({Piecewise{cut, std::move(left), std::move(right), 0.0, false}});
  }
  throw ParseError("unknown generator '" + kw + "'");
}

}  // namespace parse_detail

inline NodePtr parse(std::string_view text) {
  std::size_t i = 0;
  NodePtr n = parse_detail::expr(text, i);
  detail::skip_ws(text, i);
  if (i != text.size())
    throw ParseError("trailing characters after expression at position " +
                     std::to_string(i));
  return n;
}

// --- compilation -------------------------------------------------------

inline bool is_odd_integer(double p) {
  return std::nearbyint(p) == p && std::fmod(std::abs(p), 2.0) == 1.0;
}

// Node/domain compatibility over the segment [lo, hi]. `lo_reachable` states
// whether evaluation can touch lo exactly (closed original endpoint or an
// interior piecewise cut); open original endpoints are margin-clipped and
// never evaluated at lo itself.
inline void check_domain(const Node& n, double lo, double hi, bool lo_reachable) {
  std::visit(
      Overloaded{
          [&](const Power& p) {
            if (p.p > 0 && is_odd_integer(p.p)) return;  // monotone on all of R
            if (lo < 0)
              throw DomainError("pow(" + fmt_num(p.p) +
                                ") is not monotone on a domain with lo < 0");
            if (p.p < 0 && lo == 0 && lo_reachable)
              throw DomainError("pow(" + fmt_num(p.p) +
                                ") requires lo > 0 (or an open endpoint at 0)");
          },
          [&](const Log&) {
            if (lo < 0 || (lo == 0 && lo_reachable))
              throw DomainError("log requires lo > 0 (or an open endpoint at 0)");
          },
          [&](const Affine& a) { check_domain(*a.inner, lo, hi, lo_reachable); },
          [&](const Negate& m) { check_domain(*m.inner, lo, hi, lo_reachable); },
          [&](const Piecewise& pw) {
            if (!(lo < pw.cut && pw.cut < hi))
              throw DomainError("piecewise cut must lie strictly inside the domain");
            check_domain(*pw.left, lo, pw.cut, lo_reachable);
            check_domain(*pw.right, pw.cut, hi, /*lo_reachable=*/true);
          },
          [&](const auto&) {},
      },
      n.v);
}

// Resolves piecewise offsets bottom-up and records whether the one-sided
// slopes agree at each cut.
inline NodePtr compile(const NodePtr& n) {
  return std::visit(
      Overloaded{
          [&](const Affine& a) -> NodePtr {
            return make({Affine{a.alpha, a.beta, compile(a.inner)}});
          },
          [&](const Negate& m) -> NodePtr {
            return make({Negate{compile(m.inner)}});
          },
          [&](const Piecewise& pw) -> NodePtr {
            NodePtr left = compile(pw.left);
            NodePtr right = compile(pw.right);
            const double offset = eval(*left, pw.cut) - eval(*right, pw.cut);
            bool matches = false;
            if (has_d1_at(*left, pw.cut) && has_d1_at(*right, pw.cut)) {
              const double sl = d1(*left, pw.cut);
              const double sr = d1(*right, pw.cut);
              matches = std::abs(sl - sr) <= 1e-9 * std::max(1.0, std::abs(sl));
            }
            return make({Piecewise{pw.cut, std::move(left), std::move(right),
                                   offset, matches}});
          },
          [&](const auto&) -> NodePtr { return n; },
      },
      n->v);
}

}  // namespace expr

struct OneSidedDerivative {
  double value = 0.0;
  double uncertainty = 0.0;
};

// A validated strictly monotone continuous function on a real interval.
// Immutable after construction; every operation is pure and reentrant.
class Generator {
 public:
  const Domain& domain() const { return domain_; }
  Direction direction() const { return dir_; }
  bool d1_available() const { return d1_; }
  bool d2_available() const { return d2_; }

  // Round-trippable description in the expression grammar.
  std::string text() const { return expr::to_string(*root_); }

  bool contains(double x) const { return domain_.contains(x, tol_domain_); }

  double eval(double x) const {
    if (!contains(x))
      throw DomainError("eval: x = " + expr::fmt_num(x) +
                        " outside the (margin-clipped) domain " + domain_.str());
    return expr::eval(*root_, x);
  }

  double eval_unchecked(double x) const { return expr::eval(*root_, x); }

  bool has_derivative_at(double x, int order) const {
    return order == 1 ? expr::has_d1_at(*root_, x) : expr::has_d2_at(*root_, x);
  }

  double derivative(double x, int order) const {
    if (order != 1 && order != 2)
      throw InvalidParameter("derivative order must be 1 or 2");
    if (!contains(x))
      throw DomainError("derivative: x outside the domain");
    if (!has_derivative_at(x, order))
      throw NotDifferentiable("no order-" + std::to_string(order) +
                              " derivative at x = " + expr::fmt_num(x));
    return order == 1 ? expr::d1(*root_, x) : expr::d2(*root_, x);
  }

  // Solves eval(x) = y on the margin-clipped domain by bisection, polished by
  // Newton. Guarantees |eval(x) - y| <= tol_invert * max(1, |y|) for
  // attainable targets; throws RangeError otherwise.
  double invert(double y) const {
    const double a = domain_.clipped_lo(tol_domain_);
    const double b = domain_.clipped_hi(tol_domain_);
    const double fa = eval_unchecked(a);
    const double fb = eval_unchecked(b);
    const double y_lo = std::min(fa, fb);
    const double y_hi = std::max(fa, fb);
    const double slack = tol_invert_ * std::max(1.0, std::abs(y));
    if (y < y_lo - slack || y > y_hi + slack)
      throw RangeError("invert: y = " + expr::fmt_num(y) +
                       " outside attainable range [" + expr::fmt_num(y_lo) +
                       ", " + expr::fmt_num(y_hi) + "]");
    const double yc = std::clamp(y, y_lo, y_hi);
    const bool increasing = fa < fb;

    double lo = a, hi = b;
    for (int it = 0; it < 120; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;  // bracket at machine resolution
      const double fm = eval_unchecked(mid);
      if ((fm < yc) == increasing)
        lo = mid;
      else
        hi = mid;
    }

    double best = 0.5 * (lo + hi);
    double best_res = std::abs(eval_unchecked(best) - yc);
    for (double cand : {lo, hi}) {
      const double r = std::abs(eval_unchecked(cand) - yc);
      if (r < best_res) {
        best = cand;
        best_res = r;
      }
    }

    if (d1_ && best_res > 0) {
      double x = best;
      for (int it = 0; it < 8; ++it) {
        const double fx = eval_unchecked(x);
        const double r = std::abs(fx - yc);
        if (r < best_res) {
          best = x;
          best_res = r;
        }
        if (best_res <= 0.25 * slack) break;
        if (!expr::has_d1_at(*root_, x)) break;
        const double d = expr::d1(*root_, x);
        if (!std::isfinite(d) || d == 0.0) break;
        const double xn = x - (fx - yc) / d;
        if (!(xn >= a && xn <= b)) break;
        x = xn;
      }
      const double r = std::abs(eval_unchecked(x) - yc);
      if (r < best_res) best = x;
    }
    return best;
  }

  // Canonical increasing form generating the identical mean (negation is the
  // affine map alpha = -1, beta = 0).
  Generator canonical() const {
    if (dir_ == Direction::Increasing) return *this;
    Generator g = *this;
    g.root_ = expr::make({expr::Negate{root_}});
    g.dir_ = Direction::Increasing;
    return g;
  }

  double tol_invert() const { return tol_invert_; }
  double tol_domain() const { return tol_domain_; }

  const expr::Node& root() const { return *root_; }

  friend Generator parse_generator(std::string_view, const Domain&, const Config&);
  friend Generator make_generator(expr::NodePtr, const Domain&, const Config&);

 private:
  Generator(expr::NodePtr root, Domain domain, Direction dir, bool d1, bool d2,
            double tol_invert, double tol_domain)
      : root_(std::move(root)),
        domain_(domain),
        dir_(dir),
        d1_(d1),
        d2_(d2),
        tol_invert_(tol_invert),
        tol_domain_(tol_domain) {}

  expr::NodePtr root_;
  Domain domain_;
  Direction dir_;
  bool d1_;
  bool d2_;
  double tol_invert_;
  double tol_domain_;
};

// Compiles and validates an already-parsed expression tree.
inline Generator make_generator(expr::NodePtr ast, const Domain& domain,
                                const Config& cfg = {}) {
  cfg.validate();
  expr::check_domain(*ast, domain.lo, domain.hi,
                     /*lo_reachable=*/!domain.lo_open);
  expr::NodePtr root = expr::compile(ast);
  const Direction dir = expr::direction(*root);

  // Grid-based monotonicity validation: a failure is a proof, absence of
  // failure is evidence only.
  const auto xs = domain.grid(cfg.grid_n, cfg.tol.domain);
  double prev = expr::eval(*root, xs.front());
  if (!std::isfinite(prev))
    throw NotMonotone("non-finite value at x = " + expr::fmt_num(xs.front()));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = expr::eval(*root, xs[i]);
    if (!std::isfinite(cur))
      throw NotMonotone("non-finite value at x = " + expr::fmt_num(xs[i]));
    const bool ok = dir == Direction::Increasing ? cur > prev : cur < prev;
    if (!ok)
      throw NotMonotone("not strictly monotone between x = " +
                        expr::fmt_num(xs[i - 1]) + " and x = " +
                        expr::fmt_num(xs[i]));
    prev = cur;
  }

  return Generator(std::move(root), domain, dir, expr::d1_everywhere(*root),
                   expr::d2_everywhere(*root), cfg.tol.invert, cfg.tol.domain);
}

inline Generator parse_generator(std::string_view text, const Domain& domain,
                                 const Config& cfg = {}) {
  return make_generator(expr::parse(text), domain, cfg);
}

inline Generator canonicalize(const Generator& g) { return g.canonical(); }

// Richardson-extrapolated one-sided difference quotient at x0, step sequence
// h_k = h0 * 2^-k. The uncertainty is the last extrapolation delta.
inline OneSidedDerivative one_sided_derivative_estimate(const Generator& g,
                                                        double x0, Side side,
                                                        int order,
                                                        const Config& cfg = {}) {
  if (order != 1 && order != 2)
    throw InvalidParameter("one-sided derivative order must be 1 or 2");
  if (!g.contains(x0))
    throw DomainError("one_sided_derivative_estimate: x0 outside the domain");
  const double lo = g.domain().clipped_lo(cfg.tol.domain);
  const double hi = g.domain().clipped_hi(cfg.tol.domain);
  const double room = side == Side::Right ? hi - x0 : x0 - lo;
  if (!(room > 0))
    throw DomainError("no room on the requested side of x0");

  const double sgn = side == Side::Right ? 1.0 : -1.0;
  const double h0 = room / (order == 1 ? 2.0 : 4.0);
  const double f0 = g.eval_unchecked(x0);

  std::function<double(double)> quotient;
  if (order == 1) {
    quotient = [&g, x0, sgn, f0](double h) {
      return (g.eval_unchecked(x0 + sgn * h) - f0) / (sgn * h);
    };
  } else {
    quotient = [&g, x0, sgn, f0](double h) {
      return (g.eval_unchecked(x0 + 2.0 * sgn * h) -
              2.0 * g.eval_unchecked(x0 + sgn * h) + f0) /
             (h * h);
    };
  }
  const OneSidedEstimate e = richardson_extrapolate(quotient, h0);
  return {e.value, e.uncertainty};
}

}  // namespace qam
