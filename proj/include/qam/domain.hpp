#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "qam/errors.hpp"
#include "qam/numeric.hpp"

namespace qam {

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline double parse_number(std::string_view s, std::size_t& i,
                           const char* what) {
  skip_ws(s, i);
  double value = 0.0;
  const char* first = s.data() + i;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr == first)
    throw ParseError(std::string("expected a number while parsing ") + what);
  i += static_cast<std::size_t>(ptr - first);
  if (!std::isfinite(value))
    throw ParseError(std::string("non-finite number in ") + what);
  return value;
}

}  // namespace detail

// A real interval with optional open endpoints, e.g. "(0,10]".
// A bare "lo,hi" is treated as open on both sides.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = true;
  bool hi_open = true;

  static Interval parse(std::string_view text) {
    Interval iv;
    std::size_t i = 0;
    detail::skip_ws(text, i);
    if (i < text.size() && (text[i] == '(' || text[i] == '[')) {
      iv.lo_open = text[i] == '(';
      ++i;
    }
    iv.lo = detail::parse_number(text, i, "interval");
    detail::skip_ws(text, i);
    if (i >= text.size() || text[i] != ',')
      throw ParseError("interval: expected ','");
    ++i;
    iv.hi = detail::parse_number(text, i, "interval");
    detail::skip_ws(text, i);
    if (i < text.size() && (text[i] == ')' || text[i] == ']')) {
      iv.hi_open = text[i] == ')';
      ++i;
    }
    detail::skip_ws(text, i);
    if (i != text.size()) throw ParseError("interval: trailing characters");
    return iv;
  }

  bool operator==(const Interval&) const = default;
};

// Working domain for a generator. Open endpoints are never touched: every
// sampling operation stays inside [lo+margin, hi-margin], with
// margin = max(tol_domain, (hi-lo)*1e-9).
struct Domain {
  double lo;
  double hi;
  bool lo_open = true;
  bool hi_open = true;

  Domain(double lo_, double hi_, bool lo_open_ = true, bool hi_open_ = true)
      : lo(lo_), hi(hi_), lo_open(lo_open_), hi_open(hi_open_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)))
      throw DomainError("domain endpoints must be finite");
    if (!(lo < hi)) throw DomainError("domain requires lo < hi");
  }

  static Domain parse(std::string_view text) {
    const Interval iv = Interval::parse(text);
    return Domain(iv.lo, iv.hi, iv.lo_open, iv.hi_open);
  }

  double span() const { return hi - lo; }

  double margin(double tol_domain = 1e-12) const {
    return std::max(tol_domain, span() * 1e-9);
  }

  double clipped_lo(double tol_domain = 1e-12) const {
    return lo_open ? lo + margin(tol_domain) : lo;
  }

  double clipped_hi(double tol_domain = 1e-12) const {
    return hi_open ? hi - margin(tol_domain) : hi;
  }

  bool contains(double x, double tol_domain = 1e-12) const {
    return x >= clipped_lo(tol_domain) && x <= clipped_hi(tol_domain);
  }

  bool interior(double x) const { return x > lo && x < hi; }

  std::vector<double> grid(int n, double tol_domain = 1e-12) const {
    return linspace(clipped_lo(tol_domain), clipped_hi(tol_domain), n);
  }

  std::string str() const {
    std::string s;
    s += lo_open ? '(' : '[';
    s += std::to_string(lo);
    s += ',';
    s += std::to_string(hi);
    s += hi_open ? ')' : ']';
    return s;
  }

  bool operator==(const Domain&) const = default;
};

}  // namespace qam
