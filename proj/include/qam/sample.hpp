#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "qam/domain.hpp"
#include "qam/errors.hpp"
#include "qam/numeric.hpp"

namespace qam {

// Points with positive weights summing to 1. Pairs are stored sorted by
// (point, weight), which makes every downstream reduction permutation-
// invariant bit for bit.
class WeightedSample {
 public:
  WeightedSample(std::vector<double> points, std::vector<double> weights) {
    if (points.empty() || points.size() != weights.size())
      throw InvalidParameter("sample needs n >= 1 points with matching weights");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (points[a] != points[b]) return points[a] < points[b];
      return weights[a] < weights[b];
    });
    pts_.reserve(points.size());
    wts_.reserve(points.size());
    for (std::size_t k : order) {
      if (!std::isfinite(points[k]))
        throw InvalidParameter("sample points must be finite");
      if (!(weights[k] > 0))
        throw InvalidParameter("sample weights must be positive");
      pts_.push_back(points[k]);
      wts_.push_back(weights[k]);
    }
    const double total = pairwise_sum(wts_);
    if (std::abs(total - 1.0) > 1e-12)
      throw InvalidParameter("sample weights must sum to 1 (got " +
                             std::to_string(total) + ")");
  }

  static WeightedSample equal_weights(std::vector<double> points) {
    const std::size_t n = points.size();
    if (n == 0) throw InvalidParameter("sample needs n >= 1 points");
    const double w = 1.0 / static_cast<double>(n);
    return WeightedSample(std::move(points), std::vector<double>(n, w));
  }

  static WeightedSample two_point(double a, double b, double xi) {
    return WeightedSample({a, b}, {xi, 1.0 - xi});
  }

  // "p1:w1,p2:w2,..." or "p1,p2,..." (equal weights).
  static WeightedSample parse(std::string_view text) {
    std::vector<double> pts, wts;
    std::size_t i = 0;
    bool any_weight = false;
    while (true) {
      pts.push_back(detail::parse_number(text, i, "sample"));
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == ':') {
        ++i;
        wts.push_back(detail::parse_number(text, i, "sample weight"));
        any_weight = true;
        detail::skip_ws(text, i);
      } else {
        wts.push_back(-1.0);
      }
      if (i >= text.size()) break;
      if (text[i] != ',') throw ParseError("sample: expected ','");
      ++i;
    }
    if (any_weight) {
      for (double w : wts)
        if (w < 0)
          throw ParseError("sample: either weight every point or none");
      return WeightedSample(std::move(pts), std::move(wts));
    }
    return equal_weights(std::move(pts));
  }

  std::size_t size() const { return pts_.size(); }
  const std::vector<double>& points() const { return pts_; }
  const std::vector<double>& weights() const { return wts_; }
  double min_point() const { return pts_.front(); }
  double max_point() const { return pts_.back(); }

  bool inside(const Domain& d, double tol_domain) const {
    return min_point() >= d.clipped_lo(tol_domain) &&
           max_point() <= d.clipped_hi(tol_domain);
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (i) s += ',';
      s += expr_num(pts_[i]);
      s += ':';
      s += expr_num(wts_[i]);
    }
    return s;
  }

 private:
  static std::string expr_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

  std::vector<double> pts_;  // ascending
  std::vector<double> wts_;  // matched to pts_
};

}  // namespace qam
