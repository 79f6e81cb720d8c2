#pragma once

// Test-only brute force for H that shares nothing with the witness algorithm:
// every nonempty pattern R becomes the measure
//   xi = (+)_{(j,k) in R} min(lambda_1j, lambda_2k) (.) delta_{(x_1j, x_2k)}
// on the product space X x X, and R counts when both projections of xi
// reproduce mu1 and mu2. Any coupling with support R has
// gamma <= min(lambda_1j, lambda_2k), and raising gamma to that bound keeps
// the marginals, so this choice of xi loses nothing.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropmeas/measure.hpp"

namespace oracle {

using namespace tropmeas;

inline SpacePtr product_space(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  std::vector<std::string> labels;
  std::vector<std::vector<double>> dist(n * n, std::vector<double>(n * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) labels.push_back(x.label(i) + "," + x.label(j));
  }
  for (std::size_t p = 0; p < n * n; ++p) {
    for (std::size_t q = 0; q < n * n; ++q) {
      dist[p][q] = std::max(x.distance(p / n, q / n), x.distance(p % n, q % n));
    }
  }
  return FiniteMetricSpace::create(std::move(labels), dist);
}

inline double brute_force_H(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  const auto& x = mu1.ground();
  const std::size_t n = x->size();
  const SpacePtr xx = product_space(*x);
  PointMap first{xx, x, {}}, second{xx, x, {}};
  for (std::size_t p = 0; p < n * n; ++p) {
    first.image.emplace_back(p / n);
    second.image.emplace_back(p % n);
  }

  const std::size_t n1 = mu1.size(), n2 = mu2.size(), count = n1 * n2;
  if (count > 16) throw std::invalid_argument("brute_force_H: too many pairs");
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << count); ++mask) {
    std::vector<Entry> xi;
    double worst = 0.0;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < count; ++p) {
      if (!(mask >> p & 1u)) continue;
      const auto& e1 = mu1.entry(p / n2);
      const auto& e2 = mu2.entry(p % n2);
      const double g = std::min(e1.weight, e2.weight);
      xi.push_back({e1.atom * n + e2.atom, g});
      top = std::max(top, g);
      worst = std::max(worst, std::abs(e2.weight - e1.weight) + x->distance(e1.atom, e2.atom));
    }
    if (top != 0.0) continue;  // not normalized, so not in I(X x X)
    const IdempotentMeasure coupling = make_measure(xx, std::move(xi));
    if (pushforward(first, coupling) == mu1 && pushforward(second, coupling) == mu2) {
      best = std::min(best, worst);
    }
  }
  return best;
}

}  // namespace oracle
