#include "tropmeas/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace tropmeas {

SupportPattern Coupling::pattern() const {
  SupportPattern p;
  p.pairs.reserve(pairs.size());
  for (const auto& c : pairs) p.pairs.emplace_back(c.j, c.k);
  return p;
}

std::optional<std::string> check_coupling(const Coupling& c) {
  if (c.mu1.ground() != c.mu2.ground()) return "marginals live on different spaces";
  if (c.pairs.empty()) return "empty coupling";

  const std::size_t n1 = c.mu1.size();
  const std::size_t n2 = c.mu2.size();
  std::vector<double> row(n1, -INFINITY);
  std::vector<double> col(n2, -INFINITY);
  std::set<std::pair<std::size_t, std::size_t>> seen;

  for (const auto& p : c.pairs) {
    if (p.j >= n1 || p.k >= n2) {
      return fmt::format("pair ({}, {}) out of range", p.j, p.k);
    }
    if (!seen.emplace(p.j, p.k).second) return fmt::format("pair ({}, {}) repeated", p.j, p.k);
    if (!std::isfinite(p.gamma)) return fmt::format("pair ({}, {}) has non-finite weight", p.j, p.k);
    const double l1 = c.mu1.entry(p.j).weight;
    const double l2 = c.mu2.entry(p.k).weight;
    if (p.gamma > std::min(l1, l2)) {
      return fmt::format("gamma({}, {}) = {} exceeds min({}, {})", p.j, p.k, p.gamma, l1, l2);
    }
    row[p.j] = std::max(row[p.j], p.gamma);
    col[p.k] = std::max(col[p.k], p.gamma);
  }
  for (std::size_t j = 0; j < n1; ++j) {
    if (row[j] != c.mu1.entry(j).weight) {
      return fmt::format("first marginal at entry {} is {}, expected {}", j, row[j],
                         c.mu1.entry(j).weight);
    }
  }
  for (std::size_t k = 0; k < n2; ++k) {
    if (col[k] != c.mu2.entry(k).weight) {
      return fmt::format("second marginal at entry {} is {}, expected {}", k, col[k],
                         c.mu2.entry(k).weight);
    }
  }
  return std::nullopt;
}

Coupling coupling_from_pattern(const SupportPattern& pattern, const IdempotentMeasure& mu1,
                               const IdempotentMeasure& mu2) {
  Coupling c{mu1, mu2, {}};
  c.pairs.reserve(pattern.pairs.size());
  for (const auto& [j, k] : pattern.pairs) {
    const double g = (j < mu1.size() && k < mu2.size())
                         ? std::min(mu1.entry(j).weight, mu2.entry(k).weight)
                         : 0.0;
    c.pairs.push_back({j, k, g});
  }
  return c;
}

Coupling couple_with_dirac(const IdempotentMeasure& mu, std::size_t x0) {
  Coupling c{mu, dirac(mu.ground(), x0), {}};
  c.pairs.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) c.pairs.push_back({i, 0, mu.entry(i).weight});
  return c;
}

}  // namespace tropmeas
