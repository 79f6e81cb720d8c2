#include "tropmeas/transport.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "tropmeas/mutation.hpp"

namespace tropmeas {
namespace {

void require_same_space(const IdempotentMeasure& a, const IdempotentMeasure& b) {
  if (a.ground() != b.ground()) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       "transport: measures live on different spaces");
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double cost(const IdempotentMeasure& mu1, std::size_t j, const IdempotentMeasure& mu2,
            std::size_t k) {
  const auto& e1 = mu1.entry(j);
  const auto& e2 = mu2.entry(k);
  const double gap = e2.weight - e1.weight;
  const double rho = mu1.ground()->distance(e1.atom, e2.atom);
  if (active_defect() == Defect::kDropAbsInCost) return gap + rho;
  return std::abs(gap) + rho;
}

bool pattern_feasible(const SupportPattern& pattern, const IdempotentMeasure& mu1,
                      const IdempotentMeasure& mu2) {
  require_same_space(mu1, mu2);
  return !check_coupling(coupling_from_pattern(pattern, mu1, mu2)).has_value();
}

SupportPattern optimal_pattern(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  require_same_space(mu1, mu2);
  const std::size_t n1 = mu1.size();
  const std::size_t n2 = mu2.size();
  SupportPattern out;

  auto add = [&](std::size_t j, std::size_t k) {
    const std::pair<std::size_t, std::size_t> p{j, k};
    if (std::find(out.pairs.begin(), out.pairs.end(), p) == out.pairs.end()) {
      out.pairs.push_back(p);
    }
  };

  // Both measures carry a weight-0 entry, so every witness set is nonempty.
  for (std::size_t j = 0; j < n1; ++j) {
    const double l1 = mu1.entry(j).weight;
    std::size_t best = n2;
    double best_cost = kInf;
    for (std::size_t k = 0; k < n2; ++k) {
      if (mu2.entry(k).weight < l1) continue;
      const double c = cost(mu1, j, mu2, k);
      if (c < best_cost) best_cost = c, best = k;
    }
    add(j, best);
  }
  if (active_defect() != Defect::kSkipColumnWitnesses) {
    for (std::size_t k = 0; k < n2; ++k) {
      const double l2 = mu2.entry(k).weight;
      std::size_t best = n1;
      double best_cost = kInf;
      for (std::size_t j = 0; j < n1; ++j) {
        if (mu1.entry(j).weight < l2) continue;
        const double c = cost(mu1, j, mu2, k);
        if (c < best_cost) best_cost = c, best = j;
      }
      add(best, k);
    }
  }
  return out;
}

double H(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  double h = 0.0;
  for (const auto& [j, k] : optimal_pattern(mu1, mu2).pairs) h = std::max(h, cost(mu1, j, mu2, k));
  return h;
}

double H_oracle(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  require_same_space(mu1, mu2);
  const std::size_t n1 = mu1.size();
  const std::size_t n2 = mu2.size();
  const std::size_t count = n1 * n2;
  if (count > kOracleMaxPairs) {
    throw std::invalid_argument(fmt::format(
        "H_oracle: {}x{} supports exceed the {}-pair enumeration guard", n1, n2,
        kOracleMaxPairs));
  }

  // Pair p = j * n2 + k; gamma is the coupling_from_pattern construction.
  std::array<double, kOracleMaxPairs> pair_cost{};
  std::array<double, kOracleMaxPairs> gamma{};
  for (std::size_t j = 0; j < n1; ++j) {
    for (std::size_t k = 0; k < n2; ++k) {
      pair_cost[j * n2 + k] = cost(mu1, j, mu2, k);
      gamma[j * n2 + k] = std::min(mu1.entry(j).weight, mu2.entry(k).weight);
    }
  }

  double best = kInf;
  std::array<double, kOracleMaxPairs> row{};
  std::array<double, kOracleMaxPairs> col{};
  const std::uint32_t patterns = 1u << count;
  for (std::uint32_t mask = 1; mask < patterns; ++mask) {
    std::fill_n(row.begin(), n1, -kInf);
    std::fill_n(col.begin(), n2, -kInf);
    double worst = -kInf;
    for (std::size_t p = 0; p < count; ++p) {
      if (!(mask >> p & 1u)) continue;
      const std::size_t j = p / n2;
      const std::size_t k = p % n2;
      row[j] = std::max(row[j], gamma[p]);
      col[k] = std::max(col[k], gamma[p]);
      worst = std::max(worst, pair_cost[p]);
    }
    if (worst >= best) continue;
    bool feasible = true;
    for (std::size_t j = 0; j < n1 && feasible; ++j) feasible = row[j] == mu1.entry(j).weight;
    for (std::size_t k = 0; k < n2 && feasible; ++k) feasible = col[k] == mu2.entry(k).weight;
    if (feasible) best = worst;
  }
  return best;
}

double rho_I(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  const double h = H(mu1, mu2);
  if (active_defect() == Defect::kSkipTruncation) return h;
  return std::min(mu1.ground()->truncation_diam(), h);
}

double dist_to_dirac(const IdempotentMeasure& mu, std::size_t x0) {
  const auto& space = *mu.ground();
  if (x0 >= space.size()) {
    throw MeasureError(MeasureError::Kind::kUnknownPoint,
                       fmt::format("point index {} outside a space of {} points", x0,
                                   space.size()));
  }
  double h = 0.0;
  for (const auto& e : mu.entries()) {
    h = std::max(h, std::abs(e.weight) + space.distance(e.atom, x0));
  }
  return std::min(space.truncation_diam(), h);
}

double dist_to_unit_image(const IdempotentMeasure& mu) {
  double best = kInf;
  for (std::size_t x = 0; x < mu.ground()->size(); ++x) best = std::min(best, dist_to_dirac(mu, x));
  return best;
}

}  // namespace tropmeas
