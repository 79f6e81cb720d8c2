#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmeas/measure.hpp"

namespace tropmeas {

/// Support relation of a coupling: pairs (j, k) of entry indices into mu1, mu2.
struct SupportPattern {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct CouplingPair {
  std::size_t j = 0;
  std::size_t k = 0;
  double gamma = 0.0;
};

/// An element of Lambda(mu1, mu2): a measure on X x X whose max-plus
/// projections are mu1 and mu2, stored by entry indices.
struct Coupling {
  IdempotentMeasure mu1;
  IdempotentMeasure mu2;
  std::vector<CouplingPair> pairs;

  SupportPattern pattern() const;
};

/// Empty if every coupling invariant holds, otherwise the first failure.
std::optional<std::string> check_coupling(const Coupling& c);

/// gamma_jk = min(lambda_1j, lambda_2k) on the pattern. The result is a valid
/// coupling exactly when the pattern is feasible.
Coupling coupling_from_pattern(const SupportPattern& pattern, const IdempotentMeasure& mu1,
                               const IdempotentMeasure& mu2);

/// The unique element mu (x) delta_{x0} of Lambda(mu, delta_{x0}).
Coupling couple_with_dirac(const IdempotentMeasure& mu, std::size_t x0);

}  // namespace tropmeas
