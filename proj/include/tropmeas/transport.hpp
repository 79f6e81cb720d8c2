#pragma once

// The tropical transport metric on finite-support idempotent measures:
//
//   H(mu1, mu2)    = min over couplings xi of  max_{(j,k) in S xi} cost(j, k)
//   cost(j, k)     = |lambda_2k - lambda_1j| + rho(x_1j, x_2k)
//   rho_I(mu1,mu2) = min{diam X, H(mu1, mu2)}
//
// H depends on a coupling only through its support pattern. A pattern R is
// the support of some coupling iff every row j has a k in R with
// lambda_2k >= lambda_1j and every column k has a j in R with
// lambda_1j >= lambda_2k. Any feasible pattern therefore contains one such
// witness per row and per column, and the union of the cheapest witnesses is
// itself feasible, so
//
//   H = max( max_j min{cost(j,k) : lambda_2k >= lambda_1j},
//            max_k min{cost(j,k) : lambda_1j >= lambda_2k} ).
//
// H_oracle enumerates patterns exhaustively and is the check on this.

#include <cstddef>

#include "tropmeas/coupling.hpp"
#include "tropmeas/measure.hpp"

namespace tropmeas {

/// Largest |S mu1| * |S mu2| that H_oracle accepts.
inline constexpr std::size_t kOracleMaxPairs = 20;

double cost(const IdempotentMeasure& mu1, std::size_t j, const IdempotentMeasure& mu2,
            std::size_t k);

bool pattern_feasible(const SupportPattern& pattern, const IdempotentMeasure& mu1,
                      const IdempotentMeasure& mu2);

/// Cheapest row and column witnesses (lowest index on ties), deduplicated.
/// Feasible, and attains H.
SupportPattern optimal_pattern(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

double H(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

/// Exhaustive minimum over all nonempty feasible patterns. Throws
/// std::invalid_argument past kOracleMaxPairs pairs.
double H_oracle(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

double rho_I(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

/// min{diam, max_i (|lambda_i| + rho(x_i, x0))} = rho_I(mu, delta_x0).
double dist_to_dirac(const IdempotentMeasure& mu, std::size_t x0);

/// min over points x of dist_to_dirac(mu, x).
double dist_to_unit_image(const IdempotentMeasure& mu);

}  // namespace tropmeas
