#pragma once

// Randomized property campaigns: the idempotent-measure axioms, the metric
// axioms of rho_I, agreement of H with the exhaustive oracle, the monad
// identities, and the three distance statements about unit and flatten
// (lemma1: flatten is non-expanding; lemma2: distance to a Dirac is preserved
// by every flatten-preimage; lemma3: the distance to the unit image does not
// shrink under I(eta)).
//
// Every case draws from its own generator seeded by (campaign seed, case
// index), so reports are identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tropmeas/measure.hpp"

namespace tropmeas {

inline constexpr double kNestedTolerance = 1e-9;
inline constexpr double kAlgebraTolerance = 1e-12;

struct Failure {
  std::size_t case_index = 0;
  std::string inputs;  // document text with every measure the case used
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::string detail;
};

struct LemmaReport {
  std::string lemma;
  std::size_t cases = 0;
  std::vector<Failure> failures;
  double max_violation = 0.0;
  double tolerance = 0.0;

  bool ok() const { return failures.empty(); }
};

struct CampaignConfig {
  std::size_t cases = 500;
  std::uint64_t seed = 1;
  double tol = kNestedTolerance;
  std::size_t space_size = 0;     // 0: uniform in [3, 6] per case
  std::size_t max_support = 4;    // level-1 supports
  std::size_t max_outer = 3;      // lemma1: outer supports
  std::size_t max_inner = 3;      // lemma1: inner supports
  std::size_t max_extras = 3;     // lemma2: extras uniform in [0, max_extras]
  std::size_t samples = 200;      // lemma3: sampled nu per mu
};

using Rng = std::mt19937_64;

/// Random points in the unit square under the L1 metric.
SpacePtr gen_space(std::size_t n, Rng& rng);

/// Uniform support subset of size in [1, max_support]; weights uniform in
/// [-W, 0] with one entry forced to 0. W <= 0 selects 2 * diam.
IdempotentMeasure gen_measure(const SpacePtr& space, std::size_t max_support, Rng& rng,
                              double max_weight = 0.0);
IdempotentMeasure gen_measure(const SpacePtr& space, std::size_t max_support,
                              std::uint64_t seed);

FunctionOnSpace gen_function(const SpacePtr& space, Rng& rng);

/// Outcome of one comparison: violation > tol means failure.
struct CaseCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
  std::string detail;
};

/// rho_I2(M1, M2) >= rho_I(flatten M1, flatten M2); violation = rhs - lhs.
CaseCheck check_lemma1(const IdempotentMeasure& m1, const IdempotentMeasure& m2);

/// |rho_I(mu, delta_x0) - rho_I2(delta_delta_x0, N)| for N a sampled preimage.
CaseCheck check_lemma2(const IdempotentMeasure& mu, std::size_t x0, std::size_t groups,
                       std::size_t extras, std::uint64_t seed);

/// eps = dist_to_unit_image(mu); worst eps - rho_I2(map_unit(mu), delta_nu)
/// over `sample_count` random nu and every Dirac.
CaseCheck check_lemma3(const IdempotentMeasure& mu, std::size_t sample_count,
                       std::uint64_t seed);

/// Conditions 1-3 on random (mu, phi, psi, c) and the metric axioms of rho_I
/// on random triples, one report per property.
std::vector<LemmaReport> check_axioms(const SpacePtr& space, std::size_t cases,
                                      std::uint64_t seed);

LemmaReport run_oracle_campaign(const CampaignConfig& cfg);
LemmaReport run_lemma1_campaign(const CampaignConfig& cfg);
LemmaReport run_lemma2_campaign(const CampaignConfig& cfg);
LemmaReport run_lemma3_campaign(const CampaignConfig& cfg);
std::vector<LemmaReport> run_axioms_campaign(const CampaignConfig& cfg);
std::vector<LemmaReport> run_monad_campaign(const CampaignConfig& cfg);

/// Campaign by name: oracle, lemma1, lemma2, lemma3, axioms, monad.
std::vector<LemmaReport> run_campaign(const std::string& name, const CampaignConfig& cfg);

std::string report_text(const LemmaReport& r);
std::string report_json(const std::vector<LemmaReport>& reports);

}  // namespace tropmeas
