#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropmeas/error.hpp"
#include "tropmeas/space.hpp"

namespace tropmeas {

/// Tolerance within which a maximal weight is snapped to exactly 0.
inline constexpr double kNormalizationTolerance = 1e-9;

/// One weighted Dirac lambda (.) delta_x of a finite-support measure.
struct Entry {
  std::size_t atom = 0;
  double weight = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Finite-support idempotent probability measure
///   mu = (+)_i lambda_i (.) delta_{x_i},  lambda_i <= 0,  (+)_i lambda_i = 0.
/// Entries are kept sorted by atom, so equality is structural.
class IdempotentMeasure {
 public:
  const SpacePtr& ground() const { return ground_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t i) const { return entries_[i]; }

  std::optional<double> weight_at(std::size_t atom) const;

  /// Same ground and identical entries.
  friend bool operator==(const IdempotentMeasure& a, const IdempotentMeasure& b) {
    return a.ground_ == b.ground_ && a.entries_ == b.entries_;
  }

  /// Same ground and atoms; weights within `tol`.
  bool approx_equal(const IdempotentMeasure& other, double tol = kMetricTolerance) const;

 private:
  IdempotentMeasure(SpacePtr ground, std::vector<Entry> entries)
      : ground_(std::move(ground)), entries_(std::move(entries)) {}
  friend IdempotentMeasure make_measure(SpacePtr, std::vector<Entry>);

  SpacePtr ground_;
  std::vector<Entry> entries_;
};

/// Merges duplicate atoms by max and validates. Rejects a maximal weight that
/// is not 0 within kNormalizationTolerance; a near-zero maximum is snapped.
IdempotentMeasure make_measure(SpacePtr ground, std::vector<Entry> entries);

/// Shifts all weights by minus their maximum, then make_measure.
IdempotentMeasure renormalize(SpacePtr ground, std::vector<Entry> entries);

IdempotentMeasure dirac(SpacePtr ground, std::size_t x);

std::vector<std::size_t> support(const IdempotentMeasure& mu);

/// A real function given by its values on every point of a space.
class FunctionOnSpace {
 public:
  FunctionOnSpace(SpacePtr space, std::vector<double> values);

  const SpacePtr& space() const { return space_; }
  std::span<const double> values() const { return values_; }
  double operator()(std::size_t i) const { return values_[i]; }

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

/// mu(phi) = max_i (lambda_i + phi(x_i)).
double evaluate(const IdempotentMeasure& mu, const FunctionOnSpace& phi);

/// Point map f: X -> Y as a per-point lookup; nullopt marks "undefined".
struct PointMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<std::optional<std::size_t>> image;

  static PointMap identity(const SpacePtr& space);
};

/// I(f)(mu): entries (f(x_i), lambda_i) merged by max.
IdempotentMeasure pushforward(const PointMap& f, const IdempotentMeasure& mu);

/// Re-expresses a measure over a lifted space on another lifted space that
/// contains all of its atom-measures (pushforward along the inclusion).
IdempotentMeasure reembed(const IdempotentMeasure& mu, const SpacePtr& target);

/// Human-readable term, e.g. "{a: 0, b: -1}"; nested for lifted grounds.
std::string describe(const IdempotentMeasure& mu);

}  // namespace tropmeas
