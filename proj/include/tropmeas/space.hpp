#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropmeas {

class FiniteMetricSpace;
class IdempotentMeasure;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/// Default tolerance for the triangle inequality and measure equality.
inline constexpr double kMetricTolerance = 1e-9;

enum class MetricAxiom {
  kDimension,
  kDuplicateLabel,
  kNonFinite,
  kNegative,
  kZeroDiagonal,
  kSymmetry,
  kIndiscernibles,
  kTriangle,
  kTruncation,
};

const char* to_string(MetricAxiom axiom);

/// First violated axiom, with the offending indices (k only for triangle).
struct MetricViolation {
  MetricAxiom axiom;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::string message;
};

/// Raw matrix check, usable before a space exists. `dist` is row-major n*n.
/// A negative `truncation` means "use the realized maximum".
std::optional<MetricViolation> check_metric(const std::vector<std::string>& labels,
                                            std::span<const double> dist,
                                            double truncation,
                                            bool check_triangle = true,
                                            double tol = kMetricTolerance);

/// A finite metric space. Level 0 is a user-supplied ground space; level k+1
/// is a finite set of measures over a level-k space with the rho_I metric.
/// Immutable; always handled through SpacePtr.
class FiniteMetricSpace {
 public:
  /// Level-0 space; validates every axiom (including the O(n^3) triangle
  /// check) and throws SpaceError on the first violation.
  static SpacePtr create(std::vector<std::string> labels,
                         const std::vector<std::vector<double>>& dist);

  ~FiniteMetricSpace();
  FiniteMetricSpace(const FiniteMetricSpace&) = delete;
  FiniteMetricSpace& operator=(const FiniteMetricSpace&) = delete;

  std::size_t size() const { return labels_.size(); }
  std::size_t level() const { return level_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  double distance(std::size_t i, std::size_t j) const {
    return dist_[i * labels_.size() + j];
  }
  std::span<const double> distances() const { return dist_; }

  /// The truncation value "diam" (not necessarily the realized maximum).
  double truncation_diam() const { return truncation_diam_; }

  /// For lifted spaces: the space the point-measures live on; null at level 0.
  const SpacePtr& base() const { return base_; }

  /// For lifted spaces: the measures the points denote; empty at level 0.
  std::span<const IdempotentMeasure> points() const;
  const IdempotentMeasure& point(std::size_t i) const;

  std::optional<std::size_t> find(const std::string& label) const;
  /// Index of a point-measure equal to `m` within kMetricTolerance.
  std::optional<std::size_t> find(const IdempotentMeasure& m) const;

 private:
  FiniteMetricSpace() = default;
  friend SpacePtr lift_impl(const SpacePtr&, std::span<const IdempotentMeasure>, bool);

  std::vector<std::string> labels_;
  std::vector<double> dist_;
  double truncation_diam_ = 0.0;
  std::size_t level_ = 0;
  SpacePtr base_;
  std::vector<IdempotentMeasure> points_;
};

std::optional<MetricViolation> validate(const FiniteMetricSpace& space,
                                        bool check_triangle = true);

double diameter(const FiniteMetricSpace& space);

struct LiftOptions {
  /// Run the O(n^3) triangle check on the computed rho_I matrix and throw
  /// SpaceError if it fails.
  bool check_triangle = false;
};

/// The space of the given measures (duplicates merged, first occurrence
/// kept) with pairwise rho_I distances and the ground's truncation diameter.
SpacePtr lift(const SpacePtr& ground, std::span<const IdempotentMeasure> measures,
              LiftOptions options = {});

}  // namespace tropmeas
