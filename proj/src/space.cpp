#include "tropmeas/space.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "tropmeas/error.hpp"
#include "tropmeas/measure.hpp"
#include "tropmeas/parallel.hpp"
#include "tropmeas/transport.hpp"

namespace tropmeas {

const char* to_string(MetricAxiom axiom) {
  switch (axiom) {
    case MetricAxiom::kDimension: return "dimension";
    case MetricAxiom::kDuplicateLabel: return "duplicate label";
    case MetricAxiom::kNonFinite: return "non-finite distance";
    case MetricAxiom::kNegative: return "negative distance";
    case MetricAxiom::kZeroDiagonal: return "zero diagonal";
    case MetricAxiom::kSymmetry: return "symmetry";
    case MetricAxiom::kIndiscernibles: return "identity of indiscernibles";
    case MetricAxiom::kTriangle: return "triangle inequality";
    case MetricAxiom::kTruncation: return "truncation bound";
  }
  return "?";
}

std::optional<MetricViolation> check_metric(const std::vector<std::string>& labels,
                                            std::span<const double> dist,
                                            double truncation, bool check_triangle,
                                            double tol) {
  const std::size_t n = labels.size();
  auto fail = [&](MetricAxiom axiom, std::size_t i, std::size_t j, std::size_t k,
                  std::string msg) {
    return MetricViolation{axiom, i, j, k, std::move(msg)};
  };
  auto name = [&](std::size_t i) { return labels[i]; };

  if (n == 0) return fail(MetricAxiom::kDimension, 0, 0, 0, "space has no points");
  if (dist.size() != n * n) {
    return fail(MetricAxiom::kDimension, 0, 0, 0,
                fmt::format("distance matrix has {} entries, expected {}x{}", dist.size(),
                            n, n));
  }
  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen.insert(labels[i]).second) {
        return fail(MetricAxiom::kDuplicateLabel, i, i, 0,
                    fmt::format("duplicate point label '{}'", labels[i]));
      }
    }
  }
  auto d = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };

  double realized = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v)) {
        return fail(MetricAxiom::kNonFinite, i, j, 0,
                    fmt::format("dist({}, {}) is not finite", name(i), name(j)));
      }
      if (v < 0) {
        return fail(MetricAxiom::kNegative, i, j, 0,
                    fmt::format("dist({}, {}) = {} is negative", name(i), name(j), v));
      }
      realized = std::max(realized, v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      return fail(MetricAxiom::kZeroDiagonal, i, i, 0,
                  fmt::format("dist({0}, {0}) = {1}, expected 0", name(i), d(i, i)));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) != d(j, i)) {
        return fail(MetricAxiom::kSymmetry, i, j, 0,
                    fmt::format("dist({0}, {1}) = {2} but dist({1}, {0}) = {3}", name(i),
                                name(j), d(i, j), d(j, i)));
      }
      if (d(i, j) == 0.0) {
        return fail(MetricAxiom::kIndiscernibles, i, j, 0,
                    fmt::format("distinct points {} and {} at distance 0", name(i),
                                name(j)));
      }
    }
  }
  if (check_triangle) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (d(i, k) > d(i, j) + d(j, k) + tol) {
            return fail(MetricAxiom::kTriangle, i, j, k,
                        fmt::format("dist({0}, {2}) = {3} > dist({0}, {1}) + dist({1}, {2}) "
                                    "= {4}",
                                    name(i), name(j), name(k), d(i, k),
                                    d(i, j) + d(j, k)));
          }
        }
      }
    }
  }
  if (truncation >= 0 && truncation < realized) {
    return fail(MetricAxiom::kTruncation, 0, 0, 0,
                fmt::format("truncation diameter {} below realized maximum {}", truncation,
                            realized));
  }
  return std::nullopt;
}

FiniteMetricSpace::~FiniteMetricSpace() = default;

SpacePtr FiniteMetricSpace::create(std::vector<std::string> labels,
                                   const std::vector<std::vector<double>>& dist) {
  const std::size_t n = labels.size();
  if (dist.size() != n) {
    throw SpaceError(fmt::format("distance matrix has {} rows, expected {}", dist.size(), n));
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw SpaceError(
          fmt::format("distance matrix row {} has {} columns, expected {}", i, dist[i].size(), n));
    }
    flat.insert(flat.end(), dist[i].begin(), dist[i].end());
  }
  if (auto v = check_metric(labels, flat, -1.0, true)) throw SpaceError(v->message);

  std::shared_ptr<FiniteMetricSpace> space(new FiniteMetricSpace());
  space->truncation_diam_ = flat.empty() ? 0.0 : *std::max_element(flat.begin(), flat.end());
  space->labels_ = std::move(labels);
  space->dist_ = std::move(flat);
  return space;
}

std::span<const IdempotentMeasure> FiniteMetricSpace::points() const { return points_; }

const IdempotentMeasure& FiniteMetricSpace::point(std::size_t i) const {
  if (i >= points_.size()) throw SpaceError("point index out of range for lifted space");
  return points_[i];
}

std::optional<std::size_t> FiniteMetricSpace::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<std::size_t> FiniteMetricSpace::find(const IdempotentMeasure& m) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].approx_equal(m)) return i;
  }
  return std::nullopt;
}

std::optional<MetricViolation> validate(const FiniteMetricSpace& space, bool check_triangle) {
  return check_metric(space.labels(), space.distances(), space.truncation_diam(),
                      check_triangle);
}

double diameter(const FiniteMetricSpace& space) { return space.truncation_diam(); }

SpacePtr lift_impl(const SpacePtr& ground, std::span<const IdempotentMeasure> measures,
                   bool check_triangle) {
  if (!ground) throw SpaceError("lift: null ground space");
  if (measures.empty()) throw SpaceError("lift: empty measure list");

  std::shared_ptr<FiniteMetricSpace> lifted(new FiniteMetricSpace());
  for (const auto& m : measures) {
    if (m.ground() != ground) {
      throw SpaceError("lift: measure " + describe(m) + " lives on a different ground space");
    }
    const bool duplicate = std::any_of(lifted->points_.begin(), lifted->points_.end(),
                                       [&](const auto& p) { return p.approx_equal(m); });
    if (!duplicate) lifted->points_.push_back(m);
  }

  const std::size_t n = lifted->points_.size();
  std::unordered_map<std::string, std::size_t> label_count;
  lifted->labels_.reserve(n);
  for (const auto& p : lifted->points_) {
    std::string label = describe(p);
    if (const auto seen = label_count[label]++; seen > 0) {
      label += fmt::format("#{}", seen);
    }
    lifted->labels_.push_back(std::move(label));
  }

  lifted->dist_.assign(n * n, 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const double d = rho_I(lifted->points_[i], lifted->points_[j]);
    lifted->dist_[i * n + j] = d;
    lifted->dist_[j * n + i] = d;
  });

  lifted->truncation_diam_ = ground->truncation_diam();
  lifted->level_ = ground->level() + 1;
  lifted->base_ = ground;

  if (check_triangle) {
    if (auto v = validate(*lifted, true)) {
      throw SpaceError(fmt::format("lifted space violates {}: {}", to_string(v->axiom),
                                   v->message));
    }
  }
  return lifted;
}

SpacePtr lift(const SpacePtr& ground, std::span<const IdempotentMeasure> measures,
              LiftOptions options) {
  return lift_impl(ground, measures, options.check_triangle);
}

}  // namespace tropmeas
