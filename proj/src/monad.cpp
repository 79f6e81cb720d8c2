#include "tropmeas/monad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace tropmeas {
namespace {

const SpacePtr& require_lifted(const SpacePtr& space, const char* op) {
  if (!space || space->level() == 0 || !space->base()) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       fmt::format("{}: expected a measure over a lifted space", op));
  }
  return space->base();
}

std::size_t locate(const SpacePtr& lifted, const IdempotentMeasure& m) {
  if (auto idx = lifted->find(m)) return *idx;
  throw MeasureError(MeasureError::Kind::kUnknownPoint,
                     "lifted space does not contain " + describe(m));
}

// Inner weight w <= 0 with outer + w == target in floating point when such a
// w exists within a few ulps of target - outer.
double exact_offset(double target, double outer) {
  const double w0 = target - outer;
  if (outer + w0 == target) return w0;
  double up = w0;
  double down = w0;
  for (int step = 0; step < 8; ++step) {
    up = std::nextafter(up, 0.0);
    down = std::nextafter(down, -INFINITY);
    if (up <= 0.0 && outer + up == target) return up;
    if (outer + down == target) return down;
  }
  return w0;
}

}  // namespace

IdempotentMeasure unit_in(const SpacePtr& lifted, std::size_t x) {
  const auto& base = require_lifted(lifted, "unit");
  return dirac(lifted, locate(lifted, dirac(base, x)));
}

IdempotentMeasure unit(const SpacePtr& space, std::size_t x) {
  const IdempotentMeasure point = dirac(space, x);
  return unit_in(lift(space, std::span(&point, 1)), x);
}

IdempotentMeasure unit_of(const IdempotentMeasure& mu, const SpacePtr& lifted) {
  if (lifted) {
    if (lifted->base() != mu.ground()) {
      throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                         "unit: lifted space is not built over the measure's space");
    }
    return dirac(lifted, locate(lifted, mu));
  }
  return dirac(lift(mu.ground(), std::span(&mu, 1)), 0);
}

FunctionOnSpace bar(const FunctionOnSpace& phi, const SpacePtr& lifted) {
  const auto& base = require_lifted(lifted, "bar");
  if (base != phi.space()) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       "bar: lifted space is not built over the function's space");
  }
  std::vector<double> values(lifted->size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = evaluate(lifted->point(i), phi);
  return FunctionOnSpace(lifted, std::move(values));
}

IdempotentMeasure flatten(const IdempotentMeasure& outer) {
  const auto& lifted = outer.ground();
  const auto& base = require_lifted(lifted, "flatten");
  std::vector<Entry> entries;
  for (const auto& o : outer.entries()) {
    const auto& inner = lifted->point(o.atom);
    if (inner.ground() != base) {
      throw MeasureError(MeasureError::Kind::kSpaceMismatch, "flatten: mixed ground spaces");
    }
    for (const auto& e : inner.entries()) entries.push_back({e.atom, o.weight + e.weight});
  }
  return make_measure(base, std::move(entries));
}

double flatten_definitional(const IdempotentMeasure& outer, const FunctionOnSpace& phi) {
  return evaluate(outer, bar(phi, outer.ground()));
}

IdempotentMeasure map_unit(const IdempotentMeasure& mu, const SpacePtr& lifted) {
  const auto& ground = mu.ground();
  SpacePtr target = lifted;
  if (!target) {
    std::vector<IdempotentMeasure> diracs;
    diracs.reserve(mu.size());
    for (const auto& e : mu.entries()) diracs.push_back(dirac(ground, e.atom));
    target = lift(ground, diracs);
  } else if (target->base() != ground) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       "map_unit: lifted space is not built over the measure's space");
  }
  std::vector<Entry> entries;
  entries.reserve(mu.size());
  for (const auto& e : mu.entries()) {
    entries.push_back({locate(target, dirac(ground, e.atom)), e.weight});
  }
  return make_measure(target, std::move(entries));
}

IdempotentMeasure sample_psi_preimage(const IdempotentMeasure& mu, std::size_t groups,
                                      std::uint64_t seed, std::size_t extras) {
  const std::size_t n = mu.size();
  if (groups < 1 || groups > n) {
    throw MeasureError(MeasureError::Kind::kInvalidArgument,
                       fmt::format("preimage: group count {} outside [1, {}]", groups, n));
  }
  std::mt19937_64 rng(seed);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> group_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    group_of[order[i]] =
        i < groups ? i : std::uniform_int_distribution<std::size_t>(0, groups - 1)(rng);
  }

  std::vector<double> alpha(groups, -INFINITY);
  for (std::size_t l = 0; l < n; ++l) {
    alpha[group_of[l]] = std::max(alpha[group_of[l]], mu.entry(l).weight);
  }

  // inner[i][l] = weight of mu's l-th atom in nu_i, if present.
  std::vector<std::vector<std::optional<double>>> inner(
      groups, std::vector<std::optional<double>>(n));
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t g = group_of[l];
    inner[g][l] = exact_offset(mu.entry(l).weight, alpha[g]);
  }

  std::uniform_real_distribution<double> slack(0.1, 1.0);
  for (std::size_t e = 0; e < extras; ++e) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < groups; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (!inner[i][l]) free.emplace_back(i, l);
      }
    }
    if (free.empty()) break;
    const auto [i, l] =
        free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    inner[i][l] = std::min(0.0, mu.entry(l).weight - alpha[i]) - slack(rng);
  }

  const auto& base = mu.ground();
  std::vector<IdempotentMeasure> nus;
  nus.reserve(groups);
  for (std::size_t i = 0; i < groups; ++i) {
    std::vector<Entry> entries;
    for (std::size_t l = 0; l < n; ++l) {
      if (inner[i][l]) entries.push_back({mu.entry(l).atom, *inner[i][l]});
    }
    nus.push_back(make_measure(base, std::move(entries)));
  }
  const SpacePtr lifted = lift(base, nus);

  std::vector<Entry> outer;
  outer.reserve(groups);
  for (std::size_t i = 0; i < groups; ++i) outer.push_back({locate(lifted, nus[i]), alpha[i]});
  return make_measure(lifted, std::move(outer));
}

}  // namespace tropmeas
