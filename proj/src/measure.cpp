#include "tropmeas/measure.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace tropmeas {
namespace {

void require_ground(const SpacePtr& ground) {
  if (!ground) throw MeasureError(MeasureError::Kind::kInvalidArgument, "null ground space");
}

std::string fmt_weight(double w) { return fmt::format("{:.12g}", w == 0.0 ? 0.0 : w); }

}  // namespace

std::optional<double> IdempotentMeasure::weight_at(std::size_t atom) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), atom,
                             [](const Entry& e, std::size_t a) { return e.atom < a; });
  if (it == entries_.end() || it->atom != atom) return std::nullopt;
  return it->weight;
}

bool IdempotentMeasure::approx_equal(const IdempotentMeasure& other, double tol) const {
  if (ground_ != other.ground_ || entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].atom != other.entries_[i].atom) return false;
    if (std::abs(entries_[i].weight - other.entries_[i].weight) > tol) return false;
  }
  return true;
}

IdempotentMeasure make_measure(SpacePtr ground, std::vector<Entry> entries) {
  require_ground(ground);
  if (entries.empty()) {
    throw MeasureError(MeasureError::Kind::kEmptySupport, "measure has empty support");
  }
  for (const auto& e : entries) {
    if (e.atom >= ground->size()) {
      throw MeasureError(MeasureError::Kind::kUnknownPoint,
                         fmt::format("atom index {} outside a space of {} points", e.atom,
                                     ground->size()));
    }
    if (!std::isfinite(e.weight)) {
      throw MeasureError(MeasureError::Kind::kNonFiniteWeight,
                         fmt::format("weight of '{}' is not finite", ground->label(e.atom)));
    }
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.atom != b.atom ? a.atom < b.atom : a.weight > b.weight;
  });
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const Entry& a, const Entry& b) { return a.atom == b.atom; }),
                entries.end());

  auto top = std::max_element(entries.begin(), entries.end(),
                              [](const Entry& a, const Entry& b) { return a.weight < b.weight; });
  if (std::abs(top->weight) > kNormalizationTolerance) {
    throw MeasureError(MeasureError::Kind::kNotNormalized,
                       fmt::format("maximal weight is {}, expected 0", fmt_weight(top->weight)));
  }
  // Anything above 0 is within the tolerance of the maximum here.
  for (auto& e : entries) {
    if (e.weight >= 0.0) e.weight = 0.0;
  }
  top->weight = 0.0;
  return IdempotentMeasure(std::move(ground), std::move(entries));
}

IdempotentMeasure renormalize(SpacePtr ground, std::vector<Entry> entries) {
  if (entries.empty()) {
    throw MeasureError(MeasureError::Kind::kEmptySupport, "measure has empty support");
  }
  double top = -INFINITY;
  for (const auto& e : entries) {
    if (!std::isfinite(e.weight)) {
      throw MeasureError(MeasureError::Kind::kNonFiniteWeight, "weight is not finite");
    }
    top = std::max(top, e.weight);
  }
  for (auto& e : entries) e.weight -= top;
  return make_measure(std::move(ground), std::move(entries));
}

IdempotentMeasure dirac(SpacePtr ground, std::size_t x) {
  require_ground(ground);
  if (x >= ground->size()) {
    throw MeasureError(MeasureError::Kind::kUnknownPoint,
                       fmt::format("point index {} outside a space of {} points", x,
                                   ground->size()));
  }
  return make_measure(std::move(ground), {Entry{x, 0.0}});
}

std::vector<std::size_t> support(const IdempotentMeasure& mu) {
  std::vector<std::size_t> out;
  out.reserve(mu.size());
  for (const auto& e : mu.entries()) out.push_back(e.atom);
  return out;
}

FunctionOnSpace::FunctionOnSpace(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  require_ground(space_);
  if (values_.size() != space_->size()) {
    throw MeasureError(MeasureError::Kind::kInvalidArgument,
                       fmt::format("function has {} values for a space of {} points",
                                   values_.size(), space_->size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw MeasureError(MeasureError::Kind::kNonFiniteWeight,
                         fmt::format("function value at '{}' is not finite", space_->label(i)));
    }
  }
}

double evaluate(const IdempotentMeasure& mu, const FunctionOnSpace& phi) {
  if (mu.ground() != phi.space()) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       "evaluate: function and measure live on different spaces");
  }
  double best = -INFINITY;
  for (const auto& e : mu.entries()) best = std::max(best, e.weight + phi(e.atom));
  return best;
}

PointMap PointMap::identity(const SpacePtr& space) {
  PointMap f{space, space, {}};
  f.image.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) f.image.emplace_back(i);
  return f;
}

IdempotentMeasure pushforward(const PointMap& f, const IdempotentMeasure& mu) {
  if (f.source != mu.ground()) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       "pushforward: map source is not the measure's space");
  }
  std::vector<Entry> out;
  out.reserve(mu.size());
  for (const auto& e : mu.entries()) {
    if (e.atom >= f.image.size() || !f.image[e.atom]) {
      throw MeasureError(MeasureError::Kind::kUndefinedMap,
                         fmt::format("map undefined on support point '{}'",
                                     mu.ground()->label(e.atom)));
    }
    out.push_back({*f.image[e.atom], e.weight});
  }
  return make_measure(f.target, std::move(out));
}

IdempotentMeasure reembed(const IdempotentMeasure& mu, const SpacePtr& target) {
  const auto& from = mu.ground();
  if (!target || from->level() == 0 || target->base() != from->base()) {
    throw MeasureError(MeasureError::Kind::kSpaceMismatch,
                       "reembed: target is not a lifted space over the same base");
  }
  PointMap inclusion{from, target, {}};
  inclusion.image.resize(from->size());
  for (const auto& e : mu.entries()) inclusion.image[e.atom] = target->find(from->point(e.atom));
  return pushforward(inclusion, mu);
}

std::string describe(const IdempotentMeasure& mu) {
  std::string out = "{";
  const auto& g = *mu.ground();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) out += ", ";
    const auto& e = mu.entry(i);
    out += g.level() == 0 ? g.label(e.atom) : describe(g.point(e.atom));
    out += ": " + fmt_weight(e.weight);
  }
  return out + "}";
}

}  // namespace tropmeas
