#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tropmeas/measure.hpp"

namespace fixtures {

using namespace tropmeas;

// X = {a, b}, rho(a, b) = 2.
inline SpacePtr pair_space() { return FiniteMetricSpace::create({"a", "b"}, {{0, 2}, {2, 0}}); }

// X = {a, b, c}: rho(a, b) = 1, rho(a, c) = rho(b, c) = 2.
inline SpacePtr triangle_space() {
  return FiniteMetricSpace::create({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
}

inline IdempotentMeasure m(const SpacePtr& s,
                           std::vector<std::pair<std::string, double>> entries) {
  std::vector<Entry> out;
  for (const auto& [label, w] : entries) out.push_back({*s->find(label), w});
  return make_measure(s, std::move(out));
}

}  // namespace fixtures
