#include "tropmeas/tropical.hpp"

#include <fmt/format.h>

namespace tropmeas {

std::string MaxPlus::to_string() const {
  if (!finite_) return "-inf";
  return fmt::format("{:.12g}", value_);
}

MaxPlus big_oplus(std::span<const MaxPlus> xs) {
  MaxPlus acc = MaxPlus::bottom();
  for (const auto& x : xs) acc = oplus(acc, x);
  return acc;
}

}  // namespace tropmeas
