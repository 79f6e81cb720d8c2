#include "tropmeas/mutation.hpp"

#include <atomic>

namespace tropmeas {
namespace {
std::atomic<Defect> g_defect{Defect::kNone};
}

Defect active_defect() { return g_defect.load(std::memory_order_relaxed); }

const char* to_string(Defect d) {
  switch (d) {
    case Defect::kNone: return "none";
    case Defect::kDropAbsInCost: return "drop-abs";
    case Defect::kSkipTruncation: return "skip-truncation";
    case Defect::kSkipColumnWitnesses: return "skip-columns";
  }
  return "?";
}

ScopedDefect::ScopedDefect(Defect d) : previous_(g_defect.exchange(d)) {}
ScopedDefect::~ScopedDefect() { g_defect.store(previous_); }

}  // namespace tropmeas
